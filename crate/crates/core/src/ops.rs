//! Quasi-inverse, quasi-determinant, Bergman kernel and domain membership.

use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::linalg::{det, hermitian_eigenvalues, pfaffian, solve, LinearMap, C64, ONE};
use crate::linalg::Element;
use crate::models::albert;
use crate::models::spin;
use crate::system::TripleSystem;

/// Pivot floor for treating `B(z,w)` as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

impl TripleSystem {
    /// `z^w = B(z,w)^{-1}(z - Q_z w)`.
    pub fn quasi_inverse(&self, z: &Element, w: &Element) -> Result<Element> {
        self.check(z)?;
        self.check(w)?;
        let rhs = z - self.quad(z, w);
        solve(&self.bergman(z, w), &rhs)
    }

    /// Quasi-determinant `Delta(z,w)` with `det B(z,w) = Delta^p`, from a
    /// closed form per kind.
    pub fn quasi_det(&self, z: &Element, w: &Element) -> C64 {
        match self.kind() {
            Kind::Rect { .. } | Kind::Sym { .. } => {
                let shape = self.matrix_shape().expect("matrix model");
                let mz = shape.to_matrix(z.as_slice());
                let mw = shape.to_matrix(w.as_slice());
                let n = mz.nrows();
                det(&(LinearMap::identity(n, n) - mz * mw.adjoint()))
            }
            Kind::Asym { n } => asym_quasi_det(self, z, w, n),
            Kind::Spin { .. } => {
                let (z, w) = (z.as_slice(), w.as_slice());
                ONE - spin::inner(z, w) + spin::norm(z) * spin::norm(w).conj()
            }
            Kind::BiCayley => self.rank2_quasi_det(z, w),
            Kind::Albert => {
                let nz = albert::from_grid(z.as_slice()).cubic_norm();
                let nw = albert::from_grid(w.as_slice()).cubic_norm();
                self.rank2_quasi_det(z, w) - nz * nw.conj()
            }
        }
    }

    /// `1 - <z|w> + (<z|w>^2 - <Q_z w|w>)/2`: the quasi-determinant of a
    /// rank-2 triple, and its truncation after degree (2,2) in general.
    pub fn rank2_quasi_det(&self, z: &Element, w: &Element) -> C64 {
        let zw = self.inner(z, w);
        let qzw = self.inner(&self.quad(z, w), w);
        ONE - zw + (zw * zw - qzw) * 0.5
    }

    /// `K(z,w) = Delta(z,w)^{-p}`.
    pub fn bergman_kernel(&self, z: &Element, w: &Element) -> Result<C64> {
        self.check(z)?;
        self.check(w)?;
        let d = self.quasi_det(z, w);
        if d.norm() < SINGULAR_TOL {
            return Err(Error::KernelSingular);
        }
        Ok(d.powi(-(self.genus() as i32)))
    }

    /// Square of the spectral norm: half the top eigenvalue of `D(z,z)`.
    pub fn spectral_norm_sq(&self, z: &Element) -> f64 {
        let d = self.to_orthonormal(&self.box_op(z, z));
        hermitian_eigenvalues(&d).last().copied().unwrap_or(0.0) * 0.5
    }

    /// Membership in the bounded symmetric domain.
    ///
    /// Positivity of `B(z,z)` alone also holds far outside the domain (all
    /// singular values above 1), so the spectral norm is checked as well.
    pub fn in_domain(&self, z: &Element) -> bool {
        if z.len() != self.dim() || z.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return false;
        }
        if self.spectral_norm_sq(z) >= 1.0 {
            return false;
        }
        let b = self.to_orthonormal(&self.bergman(z, z));
        hermitian_eigenvalues(&b).first().is_some_and(|&l| l > SINGULAR_TOL)
    }
}

fn asym_quasi_det(sys: &TripleSystem, z: &Element, w: &Element, n: usize) -> C64 {
    // det(1 - z w*) = det(1 + z conj(w)) is the square of the Pfaffian of
    // [[z, 1], [-1, conj w]]; the sign is fixed by Delta(0, w) = 1.
    let shape = sys.matrix_shape().expect("matrix model");
    let mz = shape.to_matrix(z.as_slice());
    let mw = shape.to_matrix(w.as_slice()).map(|x| x.conj());
    let block = |a: &LinearMap, b: &LinearMap| {
        let mut m = LinearMap::zeros(2 * n, 2 * n);
        m.view_mut((0, 0), (n, n)).copy_from(a);
        m.view_mut((n, n), (n, n)).copy_from(b);
        for i in 0..n {
            m[(i, n + i)] = ONE;
            m[(n + i, i)] = -ONE;
        }
        m
    };
    let zero = LinearMap::zeros(n, n);
    let sign = pfaffian(&block(&zero, &zero));
    pfaffian(&block(&mz, &mw)) / sign
}

/// Result of a tripotent test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripotentCheck {
    pub is_tripotent: bool,
    pub rank: usize,
    pub residual: f64,
    /// Whether the Peirce 2-space dimension matches the rank.
    pub peirce_consistent: bool,
}

/// A certified tripotent together with its Peirce projections.
#[derive(Debug, Clone)]
pub struct Tripotent {
    pub element: Element,
    pub rank: usize,
    pub p2: LinearMap,
    pub p1: LinearMap,
    pub p0: LinearMap,
}

pub const TRIPOTENT_TOL: f64 = 1e-10;

impl TripleSystem {
    /// Whether `Q_c c = c` within `tol`; the rank is `<c|c>` rounded,
    /// cross-checked against the trace of the Peirce 2-projection.
    pub fn is_tripotent(&self, c: &Element, tol: f64) -> TripotentCheck {
        let residual = self.norm(&(self.quad(c, c) - c));
        if !(residual <= tol) {
            return TripotentCheck { is_tripotent: false, rank: 0, residual, peirce_consistent: false };
        }
        let k = self.inner(c, c).re.round().max(0.0) as usize;
        let (p2, _, _) = self.peirce_projections(c);
        // Z^2 of a rank-k tripotent has dimension k + a k(k-1)/2
        let a = self.invariants().a;
        let peirce_consistent = p2.trace().re.round() as usize == k + a * k * k.saturating_sub(1) / 2;
        TripotentCheck { is_tripotent: true, rank: k, residual, peirce_consistent }
    }

    fn peirce_projections(&self, c: &Element) -> (LinearMap, LinearMap, LinearMap) {
        let n = self.dim();
        let id = LinearMap::identity(n, n);
        let d = self.box_op(c, c);
        let half = C64::new(0.5, 0.0);
        let two = C64::new(2.0, 0.0);
        let p2 = &d * (&d - &id) * half;
        let p1 = &d * (&id * two - &d);
        let p0 = (&d - &id) * (&d - &id * two) * half;
        (p2, p1, p0)
    }

    /// Certify `c` as a tripotent and compute its Peirce projections.
    pub fn tripotent(&self, c: &Element) -> Result<Tripotent> {
        self.check(c)?;
        let chk = self.is_tripotent(c, TRIPOTENT_TOL);
        if !chk.is_tripotent {
            return Err(Error::NotATripotent { residual: chk.residual });
        }
        let (p2, p1, p0) = self.peirce_projections(c);
        Ok(Tripotent { element: c.clone(), rank: chk.rank, p2, p1, p0 })
    }
}

impl Tripotent {
    pub fn peirce_dims(&self) -> (usize, usize, usize) {
        let t = |m: &LinearMap| m.trace().re.round() as usize;
        (t(&self.p2), t(&self.p1), t(&self.p0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{canonical_frame, grid};
    use crate::linalg::{c, poly_coefficient, ZERO};
    use crate::sampling::{random_element, rng_for};
    use crate::system::max_abs_diff;

    fn sys(s: &str) -> TripleSystem {
        TripleSystem::parse(s).unwrap()
    }

    fn det_genus_residual(sys: &TripleSystem, seed: u64, n: u64) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let z = sys.sample_domain(seed, 2 * i, 0.5).unwrap();
            let w = sys.sample_domain(seed, 2 * i + 1, 0.5).unwrap();
            let lhs = sys.bergman(&z, &w).determinant();
            let delta = sys.quasi_det(&z, &w);
            let rhs = delta.powi(sys.genus() as i32);
            worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
        }
        worst
    }

    #[test]
    fn determinant_is_power_of_quasi_det() {
        for s in ["rect:2,3", "rect:1,3", "sym:3", "asym:4", "asym:5", "asym:6", "spin:3", "spin:6", "bicayley", "albert"] {
            let r = det_genus_residual(&sys(s), 9, 25);
            assert!(r <= 1e-9, "{s}: {r}");
        }
    }

    #[test]
    fn quasi_det_at_origin_is_one() {
        for s in ["rect:2,3", "asym:5", "spin:4", "bicayley", "albert"] {
            let j = sys(s);
            let w = j.sample_domain(1, 0, 0.5).unwrap();
            assert!((j.quasi_det(&j.zero(), &w) - ONE).norm() < 1e-14, "{s}");
        }
    }

    #[test]
    fn spin_frame_values() {
        let j = sys("spin:3");
        let f = canonical_frame(&j);
        let c1 = &f.elements[0];
        assert!(j.quasi_det(c1, c1).norm() < 1e-15);
        let e = f.maximal_tripotent();
        assert!(max_abs_diff(&e, &Element::from_vec(vec![ONE, ZERO, ZERO])) < 1e-15);
        assert!(j.quasi_det(&e, &e).norm() < 1e-15);
        assert!(!j.in_domain(&e));
        let chk = j.is_tripotent(&e, 1e-12);
        assert!(chk.is_tripotent && chk.rank == 2 && chk.peirce_consistent);
    }

    #[test]
    fn spin_domain_example() {
        let j = sys("spin:3");
        let z = Element::from_vec(vec![c(0.9, 0.0), ZERO, ZERO]);
        assert!((j.quasi_det(&z, &z) - c(0.0361, 0.0)).norm() < 1e-12);
        assert!(j.in_domain(&z));
        assert!(j.in_domain(&j.zero()));
        // both singular values above 1: B(z,z) > 0 but z is outside
        let far = Element::from_vec(vec![c(3.0, 0.0), ZERO, ZERO]);
        assert!(!j.in_domain(&far));
    }

    #[test]
    fn samples_are_inside_and_deterministic() {
        for s in ["rect:2,3", "sym:3", "asym:5", "spin:5", "bicayley", "albert"] {
            let j = sys(s);
            for i in 0..5 {
                let z = j.sample_domain(42, i, 0.95).unwrap();
                assert!(j.in_domain(&z), "{s}");
                assert_eq!(z, j.sample_domain(42, i, 0.95).unwrap());
                assert!((j.spectral_norm_sq(&z).sqrt() - 0.95).abs() < 1e-12);
            }
        }
        assert!(sys("spin:3").sample_domain(1, 0, 0.0).is_err());
        assert!(sys("spin:3").sample_domain(1, 0, 1.0).is_err());
    }

    #[test]
    fn kernel_reciprocal_and_ball() {
        let j = sys("rect:1,3");
        let z = j.sample_domain(2, 0, 0.8).unwrap();
        let w = j.sample_domain(2, 1, 0.8).unwrap();
        let k = j.bergman_kernel(&z, &w).unwrap();
        let expect = (ONE - j.inner(&z, &w)).powi(-4);
        assert!((k - expect).norm() < 1e-12 * expect.norm());
        assert_eq!(j.bergman_kernel(&j.zero(), &j.zero()).unwrap(), ONE);
        let e = j.basis(0);
        assert_eq!(j.bergman_kernel(&e, &e), Err(Error::KernelSingular));
    }

    #[test]
    fn quasi_inverse_examples() {
        let j = sys("rect:2,3");
        let shape = j.matrix_shape().unwrap();
        let z = j.sample_domain(4, 0, 0.7).unwrap();
        let w = j.sample_domain(4, 1, 0.7).unwrap();
        assert!(max_abs_diff(&j.quasi_inverse(&z, &j.zero()).unwrap(), &z) < 1e-15);
        let (mz, mw) = (shape.to_matrix(z.as_slice()), shape.to_matrix(w.as_slice()));
        let expect = (LinearMap::identity(2, 2) - &mz * mw.adjoint()).try_inverse().unwrap() * mz;
        let got = j.quasi_inverse(&z, &w).unwrap();
        assert!(max_abs_diff(&got, &Element::from_vec(shape.from_matrix(&expect))) < 1e-12);
        let back = j.quasi_inverse(&got, &(-&w)).unwrap();
        assert!(max_abs_diff(&back, &z) < 1e-12);
        let e = j.basis(0);
        assert_eq!(j.quasi_inverse(&e, &e), Err(Error::NotQuasiInvertible));
    }

    #[test]
    fn peirce_projections() {
        let j = sys("rect:2,2");
        let t = j.tripotent(&j.basis(0)).unwrap();
        assert_eq!(t.rank, 1);
        assert_eq!(t.peirce_dims(), (1, 2, 1));
        let id = LinearMap::identity(4, 4);
        assert!((&t.p2 + &t.p1 + &t.p0 - id).norm() < 1e-14);
        for p in [&t.p2, &t.p1, &t.p0] {
            assert!((p * p - p).norm() < 1e-12);
        }
        assert!((&t.p2 * &t.p1).norm() < 1e-12 && (&t.p1 * &t.p0).norm() < 1e-12);
        assert!(matches!(j.tripotent(&(j.basis(0) * c(2.0, 0.0))), Err(Error::NotATripotent { .. })));
    }

    #[test]
    fn exceptional_peirce_tables() {
        let alb = sys("albert");
        let t = alb.tripotent(&alb.basis(0)).unwrap();
        assert_eq!(t.peirce_dims(), (1, 16, 10));
        let bic = sys("bicayley");
        let t = bic.tripotent(&bic.basis(0)).unwrap();
        assert_eq!(t.peirce_dims(), (1, 10, 5));
        let zero_space: Vec<&str> = (0..16)
            .filter(|&k| (t.p0[(k, k)] - ONE).norm() < 1e-12)
            .map(|k| bic.labels()[k].as_str())
            .collect();
        assert_eq!(zero_space, vec!["e1-", "e5-", "e6+", "e7+", "e8+"]);
    }

    #[test]
    fn grids_are_tripotents_with_valid_quadrangles() {
        for (s, size) in [("rect:2,3", 6), ("sym:3", 6), ("asym:5", 10), ("spin:4", 4), ("spin:5", 5), ("bicayley", 16), ("albert", 27)] {
            let j = sys(s);
            let g = grid(&j);
            assert_eq!(g.len(), size, "{s}");
            for e in &g.elements {
                assert!(j.is_tripotent(e, 1e-12).is_tripotent, "{s}");
            }
            assert!(g.quadrangle_residual(&j) <= 1e-12, "{s}: {}", g.quadrangle_residual(&j));
        }
    }

    #[test]
    fn frames_are_orthogonal_minimal() {
        for s in ["rect:2,3", "sym:3", "asym:5", "asym:6", "spin:3", "bicayley", "albert"] {
            let j = sys(s);
            let f = canonical_frame(&j);
            assert_eq!(f.elements.len(), j.rank(), "{s}");
            assert!(f.residual(&j) <= 1e-12, "{s}");
            for c in &f.elements {
                assert_eq!(j.is_tripotent(c, 1e-12).rank, 1, "{s}");
            }
            let e = f.maximal_tripotent();
            let chk = j.is_tripotent(&e, 1e-12);
            assert_eq!(chk.rank, j.rank(), "{s}");
            if let Ok(n) = j.generic_norm(&e) {
                assert!((n - ONE).norm() < 1e-12, "{s}: N(e) = {n}");
            }
        }
    }

    #[test]
    fn generic_norm_is_top_term_of_quasi_det() {
        for s in ["rect:2,2", "sym:3", "asym:4", "asym:6", "spin:5", "albert"] {
            let j = sys(s);
            let z = j.sample_domain(8, 0, 0.5).unwrap();
            let w = j.sample_domain(8, 1, 0.5).unwrap();
            let r = j.rank();
            let top = poly_coefficient(|t| j.quasi_det(&(&z * t), &w), r, 2 * r + 3);
            let sign = if r.is_multiple_of(2) { 1.0 } else { -1.0 };
            let expect = j.generic_norm(&z).unwrap() * j.generic_norm(&w).unwrap().conj() * sign;
            assert!((top - expect).norm() < 1e-12, "{s}: {top} vs {expect}");
        }
        assert!(matches!(sys("rect:2,3").generic_norm(&sys("rect:2,3").zero()), Err(Error::NotTubeType(_))));
        assert!(matches!(sys("bicayley").generic_norm(&sys("bicayley").zero()), Err(Error::NotTubeType(_))));
    }

    #[test]
    fn k_samples_are_unitary_automorphisms() {
        for s in ["rect:2,3", "sym:3", "asym:5", "spin:4", "bicayley", "albert"] {
            let j = sys(s);
            for i in 0..3 {
                let h = j.k_group_sample(5, i);
                assert!(j.automorphism_residual(&h) <= 1e-9, "{s}");
                let mut rng = rng_for(1, 2, i);
                let (u, v) = (random_element(&j, &mut rng), random_element(&j, &mut rng));
                let d = (j.inner(&(&h * &u), &(&h * &v)) - j.inner(&u, &v)).norm();
                assert!(d <= 1e-10 * (1.0 + j.norm(&u) * j.norm(&v)), "{s}");
            }
        }
        let j = sys("spin:3");
        let minus = -LinearMap::identity(3, 3);
        assert!(j.automorphism_residual(&minus) < 1e-15);
    }
}
