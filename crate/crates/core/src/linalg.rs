//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Element = DVector<C64>;
pub type LinearMap = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Determinant via partial-pivot LU.
pub fn det(m: &LinearMap) -> C64 {
    if m.nrows() == 0 {
        return ONE;
    }
    m.clone().lu().determinant()
}

/// Solve `m x = b`, rejecting numerically singular systems.
///
/// A system counts as singular when the smallest LU pivot is below
/// `1e-12` times the largest one.
pub fn solve(m: &LinearMap, b: &Element) -> Result<Element> {
    let lu = m.clone().lu();
    let u = lu.u();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for k in 0..u.nrows() {
        let p = u[(k, k)].norm();
        lo = lo.min(p);
        hi = hi.max(p);
    }
    if !(hi > 0.0) || lo <= 1e-12 * hi {
        return Err(Error::NotQuasiInvertible);
    }
    lu.solve(b).ok_or(Error::NotQuasiInvertible)
}

// nalgebra's iterative decompositions can spin forever on badly scaled
// input, so every call goes through a normalised, iteration-capped wrapper.
const MAX_SWEEPS: usize = 20_000;

fn scale_of(m: &LinearMap) -> Option<f64> {
    if m.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return None;
    }
    Some(m.iter().fold(0.0, |acc: f64, x| acc.max(x.norm())))
}

fn hermitian_eigen(h: &LinearMap) -> Option<(DVector<f64>, LinearMap)> {
    let n = h.nrows();
    let scale = scale_of(h)?;
    if scale == 0.0 {
        return Some((DVector::zeros(n), LinearMap::identity(n, n)));
    }
    let sym = (h + h.adjoint()) * C64::new(0.5 / scale, 0.0);
    let eig = nalgebra::SymmetricEigen::try_new(sym, f64::EPSILON, MAX_SWEEPS)?;
    Some((eig.eigenvalues * scale, eig.eigenvectors))
}

/// Eigenvalues (ascending) of a hermitian matrix; NaN if the iteration
/// does not converge.
pub fn hermitian_eigenvalues(h: &LinearMap) -> Vec<f64> {
    match hermitian_eigen(h) {
        Some((values, _)) => {
            let mut ev: Vec<f64> = values.iter().copied().collect();
            ev.sort_by(f64::total_cmp);
            ev
        }
        None => vec![f64::NAN; h.nrows()],
    }
}

/// Singular values and right singular vectors (rows of `v_t`).
pub fn svd(m: &LinearMap, with_v: bool) -> Result<(DVector<f64>, Option<LinearMap>)> {
    let failed = || Error::InvalidArgument("singular value decomposition did not converge".into());
    let scale = scale_of(m).ok_or_else(failed)?;
    let k = m.nrows().min(m.ncols());
    if scale == 0.0 {
        return Ok((DVector::zeros(k), with_v.then(|| LinearMap::identity(m.ncols(), m.ncols()).rows(0, k).into_owned())));
    }
    let normalised = m * C64::new(1.0 / scale, 0.0);
    let out = normalised.try_svd(false, with_v, f64::EPSILON, MAX_SWEEPS).ok_or_else(failed)?;
    Ok((out.singular_values * scale, out.v_t))
}

/// Largest singular value; falls back to the Gram matrix when the SVD does
/// not converge, NaN if neither does.
pub fn spectral_norm(m: &LinearMap) -> f64 {
    match svd(m, false) {
        Ok((sv, _)) => sv.iter().copied().fold(0.0, f64::max),
        Err(_) => {
            let top = hermitian_eigenvalues(&(m.adjoint() * m)).last().copied().unwrap_or(0.0);
            top.max(0.0).sqrt()
        }
    }
}

/// `exp(i t H)` for hermitian `H`.
pub fn exp_i_hermitian(h: &LinearMap, t: f64) -> LinearMap {
    let Some((values, v)) = hermitian_eigen(h) else {
        return LinearMap::from_element(h.nrows(), h.ncols(), C64::new(f64::NAN, 0.0));
    };
    let phases = DMatrix::from_diagonal(&DVector::from_iterator(
        v.ncols(),
        values.iter().map(|&l| C64::from_polar(1.0, t * l)),
    ));
    &v * phases * v.adjoint()
}

/// Pfaffian of a complex antisymmetric matrix of even size.
pub fn pfaffian(a: &LinearMap) -> C64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    if n % 2 == 1 {
        return ZERO;
    }
    let mut m = a.clone();
    let mut pf = ONE;
    let mut k = 0;
    while k + 1 < n {
        let mut piv = k + 1;
        for i in k + 2..n {
            if m[(i, k)].norm() > m[(piv, k)].norm() {
                piv = i;
            }
        }
        if piv != k + 1 {
            m.swap_rows(k + 1, piv);
            m.swap_columns(k + 1, piv);
            pf = -pf;
        }
        let pivot = m[(k, k + 1)];
        if pivot == ZERO {
            return ZERO;
        }
        pf *= pivot;
        for i in k + 2..n {
            let f = m[(k, i)] / pivot;
            if f != ZERO {
                for r in 0..n {
                    let v = m[(r, k + 1)];
                    m[(r, i)] -= f * v;
                }
                for col in 0..n {
                    let v = m[(k + 1, col)];
                    m[(i, col)] -= f * v;
                }
            }
        }
        k += 2;
    }
    pf
}

/// Orthonormalize `vectors` in order against the standard hermitian
/// product, skipping those that are dependent at relative level `tol`.
pub fn gram_schmidt(vectors: &[Element], tol: f64) -> Vec<Element> {
    let mut basis: Vec<Element> = Vec::new();
    for v in vectors {
        let scale = v.norm();
        if scale == 0.0 {
            continue;
        }
        let mut w = v.clone();
        // two passes for stability
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&w);
                w -= b * proj;
            }
        }
        let n = w.norm();
        if n > tol * scale {
            basis.push(w / C64::new(n, 0.0));
        }
    }
    basis
}

/// Polynomial coefficient `[t^k] f(t)` for a polynomial of degree below
/// `points`, by sampling on roots of unity.
pub fn poly_coefficient<F: Fn(C64) -> C64>(f: F, k: usize, points: usize) -> C64 {
    let mut acc = ZERO;
    for j in 0..points {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / points as f64;
        let w = C64::from_polar(1.0, theta);
        acc += f(w) * C64::from_polar(1.0, -theta * k as f64);
    }
    acc / points as f64
}
