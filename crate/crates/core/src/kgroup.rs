//! Samplers for the group of linear triple automorphisms.

use crate::grid::grid;
use crate::kind::Kind;
use crate::linalg::{exp_i_hermitian, LinearMap, C64, I};
use crate::sampling::{random_orthogonal, random_unitary, rng_for};
use crate::system::TripleSystem;
use rand::Rng;

const LANE_K: u64 = 0x4b;
const EXCEPTIONAL_FACTORS: usize = 8;

impl TripleSystem {
    /// Deterministic sample `h` with `h{u;v;w} = {hu;hv;hw}`, as a matrix
    /// acting on coordinates.
    pub fn k_group_sample(&self, seed: u64, index: u64) -> LinearMap {
        let mut rng = rng_for(seed, LANE_K, index);
        let shape = self.matrix_shape();
        match self.kind() {
            Kind::Rect { r, s } => {
                let a = random_unitary(&mut rng, r);
                let b = random_unitary(&mut rng, s);
                self.matrix_action(|z| &a * z * b.adjoint(), shape.unwrap())
            }
            Kind::Sym { r } | Kind::Asym { n: r } => {
                let a = random_unitary(&mut rng, r);
                self.matrix_action(|z| &a * z * a.transpose(), shape.unwrap())
            }
            Kind::Spin { m } => {
                let o = random_orthogonal(&mut rng, m);
                let theta: f64 = rng.random::<f64>() * std::f64::consts::TAU;
                o * C64::from_polar(1.0, theta)
            }
            Kind::BiCayley | Kind::Albert => self.exceptional_k_sample(&mut rng),
        }
    }

    fn matrix_action<F: Fn(&LinearMap) -> LinearMap>(
        &self,
        f: F,
        shape: crate::models::matrix::MatrixShape,
    ) -> LinearMap {
        let n = self.dim();
        let mut h = LinearMap::zeros(n, n);
        for k in 0..n {
            let img = f(&shape.to_matrix(self.basis(k).as_slice()));
            h.set_column(k, &crate::linalg::Element::from_vec(shape.from_matrix(&img)));
        }
        h
    }

    // Alternates exp(i t D(c,c)) for grid tripotents c with exp of the
    // inner derivations D(a,b) - D(b,a), so the product is not abelian.
    fn exceptional_k_sample<R: Rng>(&self, rng: &mut R) -> LinearMap {
        let g = grid(self);
        let n = self.dim();
        let mut h = LinearMap::identity(n, n);
        for step in 0..EXCEPTIONAL_FACTORS {
            let theta = rng.random::<f64>() * std::f64::consts::TAU;
            let factor = if step % 2 == 0 {
                let c = &g.elements[rng.random_range(0..g.len())];
                exp_i_hermitian(&self.box_op(c, c), theta)
            } else {
                let a = &g.elements[rng.random_range(0..g.len())];
                let b = &g.elements[rng.random_range(0..g.len())];
                // D(a,b) - D(b,a) is skew-hermitian; -i times it is hermitian
                let skew = self.box_op(a, b) - self.box_op(b, a);
                exp_i_hermitian(&(skew * -I), theta)
            };
            h = factor * h;
        }
        h
    }

    /// Largest `|h{u;v;w} - {hu;hv;hw}|` over a few deterministic probes.
    pub fn automorphism_residual(&self, h: &LinearMap) -> f64 {
        let mut worst: f64 = 0.0;
        for index in 0..4 {
            let mut rng = rng_for(0xa5a5, 0x77, index);
            let u = crate::sampling::random_element(self, &mut rng);
            let v = crate::sampling::random_element(self, &mut rng);
            let w = crate::sampling::random_element(self, &mut rng);
            let lhs = h * self.triple(&u, &v, &w);
            let rhs = self.triple(&(h * &u), &(h * &v), &(h * &w));
            let scale = 1.0 + self.norm(&lhs);
            worst = worst.max(self.norm(&(lhs - rhs)) / scale);
        }
        worst
    }
}
