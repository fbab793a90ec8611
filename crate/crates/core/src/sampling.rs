//! Deterministic sampling keyed by `(seed, lane, index)`.
//!
//! Each lane is an independent stream so that adding a new kind of draw
//! never shifts existing ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{Element, LinearMap, C64};
use crate::system::TripleSystem;

pub fn rng_for(seed: u64, lane: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ lane.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

/// Standard complex Gaussian (`E|z|^2 = 1`).
pub fn complex_normal<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_normal_vector<R: Rng>(rng: &mut R, n: usize) -> Element {
    Element::from_fn(n, |_, _| complex_normal(rng))
}

/// Gaussian element, isotropic for the inner product of `sys`.
pub fn random_element<R: Rng>(sys: &TripleSystem, rng: &mut R) -> Element {
    Element::from_iterator(sys.dim(), sys.weights().iter().map(|w| complex_normal(rng) / w.sqrt()))
}

/// Uniform point in the ball of `C^d` of the given radius.
pub fn ball_point<R: Rng>(rng: &mut R, d: usize, radius: f64) -> Element {
    let g = complex_normal_vector(rng, d);
    let u: f64 = rng.random();
    let r = radius * u.powf(1.0 / (2.0 * d as f64));
    let n = g.norm();
    g * C64::new(r / n, 0.0)
}

/// Haar-distributed unitary matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> LinearMap {
    let g = LinearMap::from_fn(n, n, |_, _| complex_normal(rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-distributed real orthogonal matrix.
pub fn random_orthogonal<R: Rng>(rng: &mut R, n: usize) -> LinearMap {
    let g = nalgebra::DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let (mut q, r) = g.qr().unpack();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q.map(|x| C64::new(x, 0.0))
}

pub const LANE_DOMAIN: u64 = 0;

impl TripleSystem {
    /// Deterministic point of `radius_frac * D`: a Gaussian direction scaled
    /// to the boundary by its spectral norm, then shrunk.
    pub fn sample_domain(&self, seed: u64, index: u64, radius_frac: f64) -> Result<Element> {
        self.sample_domain_lane(seed, LANE_DOMAIN, index, radius_frac)
    }

    pub fn sample_domain_lane(&self, seed: u64, lane: u64, index: u64, radius_frac: f64) -> Result<Element> {
        if !(radius_frac > 0.0 && radius_frac < 1.0) {
            return Err(Error::InvalidArgument(format!("radius_frac must lie in (0,1), got {radius_frac}")));
        }
        let mut rng = rng_for(seed, lane, index);
        let g = random_element(self, &mut rng);
        let edge = self.spectral_norm_sq(&g).sqrt();
        Ok(g * C64::new(radius_frac / edge, 0.0))
    }
}
