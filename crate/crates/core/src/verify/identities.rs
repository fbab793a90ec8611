use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{rel, Accumulator, Rank2Kernels, SampleConfig, VerificationReport};
use crate::error::{Error, Result};
use crate::grid::canonical_minimal;
use crate::linalg::{det, solve, Element, LinearMap, C64, ONE};
use crate::ops::Tripotent;
use crate::sampling::{complex_normal_vector, rng_for};
use crate::system::TripleSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `det B(z,w) = Delta(z,w)^p`.
    DetGenus,
    /// `B(h^-1 u, h^* v) = h^-1 B(u,v) h` for `h` in `K` and its complexification.
    Covariance,
    /// `z^c = -c + B_{v,c}^-1 (c + u^c)` for `z = u + v` in `Z^2 + Z^1`.
    AdditionJp,
    /// Factorization of `B(z^c, z^c)` through `a = u + Q_c u + {v;v;c}`.
    BergmanFactorization,
    /// `Delta(z^c, z^c) = |Delta(u,c)|^-2 Delta(a,c)`.
    QuasiDetTransform,
    /// `z^c` lies in the domain iff `a` lies in the Peirce 2-disk.
    DomainCriterion,
    /// `B_{v,c}` is unipotent lower triangular in the Peirce grading.
    LowerTriangular,
    /// `Delta = 1 - E1 + C_2 E11` for rank 2.
    FkRank2,
    /// Expansion of `<x|x>^2 - <Q_x x|x>` for `x = v + w`, `v` in `Z^1`, `w` in `Z^0`.
    C2E2,
    /// `(z^w)^(-w) = z`.
    QuasiInvInvolution,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::DetGenus,
        Identity::Covariance,
        Identity::AdditionJp,
        Identity::BergmanFactorization,
        Identity::QuasiDetTransform,
        Identity::DomainCriterion,
        Identity::LowerTriangular,
        Identity::FkRank2,
        Identity::C2E2,
        Identity::QuasiInvInvolution,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::DetGenus => "det-genus",
            Identity::Covariance => "covariance",
            Identity::AdditionJp => "addition-jp",
            Identity::BergmanFactorization => "bergman-factorization",
            Identity::QuasiDetTransform => "quasi-det-transform",
            Identity::DomainCriterion => "domain-criterion",
            Identity::LowerTriangular => "lower-triangular",
            Identity::FkRank2 => "fk-rank2",
            Identity::C2E2 => "c2e2",
            Identity::QuasiInvInvolution => "quasi-inv-involution",
        }
    }

    pub fn applicable(self, sys: &TripleSystem) -> Result<()> {
        match self {
            Identity::FkRank2 if sys.rank() != 2 => {
                Err(Error::NotApplicable(format!("{} needs rank 2, {} has rank {}", self, sys.kind(), sys.rank())))
            }
            _ => Ok(()),
        }
    }

    fn lane(self) -> u64 {
        100 + 16 * Identity::ALL.iter().position(|&i| i == self).expect("listed") as u64
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity {s:?}")))
    }
}

pub fn run_identity_suite(sys: &TripleSystem, identity: Identity, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    identity.applicable(sys)?;
    let mut acc = Accumulator::new(cfg.tol);
    let lane = identity.lane();
    let minimal = || -> Result<Tripotent> { sys.tripotent(&canonical_minimal(sys).1) };
    match identity {
        Identity::DetGenus => {
            let p = sys.genus() as i32;
            for i in 0..cfg.n_samples as u64 {
                let z = sys.sample_domain_lane(cfg.seed, lane, i, cfg.radius_frac)?;
                let w = sys.sample_domain_lane(cfg.seed, lane + 1, i, cfg.radius_frac)?;
                let delta = sys.quasi_det(&z, &w).powi(p);
                let r = (det(&sys.bergman(&z, &w)) - delta).norm() / (1.0 + delta.norm());
                acc.push(i, r, || vec![z.clone(), w.clone()]);
            }
        }
        Identity::Covariance => {
            for i in 0..cfg.n_samples as u64 {
                let u = sys.sample_domain_lane(cfg.seed, lane, i, cfg.radius_frac)?;
                let v = sys.sample_domain_lane(cfg.seed, lane + 1, i, cfg.radius_frac)?;
                let h = if i % 2 == 0 {
                    sys.k_group_sample(cfg.seed, i)
                } else {
                    complexified_k_sample(sys, &mut rng_for(cfg.seed, lane + 2, i))
                };
                let r = covariance_residual(sys, &h, &u, &v)?;
                acc.push(i, r, || vec![u.clone(), v.clone()]);
            }
        }
        Identity::AdditionJp => {
            let t = minimal()?;
            let c = &t.element;
            for i in 0..cfg.n_samples as u64 {
                let mut rng = rng_for(cfg.seed, lane, i);
                let (u, v) = peirce_pair(sys, &t, &mut rng, cfg.radius_frac, Spread::Free);
                let z = &u + &v;
                let zc = sys.quasi_inverse(&z, c)?;
                let bvc = sys.bergman(&v, c);
                let uc = sys.quasi_inverse(&u, c)?;
                let via_c = solve(&bvc, &(c + &uc))? - c;
                let via_v = sys.quasi_inverse(&v, c)? + solve(&bvc, &uc)?;
                let r = sys.norm(&(&zc - via_c)).max(sys.norm(&(&zc - via_v)));
                acc.push(i, rel(r, sys.norm(&zc)), || vec![u.clone(), v.clone()]);
            }
        }
        Identity::BergmanFactorization | Identity::QuasiDetTransform => {
            let t = minimal()?;
            let c = &t.element;
            for i in 0..cfg.n_samples as u64 {
                let mut rng = rng_for(cfg.seed, lane, i);
                let (u, v) = peirce_pair(sys, &t, &mut rng, cfg.radius_frac, Spread::Admissible);
                let z = &u + &v;
                let zc = sys.quasi_inverse(&z, c)?;
                let a = siegel_real_part(sys, c, &u, &v);
                let r = if identity == Identity::BergmanFactorization {
                    let lhs = sys.bergman(&zc, &zc);
                    let rhs = inverse(&sys.bergman(&z, c))?
                        * sys.bergman(c, &v)
                        * sys.bergman(&a, c)
                        * sys.bergman(&v, c)
                        * inverse(&sys.bergman(c, &z))?;
                    rel(sys.operator_norm(&(&lhs - &rhs)), sys.operator_norm(&rhs))
                } else {
                    let lhs = sys.quasi_det(&zc, &zc);
                    let rhs = sys.quasi_det(&a, c) / sys.quasi_det(&u, c).norm_sqr();
                    rel((lhs - rhs).norm(), rhs.norm())
                };
                acc.push(i, r, || vec![u.clone(), v.clone()]);
            }
        }
        Identity::DomainCriterion => {
            let t = minimal()?;
            let c = &t.element;
            let cc = sys.inner(c, c);
            let mut near = 0.0;
            for i in 0..cfg.n_samples as u64 {
                let mut rng = rng_for(cfg.seed, lane, i);
                let spread = if i % 10 == 9 { Spread::NearBoundary(if i % 20 == 9 { 1e-3 } else { -1e-3 }) } else { Spread::Free };
                let (u, v) = peirce_pair(sys, &t, &mut rng, cfg.radius_frac, spread);
                let zc = sys.quasi_inverse(&(&u + &v), c)?;
                let a = siegel_real_part(sys, c, &u, &v);
                let inside_disk = (sys.inner(&a, c) / cc).norm() < 1.0;
                if matches!(spread, Spread::NearBoundary(_)) {
                    near += 1.0;
                }
                let r = if sys.in_domain(&zc) == inside_disk { 0.0 } else { 1.0 };
                acc.push(i, r, || vec![u.clone(), v.clone()]);
            }
            acc.detail("near_boundary_cases", near);
        }
        Identity::LowerTriangular => {
            let t = minimal()?;
            let c = &t.element;
            let n = sys.dim();
            let blocks = [&t.p2, &t.p1, &t.p0];
            for i in 0..cfg.n_samples as u64 {
                let mut rng = rng_for(cfg.seed, lane, i);
                let v = &t.p1 * complex_normal_vector(&mut rng, n);
                let b = sys.bergman(&v, c);
                let mut r = (det(&b) - ONE).norm();
                for (row, pr) in blocks.iter().enumerate() {
                    r = r.max(sys.operator_norm(&(*pr * &b * *pr - *pr)));
                    for pc in &blocks[row + 1..] {
                        r = r.max(sys.operator_norm(&(*pr * &b * *pc)));
                    }
                }
                acc.push(i, rel(r, 0.0), || vec![v.clone()]);
            }
        }
        Identity::FkRank2 => {
            let kernels = Rank2Kernels::new(sys)?;
            let p = sys.genus() as i32;
            for i in 0..cfg.n_samples as u64 {
                let z = sys.sample_domain_lane(cfg.seed, lane, i, cfg.radius_frac)?;
                let w = sys.sample_domain_lane(cfg.seed, lane + 1, i, cfg.radius_frac)?;
                let fk = kernels.quasi_det(&z, &w);
                let closed = sys.quasi_det(&z, &w);
                let det_b = det(&sys.bergman(&z, &w));
                let r = (fk - closed).norm().max((fk.powi(p) - det_b).norm() / (1.0 + fk.norm().powi(p)));
                acc.push(i, r, || vec![z.clone(), w.clone()]);
            }
        }
        Identity::C2E2 => {
            let t = minimal()?;
            let n = sys.dim();
            for i in 0..cfg.n_samples as u64 {
                let mut rng = rng_for(cfg.seed, lane, i);
                let v = &t.p1 * complex_normal_vector(&mut rng, n) * C64::new(cfg.radius_frac, 0.0);
                let w = &t.p0 * complex_normal_vector(&mut rng, n) * C64::new(cfg.radius_frac, 0.0);
                let x = &v + &w;
                let ip = |a: &Element, b: &Element| sys.inner(a, b);
                let xx = ip(&x, &x);
                let lhs = xx * xx - ip(&sys.quad(&x, &x), &x);
                let (vv, ww) = (ip(&v, &v), ip(&w, &w));
                let rhs = vv * vv + ww * ww + vv * ww * 2.0
                    - ip(&sys.quad(&v, &v), &v)
                    - ip(&sys.triple(&v, &w, &w), &v) * 2.0
                    - ip(&sys.quad(&w, &w), &w);
                acc.push(i, rel((lhs - rhs).norm(), lhs.norm()), || vec![v.clone(), w.clone()]);
            }
        }
        Identity::QuasiInvInvolution => {
            for i in 0..cfg.n_samples as u64 {
                let z = sys.sample_domain_lane(cfg.seed, lane, i, cfg.radius_frac)?;
                let w = sys.sample_domain_lane(cfg.seed, lane + 1, i, cfg.radius_frac)?;
                let back = sys.quasi_inverse(&sys.quasi_inverse(&z, &w)?, &(-&w))?;
                acc.push(i, rel(sys.norm(&(&back - &z)), sys.norm(&z)), || vec![z.clone(), w.clone()]);
            }
        }
    }
    Ok(acc.finish(identity.name(), sys.kind().to_string(), cfg.seed))
}

/// Relative operator-norm defect of covariance under `h`.
pub(crate) fn covariance_residual(sys: &TripleSystem, h: &LinearMap, u: &Element, v: &Element) -> Result<f64> {
    let h_inv = inverse(h)?;
    let lhs = sys.bergman(&(&h_inv * u), &(sys.adjoint(h) * v));
    let rhs = &h_inv * sys.bergman(u, v) * h;
    Ok(rel(sys.operator_norm(&(lhs - &rhs)), sys.operator_norm(&rhs)))
}

/// `exp(D(a,b))` for small random `a, b`: an element of the complexified
/// structure group fixing the origin.
fn complexified_k_sample(sys: &TripleSystem, rng: &mut ChaCha8Rng) -> LinearMap {
    let scale = C64::new(0.3 / (sys.dim() as f64).sqrt(), 0.0);
    let a = complex_normal_vector(rng, sys.dim()) * scale;
    let b = complex_normal_vector(rng, sys.dim()) * scale;
    sys.box_op(&a, &b).exp()
}

fn inverse(m: &LinearMap) -> Result<LinearMap> {
    m.clone().try_inverse().ok_or(Error::NotQuasiInvertible)
}

/// `a = u + Q_c u + {v;v;c}`.
fn siegel_real_part(sys: &TripleSystem, c: &Element, u: &Element, v: &Element) -> Element {
    u + sys.quad(c, u) + sys.triple(v, v, c)
}

#[derive(Debug, Clone, Copy)]
enum Spread {
    /// `|v|^2` anywhere in `[0, 2.5]`.
    Free,
    /// Keep `a` inside the Peirce 2-disk.
    Admissible,
    /// Put `a` at distance `eps` from the unit circle (outside if positive).
    NearBoundary(f64),
}

/// `u = lambda c` with `|lambda| < radius` and `v` in `Z^1` of `c`.
fn peirce_pair(sys: &TripleSystem, t: &Tripotent, rng: &mut ChaCha8Rng, radius: f64, spread: Spread) -> (Element, Element) {
    let r = radius * rng.random::<f64>().sqrt();
    let mut lambda = C64::from_polar(r, rng.random::<f64>() * std::f64::consts::TAU);
    let g = &t.p1 * complex_normal_vector(rng, sys.dim());
    let g_norm = sys.norm(&g);
    let dir = if g_norm > 0.0 { g / C64::new(g_norm, 0.0) } else { g };
    let unit: f64 = rng.random();
    // a = (2 Re lambda + |v|^2) c, so |v|^2 controls membership
    let v_sq = match spread {
        Spread::Free => 2.5 * unit,
        Spread::Admissible => {
            while 2.0 * lambda.re >= 0.95 {
                lambda *= 0.5;
            }
            let lo = (-1.0 - 2.0 * lambda.re).max(0.0);
            let hi = 1.0 - 2.0 * lambda.re;
            lo + (hi - lo) * (0.025 + 0.95 * unit)
        }
        Spread::NearBoundary(eps) => {
            while 1.0 - 2.0 * lambda.re - eps.abs() <= 0.0 {
                lambda *= 0.5;
            }
            1.0 - 2.0 * lambda.re + eps
        }
    };
    let u = &t.element * lambda;
    let v = dir * C64::new(v_sq.sqrt(), 0.0);
    (u, v)
}
