use std::sync::Arc;

use super::{check_embedding_isometry, Accumulator, SampleConfig, VerificationReport};
use crate::embedding::{EmbeddingSpec, FtSpec};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::sampling::{complex_normal_vector, rng_for};
use crate::system::TripleSystem;

const LANE_SPHERE: u64 = 80;

/// `max |F_t(z) - F_0(z)|` over sampled `z` on the sphere of radius
/// `cfg.radius_frac`; by the maximum principle this is the sup over the ball.
pub fn sup_distance(sys: &Arc<TripleSystem>, t: f64, cfg: &SampleConfig) -> Result<f64> {
    let ft = FtSpec::new(sys.clone(), t)?;
    let f0 = FtSpec::limit(sys.clone())?;
    let d = ft.basis.len() + 1;
    let mut sup: f64 = 0.0;
    for i in 0..cfg.n_samples as u64 {
        let mut rng = rng_for(cfg.seed, LANE_SPHERE, i);
        let g = complex_normal_vector(&mut rng, d);
        let z = &g * C64::new(cfg.radius_frac / g.norm(), 0.0);
        sup = sup.max(sys.norm(&(ft.evaluate(&z)? - f0.evaluate(&z)?)));
    }
    Ok(sup)
}

/// Convergence `F_t -> F_0` along a decreasing `t_list`: every `F_t` must pass
/// the kernel isometry check and the sup distances must strictly decrease.
/// The sup distances, and the ratio over any step where `t` is quartered, are
/// reported as details.
pub fn rigidity_convergence(sys: &Arc<TripleSystem>, t_list: &[f64], cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    if t_list.is_empty() || t_list.iter().any(|&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::InvalidArgument("t values must lie in (0,1)".into()));
    }
    if t_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument("t values must be strictly decreasing".into()));
    }
    let mut acc = Accumulator::new(cfg.tol);
    let mut distances = Vec::with_capacity(t_list.len());
    for (k, &t) in t_list.iter().enumerate() {
        let spec = EmbeddingSpec::FtFamily(FtSpec::new(sys.clone(), t)?);
        let iso = check_embedding_isometry(&spec, cfg)?;
        acc.push(k as u64, iso.max_residual, Vec::new);
        let dist = sup_distance(sys, t, cfg)?;
        acc.detail(format!("d[{t}]"), dist);
        distances.push(dist);
    }
    for (k, pair) in distances.windows(2).enumerate() {
        let miss = if pair[1] < pair[0] { 0.0 } else { 1.0 };
        acc.push((t_list.len() + k) as u64, miss, Vec::new);
    }
    for (i, &t) in t_list.iter().enumerate() {
        if let Some(j) = t_list.iter().position(|&s| (s - t / 4.0).abs() <= 1e-12 * t) {
            acc.detail("quarter_ratio", distances[j] / distances[i]);
            break;
        }
    }
    Ok(acc.finish("rigidity-convergence", sys.kind().to_string(), cfg.seed))
}
