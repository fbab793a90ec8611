use super::{rel, Accumulator, SampleConfig, VerificationReport, NUMERIC_TOL_FLOOR};
use crate::embedding::{numeric_jacobian, EmbeddingSpec};
use crate::error::Result;
use crate::kind::Kind;
use crate::linalg::{solve, Element, ONE};
use crate::sampling::{ball_point, complex_normal_vector, rng_for};
use crate::system::TripleSystem;

const LANE_ISOMETRY: u64 = 40;
const LANE_PULLBACK: u64 = 41;
const JACOBIAN_STEP: f64 = 1e-3;

/// The unit ball of `C^d` as the rank-one triple of `1 x d` matrices.
pub(crate) fn ball_system(d: usize) -> Result<TripleSystem> {
    TripleSystem::new(Kind::Rect { r: 1, s: d })
}

/// `max |Delta(F(z), F(w)) - (1 - <z|w>)|` over sampled pairs.
pub fn check_embedding_isometry(spec: &EmbeddingSpec, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let sys = spec.system();
    let d = spec.source_dim();
    let mut acc = Accumulator::new(cfg.tol);
    for i in 0..cfg.n_samples as u64 {
        let mut rng = rng_for(cfg.seed, LANE_ISOMETRY, i);
        let z = ball_point(&mut rng, d, cfg.radius_frac);
        let w = ball_point(&mut rng, d, cfg.radius_frac);
        let delta = sys.quasi_det(&spec.evaluate(&z)?, &spec.evaluate(&w)?);
        let r = (delta - (ONE - w.dotc(&z))).norm();
        acc.push(i, r, || vec![z.clone(), w.clone()]);
    }
    Ok(acc.finish("kernel-isometry", sys.kind().to_string(), cfg.seed))
}

/// `<B(F z, F w)^-1 F'(z) x | F'(w) y> = <B(z,w)^-1 x | y>` with `F'` from
/// finite differences; sample 0 is the origin.
pub fn check_metric_pullback(spec: &EmbeddingSpec, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let sys = spec.system();
    let d = spec.source_dim();
    let ball = ball_system(d)?;
    let tol = cfg.tol.max(NUMERIC_TOL_FLOOR);
    let mut acc = Accumulator::new(tol);
    let jac = |z: &Element| numeric_jacobian(|x| spec.evaluate(x), z, sys.dim(), JACOBIAN_STEP);
    for i in 0..cfg.n_samples as u64 {
        let mut rng = rng_for(cfg.seed, LANE_PULLBACK, i);
        let (z, w) = if i == 0 {
            (Element::zeros(d), Element::zeros(d))
        } else {
            (ball_point(&mut rng, d, cfg.radius_frac), ball_point(&mut rng, d, cfg.radius_frac))
        };
        let x = complex_normal_vector(&mut rng, d);
        let y = complex_normal_vector(&mut rng, d);
        let (fz, fw) = (spec.evaluate(&z)?, spec.evaluate(&w)?);
        let target = sys.inner(&solve(&sys.bergman(&fz, &fw), &(jac(&z)? * &x))?, &(jac(&w)? * &y));
        let source = ball.inner(&solve(&ball.bergman(&z, &w), &x)?, &y);
        acc.push(i, rel((target - source).norm(), source.norm()), || vec![z.clone(), w.clone(), x.clone(), y.clone()]);
    }
    Ok(acc.finish("metric-pullback", sys.kind().to_string(), cfg.seed))
}
