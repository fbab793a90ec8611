use rand::Rng;

use super::{Accumulator, SampleConfig, VerificationReport};
use crate::embedding::EmbeddingSpec;
use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::linalg::{Element, LinearMap, C64, ONE};
use crate::models::spin;
use crate::sampling::{ball_point, complex_normal_vector, rng_for};
use crate::system::TripleSystem;

const LANE_SPAN: u64 = 70;
const LANE_COMPLETION: u64 = 71;
const LANE_ON_GRAPH: u64 = 72;
const LANE_OFF_GRAPH: u64 = 73;
const SPAN_TOL: f64 = 1e-6;
/// Off-graph probes must exceed this multiple of the on-graph maximum.
pub const REJECTION_FACTOR: f64 = 1e3;

/// Fischer coordinates of `E_w^-`: the orthonormal coordinates of `w`.
fn phi_minus(sys: &TripleSystem, w: &Element) -> Element {
    sys.orthonormal_coords(w)
}

/// `E_w^+ + z`: the determinant `N(w)` followed by `z`.
fn graph_target(w: &Element, z: &Element) -> Element {
    let mut t = Element::zeros(z.len() + 1);
    t[0] = spin::norm(w.as_slice());
    t.rows_mut(1, z.len()).copy_from(z);
    t
}

/// Unitary `U` with `U E_{F(z)}^- = E_{F(z)}^+ + z` on the graph of an
/// isometry into a spin factor; the variety is `{(z, w) : U E_w^- = E_w^+ + z}`.
#[derive(Debug, Clone)]
pub struct GraphVariety {
    pub unitary: LinearMap,
    /// Dimension of the span of the sampled `E_{F(z)}^-`.
    pub span_rank: usize,
    /// Largest defect of `<E^-|E^-> = <E^+|E^+> + <z|z'>` over sampled pairs.
    pub pairing_residual: f64,
}

impl GraphVariety {
    pub fn build(spec: &EmbeddingSpec, cfg: &SampleConfig) -> Result<Self> {
        let sys = spec.system();
        if !matches!(sys.kind(), Kind::Spin { .. }) {
            return Err(Error::NotApplicable(format!("graph variety needs a spin factor, got {}", sys.kind())));
        }
        let n = sys.dim();
        let d = spec.source_dim();
        if d + 1 != n {
            return Err(Error::DimensionMismatch { expected: n - 1, got: d });
        }
        let budget = 4 * n as u64;
        let mut sources = Vec::new();
        let mut targets = Vec::new();
        let mut last_growth = 0;
        let mut pairing_residual: f64 = 0.0;
        let mut seen: Vec<(Element, Element)> = Vec::new();
        for i in 0..budget {
            if sources.len() == n {
                break;
            }
            let mut rng = rng_for(cfg.seed, LANE_SPAN, i);
            let z = ball_point(&mut rng, d, cfg.radius_frac);
            let w = spec.evaluate(&z)?;
            let (s, t) = (phi_minus(sys, &w), graph_target(&w, &z));
            for (s0, t0) in &seen {
                pairing_residual = pairing_residual.max((s.dotc(s0) - t.dotc(t0)).norm());
            }
            seen.push((s.clone(), t.clone()));
            if extend_matched(&mut sources, &mut targets, s, t) {
                last_growth = i;
            }
        }
        let rank = sources.len();
        if rank == 0 || (rank < n && budget - last_growth <= n as u64) {
            return Err(Error::RankDeficientSpan { rank, needed: n });
        }
        // deterministic completion of both orthobases
        let mut k = 0;
        while sources.len() < n {
            let mut rng = rng_for(cfg.seed, LANE_COMPLETION, k);
            let s = complex_normal_vector(&mut rng, n);
            let t = complex_normal_vector(&mut rng, n);
            complete(&mut sources, s);
            complete(&mut targets, t);
            // keep the two lists in step
            let m = sources.len().min(targets.len());
            sources.truncate(m);
            targets.truncate(m);
            k += 1;
        }
        let qs = LinearMap::from_columns(&sources);
        let qt = LinearMap::from_columns(&targets);
        Ok(GraphVariety { unitary: qt * qs.adjoint(), span_rank: rank, pairing_residual })
    }

    /// `|U E_w^- - (E_w^+ + z)|`.
    pub fn residual(&self, sys: &TripleSystem, z: &Element, w: &Element) -> f64 {
        (&self.unitary * phi_minus(sys, w) - graph_target(w, z)).norm()
    }
}

/// Gram-Schmidt step applied to `s`, with the same combination applied to
/// `t`; returns whether `s` enlarged the span.
fn extend_matched(sources: &mut Vec<Element>, targets: &mut Vec<Element>, s: Element, t: Element) -> bool {
    let scale = s.norm();
    let (mut rs, mut rt) = (s, t);
    for (q, p) in sources.iter().zip(targets.iter()) {
        let a = q.dotc(&rs);
        rs -= q * a;
        rt -= p * a;
    }
    let len = rs.norm();
    if len <= SPAN_TOL * scale.max(1.0) {
        return false;
    }
    sources.push(rs / C64::new(len, 0.0));
    targets.push(rt / C64::new(len, 0.0));
    true
}

fn complete(basis: &mut Vec<Element>, mut s: Element) {
    for q in basis.iter() {
        let a = q.dotc(&s);
        s -= q * a;
    }
    let len = s.norm();
    if len > SPAN_TOL {
        basis.push(s / C64::new(len, 0.0));
    }
}

fn off_graph_probe<R: Rng>(sys: &TripleSystem, rng: &mut R, w: &Element, magnitude: f64) -> Element {
    let delta = complex_normal_vector(rng, sys.dim());
    let len = sys.norm(&delta);
    w + delta * C64::new(magnitude / len, 0.0)
}

/// Graph variety of an isometry into a spin factor: on-graph residuals at
/// fresh points, with off-graph probes at distance at least 0.1 required to
/// exceed [`REJECTION_FACTOR`] times the on-graph maximum.
pub fn graph_variety_spin(spec: &EmbeddingSpec, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let sys = spec.system();
    let d = spec.source_dim();
    let variety = GraphVariety::build(spec, cfg)?;
    let mut acc = Accumulator::new(cfg.tol);
    for i in 0..cfg.n_samples as u64 {
        let mut rng = rng_for(cfg.seed, LANE_ON_GRAPH, i);
        let z = ball_point(&mut rng, d, cfg.radius_frac);
        let w = spec.evaluate(&z)?;
        let level = (sys.quasi_det(&w, &w) - (ONE - z.dotc(&z))).norm();
        acc.push(i, variety.residual(sys, &z, &w).max(level), || vec![z.clone()]);
    }
    let on_max = acc.max();
    let threshold = REJECTION_FACTOR * on_max;
    let mut off_min = f64::INFINITY;
    for i in 0..cfg.n_samples as u64 {
        let mut rng = rng_for(cfg.seed, LANE_OFF_GRAPH, i);
        let z = ball_point(&mut rng, d, cfg.radius_frac);
        let magnitude = 0.1 * (1.0 + 2.0 * rng.random::<f64>());
        let w = off_graph_probe(sys, &mut rng, &spec.evaluate(&z)?, magnitude);
        let r = variety.residual(sys, &z, &w);
        off_min = off_min.min(r);
        // an accepted probe counts as a failure
        let miss = if r >= threshold { 0.0 } else { 1.0 };
        acc.push(cfg.n_samples as u64 + i, miss, || vec![z.clone(), w.clone()]);
    }
    acc.detail("on_graph_max", on_max);
    acc.detail("off_graph_min", off_min);
    acc.detail("rejection_ratio", if on_max > 0.0 { off_min / on_max } else { f64::MAX });
    acc.detail("pairing_residual", variety.pairing_residual);
    acc.detail("span_rank", variety.span_rank as f64);
    Ok(acc.finish("graph-variety", sys.kind().to_string(), cfg.seed))
}

/// Smallest off-graph residual over `cfg.n_samples` probes for each probe
/// distance in `magnitudes`.
pub fn graph_calibration(spec: &EmbeddingSpec, cfg: &SampleConfig, magnitudes: &[f64]) -> Result<Vec<(f64, f64)>> {
    let sys = spec.system();
    let variety = GraphVariety::build(spec, cfg)?;
    magnitudes
        .iter()
        .map(|&m| {
            let mut worst = f64::INFINITY;
            for i in 0..cfg.n_samples as u64 {
                let mut rng = rng_for(cfg.seed, LANE_OFF_GRAPH, i);
                let z = ball_point(&mut rng, spec.source_dim(), cfg.radius_frac);
                let w = off_graph_probe(sys, &mut rng, &spec.evaluate(&z)?, m);
                worst = worst.min(variety.residual(sys, &z, &w));
            }
            Ok((m, worst))
        })
        .collect()
}
