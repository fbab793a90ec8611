use super::isometry::ball_system;
use super::{rel, Accumulator, SampleConfig, VerificationReport};
use crate::embedding::{EmbeddingSpec, MapJet};
use crate::error::Result;
use crate::kind::Kind;
use crate::linalg::{Element, LinearMap, C64};
use crate::sampling::{complex_normal_vector, rng_for};
use crate::system::TripleSystem;

const LANE_CURVATURE: u64 = 50;
const LANE_PEIRCE_ZERO: u64 = 51;

/// Full second derivative `F''(0)(x, y)`; the jet stores half of it.
pub(crate) fn hessian(jet: &MapJet, x: &Element, y: &Element) -> Element {
    jet.second_apply(x, y) * C64::new(2.0, 0.0)
}

/// Spectral norm of `x -> F''(0)(e, x)` for the inner product of `sys`.
pub(crate) fn directional_norm(sys: &TripleSystem, jet: &MapJet, e: &Element) -> f64 {
    let d = jet.source_dim();
    let mut m = LinearMap::zeros(sys.dim(), d);
    for k in 0..d {
        let mut x = Element::zeros(d);
        x[k] = C64::new(1.0, 0.0);
        m.set_column(k, &sys.orthonormal_coords(&hessian(jet, e, &x)));
    }
    crate::linalg::spectral_norm(&m)
}

/// Adjoint of `F'(0)` applied to `v`.
pub(crate) fn pull_back(sys: &TripleSystem, first: &LinearMap, v: &Element) -> Element {
    let weighted = Element::from_iterator(v.len(), v.iter().zip(sys.weights()).map(|(x, w)| x * *w));
    first.adjoint() * weighted
}

fn unit<R: rand::Rng>(rng: &mut R, d: usize) -> Element {
    let g = complex_normal_vector(rng, d);
    let n = g.norm();
    g / C64::new(n, 0.0)
}

/// Second fundamental form diagnostics of `spec` at the origin:
///
/// * `sff-distinguished`: norm of `F''(0)(e, .)` for the distinguished direction;
/// * `curvature-relation`: `<{u;v;x}|y> = <F''(u,x)|F''(v,y)> + <{F'u;F'v;F'x}|F'y>`;
/// * `peirce-zero-quartic`: `<v|v><w|w> = <{v;w;w}|v>` with `w = F''(0)(v,v)`,
///   `v` in `Z^1` of the Mok tripotent (Mok-type specs only);
/// * `polarized-determinant`: `<v|conj w> = 0` for the same `v, w` (spin only).
pub fn check_second_fundamental_form(spec: &EmbeddingSpec, cfg: &SampleConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let sys = spec.system();
    let name = sys.kind().to_string();
    let jet = spec.jet2();
    let d = spec.source_dim();
    let mut reports = Vec::new();

    let mut acc = Accumulator::new(cfg.tol);
    let e = spec.distinguished_direction();
    acc.push(0, directional_norm(sys, &jet, &e), || vec![e.clone()]);
    reports.push(acc.finish("sff-distinguished", name.clone(), cfg.seed));

    let ball = ball_system(d)?;
    let mut acc = Accumulator::new(cfg.tol);
    for i in 0..cfg.n_samples as u64 {
        let mut rng = rng_for(cfg.seed, LANE_CURVATURE, i);
        let (u, v, x, y) = (unit(&mut rng, d), unit(&mut rng, d), unit(&mut rng, d), unit(&mut rng, d));
        let lhs = ball.inner(&ball.triple(&u, &v, &x), &y);
        let f = |a: &Element| &jet.first * a;
        let rhs = sys.inner(&hessian(&jet, &u, &x), &hessian(&jet, &v, &y))
            + sys.inner(&sys.triple(&f(&u), &f(&v), &f(&x)), &f(&y));
        acc.push(i, (lhs - rhs).norm(), || vec![u.clone(), v.clone(), x.clone(), y.clone()]);
    }
    reports.push(acc.finish("curvature-relation", name.clone(), cfg.seed));

    if let Some(c) = spec.mok_tripotent() {
        let t = sys.tripotent(&c)?;
        let spin = matches!(sys.kind(), Kind::Spin { .. });
        let mut quartic = Accumulator::new(cfg.tol);
        let mut polar = Accumulator::new(cfg.tol);
        for i in 0..cfg.n_samples as u64 {
            let mut rng = rng_for(cfg.seed, LANE_PEIRCE_ZERO, i);
            let v = &t.p1 * complex_normal_vector(&mut rng, sys.dim());
            let v = &v * C64::new(cfg.radius_frac / sys.norm(&v).max(f64::MIN_POSITIVE), 0.0);
            let x = pull_back(sys, &jet.first, &v);
            let w = hessian(&jet, &x, &x);
            let vv = sys.inner(&v, &v);
            let lhs = vv * sys.inner(&w, &w);
            let r = (lhs - sys.inner(&sys.triple(&v, &w, &w), &v)).norm();
            quartic.push(i, rel(r, lhs.norm()), || vec![v.clone()]);
            if spin {
                let w_bar = w.map(|z| z.conj());
                let r = sys.inner(&v, &w_bar).norm();
                polar.push(i, rel(r, sys.norm(&v) * sys.norm(&w)), || vec![v.clone()]);
            }
        }
        reports.push(quartic.finish("peirce-zero-quartic", name.clone(), cfg.seed));
        if spin {
            reports.push(polar.finish("polarized-determinant", name, cfg.seed));
        }
    }
    Ok(reports)
}
