use super::{rel, Accumulator, SampleConfig, VerificationReport};
use crate::error::Result;
use crate::grid::{canonical_minimal, grid, GridBasis, Presentation};
use crate::kind::Kind;
use crate::linalg::{Element, LinearMap, C64};
use crate::models::albert::grid_index as aidx;
use crate::models::bicayley::bicayley_index as bidx;
use crate::models::octonion::oct_index;
use crate::models::Octonion;
use crate::sampling::{complex_normal_vector, rng_for};
use crate::system::TripleSystem;

const LANE_PRESENTATION: u64 = 60;

/// `sum_j <v|e^j><x|f^j>` over the pairs of a presentation.
fn pair_sum(sys: &TripleSystem, g: &GridBasis, p: &Presentation, v: &Element, x: &Element) -> C64 {
    p.pairs.iter().map(|&(e, f)| sys.inner(v, &g.get(e)) * sys.inner(x, &g.get(f))).sum()
}

/// The linear system on `(x_5^-, x_6^+, x_7^+, x_8^+)` obtained from the four
/// bi-Cayley presentations at `e_1^+`, in grid coordinates `v_k^{+-} = <v|e_k^{+-}>`.
pub fn bicayley_matrix(sys: &TripleSystem, v: &Element) -> LinearMap {
    let g = grid(sys);
    let c = |k: usize, plus: bool| sys.inner(v, &g.elements[bidx(k, plus)]);
    let z = C64::new(0.0, 0.0);
    #[rustfmt::skip]
    let rows = [
        [z,              c(2, false),  c(3, false),  c(4, false)],
        [c(2, false),    z,            c(4, true),   -c(3, true)],
        [c(3, false),    -c(4, true),  z,            c(2, true)],
        [c(4, false),    c(3, true),   -c(2, true),  z],
    ];
    LinearMap::from_fn(4, 4, |i, j| rows[i][j])
}

/// Split octonion with `hat(x)_1^e = x_1^e`, `hat(x)_r^e = x_r^{-e}`.
fn hat<F: Fn(usize, bool) -> C64>(coord: F) -> Octonion {
    let mut o = Octonion::zero();
    for l in 1..=4 {
        for plus in [true, false] {
            o.0[oct_index(l, plus)] = if l == 1 { coord(l, plus) } else { coord(l, !plus) };
        }
    }
    o
}

/// Relations of the grid presentations at the anchor `c`, with `w = Q_v c`
/// for sampled `v` in `Z^1`:
///
/// * `<v|e><w|f> = sum_j <v|e^j><w|f^j>` for every presentation;
/// * the per-kind forms of the remaining pair sums for arbitrary `x` in
///   `Z^0` (bi-Cayley matrix, Albert octonion product);
/// * symmetric matrices: `v_j w_ik = v_i w_jk`;
/// * spin factors and `asym(4)`: `w` lies on the line `Z^0`.
pub fn check_presentation_relations(sys: &TripleSystem, cfg: &SampleConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let g = grid(sys);
    let c = match g.anchor {
        Some(k) => g.elements[k].clone(),
        None => canonical_minimal(sys).1,
    };
    let t = sys.tripotent(&c)?;
    let n = sys.dim();
    let mut acc = Accumulator::new(cfg.tol);
    for i in 0..cfg.n_samples as u64 {
        let mut rng = rng_for(cfg.seed, LANE_PRESENTATION, i);
        let v = &t.p1 * complex_normal_vector(&mut rng, n) * C64::new(cfg.radius_frac, 0.0);
        let x = &t.p0 * complex_normal_vector(&mut rng, n);
        let w = sys.quad(&v, &c);
        let mut r: f64 = 0.0;
        for p in &g.presentations {
            let lead = sys.inner(&v, &g.get(p.e)) * sys.inner(&w, &g.get(p.f));
            r = r.max(rel((lead - pair_sum(sys, &g, p, &v, &w)).norm(), lead.norm()));
        }
        match sys.kind() {
            Kind::Sym { r: size } => {
                let shape = sys.matrix_shape().expect("matrix model");
                let (mv, mw) = (shape.to_matrix(v.as_slice()), shape.to_matrix(w.as_slice()));
                for a in 1..size {
                    for b in a + 1..size {
                        for k in 1..size {
                            let lhs = mv[(b, 0)] * mw[(a, k)];
                            r = r.max(rel((lhs - mv[(a, 0)] * mw[(b, k)]).norm(), lhs.norm()));
                        }
                    }
                }
            }
            Kind::Spin { .. } | Kind::Asym { n: 4 } => {
                let f = (0..n)
                    .map(|k| &t.p0 * sys.basis(k))
                    .max_by(|a, b| sys.norm(a).total_cmp(&sys.norm(b)))
                    .expect("non-empty");
                let along = &f * (sys.inner(&w, &f) / sys.inner(&f, &f));
                r = r.max(rel(sys.norm(&(&w - along)), sys.norm(&w)));
            }
            Kind::BiCayley => {
                let m = bicayley_matrix(sys, &v);
                let xs = [(5, false), (6, true), (7, true), (8, true)];
                let xv = Element::from_iterator(4, xs.iter().map(|&(k, plus)| sys.inner(&x, &g.elements[bidx(k, plus)])));
                let lhs = m * xv;
                for (row, p) in g.presentations.iter().enumerate() {
                    let s = pair_sum(sys, &g, p, &v, &x);
                    r = r.max(rel((lhs[row] - s).norm(), s.norm()));
                }
            }
            Kind::Albert => {
                let vc = |l: usize, plus: bool| sys.inner(&v, &g.elements[aidx(1, 2, l, plus)]);
                let xc = |l: usize, plus: bool| sys.inner(&x, &g.elements[aidx(2, 3, l, plus)]);
                let product = hat(xc) * hat(vc);
                for p in &g.presentations {
                    let e = g.labels[p.e.index].as_str();
                    // e = [13]_l^eps
                    let l = e[4..5].parse::<usize>().expect("albert label");
                    let plus = e.ends_with('+');
                    let component = if l == 1 { oct_index(1, plus) } else { oct_index(l, !plus) };
                    let s = pair_sum(sys, &g, p, &v, &x);
                    r = r.max(rel((product.0[component] - s).norm(), s.norm()));
                }
            }
            _ => {}
        }
        acc.push(i, r, || vec![v.clone()]);
    }
    Ok(acc.finish("presentation-relations", sys.kind().to_string(), cfg.seed))
}
