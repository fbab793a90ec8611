//! Grids (bases of tripotents with quadrangle relations), presentations of
//! Peirce 2-spaces, and canonical frames.

use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::linalg::{Element, C64, I, ONE};
use crate::models::albert::grid_index as aidx;
use crate::models::bicayley::bicayley_index as bidx;
use crate::system::TripleSystem;

/// `sign * grid[index]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedRef {
    pub sign: f64,
    pub index: usize,
}

const fn pos(index: usize) -> SignedRef {
    SignedRef { sign: 1.0, index }
}

const fn neg(index: usize) -> SignedRef {
    SignedRef { sign: -1.0, index }
}

/// Presentation of the Peirce 2-space of `e + f` for orthogonal
/// tripotents `e` (in Z^1 of the anchor) and `f` (in Z^0): each
/// `(e, e_j, f, f_j)` is a quadrangle.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub e: SignedRef,
    pub f: SignedRef,
    pub pairs: Vec<(SignedRef, SignedRef)>,
}

impl Presentation {
    pub fn quadrangles(&self) -> Vec<[SignedRef; 4]> {
        self.pairs.iter().map(|&(ej, fj)| [self.e, ej, self.f, fj]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct GridBasis {
    pub labels: Vec<String>,
    pub elements: Vec<Element>,
    pub quadrangles: Vec<[SignedRef; 4]>,
    /// Grid index of the minimal tripotent the presentations refer to.
    pub anchor: Option<usize>,
    pub presentations: Vec<Presentation>,
}

impl GridBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, r: SignedRef) -> Element {
        &self.elements[r.index] * C64::new(r.sign, 0.0)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Largest residual of `{e_i;e_{i+1};e_{i+2}} = e_{i+3}` over all listed
    /// quadrangles and their cyclic shifts.
    pub fn quadrangle_residual(&self, sys: &TripleSystem) -> f64 {
        let mut worst: f64 = 0.0;
        for q in &self.quadrangles {
            let e: Vec<Element> = q.iter().map(|&r| self.get(r)).collect();
            for i in 0..4 {
                let t = sys.triple(&e[i], &e[(i + 1) % 4], &e[(i + 2) % 4]);
                worst = worst.max(sys.norm(&(t - &e[(i + 3) % 4])));
            }
        }
        worst
    }
}

/// Grid of the triple with its relation metadata.
pub fn grid(sys: &TripleSystem) -> GridBasis {
    match sys.kind() {
        Kind::Rect { r, s } => rect_grid(sys, r, s),
        Kind::Sym { .. } => coordinate_grid(sys, vec![], None, vec![]),
        Kind::Asym { n } => asym_grid(sys, n),
        Kind::Spin { m } => spin_grid(m),
        Kind::BiCayley => bicayley_grid(sys),
        Kind::Albert => albert_grid(sys),
    }
}

fn coordinate_grid(
    sys: &TripleSystem,
    quadrangles: Vec<[SignedRef; 4]>,
    anchor: Option<usize>,
    presentations: Vec<Presentation>,
) -> GridBasis {
    GridBasis {
        labels: sys.labels().to_vec(),
        elements: (0..sys.dim()).map(|k| sys.basis(k)).collect(),
        quadrangles,
        anchor,
        presentations,
    }
}

fn rect_grid(sys: &TripleSystem, r: usize, s: usize) -> GridBasis {
    let at = |i: usize, j: usize| pos(i * s + j);
    let mut quads = Vec::new();
    for i in 0..r {
        for k in 0..r {
            for j in 0..s {
                for l in 0..s {
                    if i != k && j != l {
                        quads.push([at(i, j), at(k, j), at(k, l), at(i, l)]);
                    }
                }
            }
        }
    }
    // presentations relative to E11: f = E_kl in Z^0
    let mut pres = Vec::new();
    if r >= 2 {
        for k in 1..r {
            for l in 1..s {
                for j in 1..s {
                    if j != l {
                        pres.push(Presentation { e: at(0, j), f: at(k, l), pairs: vec![(at(0, l), at(k, j))] });
                    }
                }
                for i in 1..r {
                    if i != k {
                        pres.push(Presentation { e: at(i, 0), f: at(k, l), pairs: vec![(at(k, 0), at(i, l))] });
                    }
                }
            }
        }
    }
    coordinate_grid(sys, quads, Some(0), pres)
}

fn asym_grid(sys: &TripleSystem, n: usize) -> GridBasis {
    // signed reference to F_ij = E_ij - E_ji for i != j
    let index = |i: usize, j: usize| {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    let f = |i: usize, j: usize| if i < j { pos(index(i, j)) } else { neg(index(i, j)) };
    let mut quads = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let ids = [i, j, k, l];
                    let distinct = (0..4).all(|x| (x + 1..4).all(|y| ids[x] != ids[y]));
                    if distinct {
                        quads.push([f(i, j), f(k, j), f(k, l), f(i, l)]);
                    }
                }
            }
        }
    }
    // presentations relative to F12 (0-based 0,1): f = F_jk with 2 <= j < k
    let mut pres = Vec::new();
    for j in 2..n {
        for k in j + 1..n {
            for i in 2..n {
                if i == j || i == k {
                    continue;
                }
                for a in 0..2 {
                    pres.push(Presentation {
                        e: f(i, a),
                        f: f(j, k),
                        pairs: vec![(f(j, a), f(i, k)), (f(k, a), f(j, i))],
                    });
                }
            }
        }
    }
    coordinate_grid(sys, quads, Some(0), pres)
}

fn spin_grid(m: usize) -> GridBasis {
    let pairs = m / 2;
    let mut labels = Vec::new();
    let mut elements = Vec::new();
    for j in 0..pairs {
        for sign in [1.0, -1.0] {
            let mut e = Element::zeros(m);
            e[2 * j] = C64::new(0.5, 0.0);
            e[2 * j + 1] = I * (0.5 * sign);
            elements.push(e);
            labels.push(format!("e{}{}", j + 1, if sign > 0.0 { '+' } else { '-' }));
        }
    }
    if m % 2 == 1 {
        let mut e = Element::zeros(m);
        e[m - 1] = ONE;
        elements.push(e);
        labels.push("e*".to_string());
    }
    let plus = |j: usize| 2 * j;
    let minus = |j: usize| 2 * j + 1;
    let mut quads = Vec::new();
    for i in 0..pairs {
        for j in 0..pairs {
            if i != j {
                quads.push([pos(plus(i)), pos(plus(j)), pos(minus(i)), neg(minus(j))]);
                quads.push([pos(plus(i)), pos(minus(j)), pos(minus(i)), neg(plus(j))]);
            }
        }
    }
    GridBasis { labels, elements, quadrangles: quads, anchor: Some(0), presentations: vec![] }
}

fn bicayley_grid(sys: &TripleSystem) -> GridBasis {
    let p = |k: usize| pos(bidx(k, true));
    let m = |k: usize| pos(bidx(k, false));
    let e1m = m(1);
    let mut pres = vec![Presentation {
        e: neg(bidx(5, true)),
        f: e1m,
        pairs: (2..=4).map(|k| (m(k), p(k + 4))).collect(),
    }];
    for (k, k1, k2) in [(2, 3, 4), (3, 4, 2), (4, 2, 3)] {
        pres.push(Presentation {
            e: m(k + 4),
            f: e1m,
            pairs: vec![(m(k), m(5)), (p(k1), neg(bidx(k2 + 4, true))), (p(k2), p(k1 + 4))],
        });
    }
    let quads = pres.iter().flat_map(|q| q.quadrangles()).collect();
    coordinate_grid(sys, quads, Some(bidx(1, true)), pres)
}

fn albert_grid(sys: &TripleSystem) -> GridBasis {
    let g = |i, j, l, plus| pos(aidx(i, j, l, plus));
    let f = pos(1); // [2]
    let mut pres = Vec::new();
    for eps in [true, false] {
        let mut pairs = vec![(g(1, 2, 1, eps), g(2, 3, 1, eps))];
        for r in 2..=4 {
            pairs.push((g(1, 2, r, !eps), neg(aidx(2, 3, r, eps))));
        }
        pres.push(Presentation { e: g(1, 3, 1, eps), f, pairs });
        for (r, r1, r2) in [(2, 3, 4), (3, 4, 2), (4, 2, 3)] {
            pres.push(Presentation {
                e: g(1, 3, r, eps),
                f,
                pairs: vec![
                    (g(1, 2, 1, !eps), g(2, 3, r, eps)),
                    (g(1, 2, r, eps), g(2, 3, 1, eps)),
                    (g(1, 2, r1, !eps), g(2, 3, r2, !eps)),
                    (g(1, 2, r2, !eps), neg(aidx(2, 3, r1, !eps))),
                ],
            });
        }
    }
    let quads = pres.iter().flat_map(|q| q.quadrangles()).collect();
    coordinate_grid(sys, quads, Some(0), pres)
}

/// A maximal family of mutually orthogonal minimal tripotents.
#[derive(Debug, Clone)]
pub struct Frame {
    pub labels: Vec<String>,
    pub elements: Vec<Element>,
}

impl Frame {
    /// Sum of the frame: a maximal tripotent.
    pub fn maximal_tripotent(&self) -> Element {
        let mut s = self.elements[0].clone();
        for e in &self.elements[1..] {
            s += e;
        }
        s
    }

    /// Largest `D(c_i, c_j)` entry for `i != j` and tripotent residual.
    pub fn residual(&self, sys: &TripleSystem) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, ci) in self.elements.iter().enumerate() {
            worst = worst.max(sys.norm(&(sys.quad(ci, ci) - ci)));
            for (j, cj) in self.elements.iter().enumerate() {
                if i != j {
                    worst = worst.max(sys.box_op(ci, cj).camax());
                }
            }
        }
        worst
    }
}

pub fn canonical_frame(sys: &TripleSystem) -> Frame {
    let g = grid(sys);
    let diag_positions: Vec<(usize, usize)> = match sys.kind() {
        Kind::Rect { r, .. } | Kind::Sym { r } => (0..r).map(|i| (i, i)).collect(),
        Kind::Asym { n } => (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect(),
        _ => vec![],
    };
    let labels: Vec<String> = match (sys.kind(), sys.matrix_shape()) {
        (_, Some(shape)) => {
            let all = shape.positions();
            diag_positions
                .iter()
                .map(|p| sys.labels()[all.iter().position(|q| q == p).expect("frame position")].clone())
                .collect()
        }
        (Kind::Albert, _) => vec!["[1]".into(), "[2]".into(), "[3]".into()],
        _ => vec!["e1+".into(), "e1-".into()],
    };
    let elements = labels
        .iter()
        .map(|l| g.elements[g.index_of(l).expect("frame label in grid")].clone())
        .collect();
    Frame { labels, elements }
}

/// Minimal tripotent used as the default anchor for Mok embeddings.
pub fn canonical_minimal(sys: &TripleSystem) -> (String, Element) {
    let f = canonical_frame(sys);
    (f.labels[0].clone(), f.elements[0].clone())
}

/// Look up a grid element by label.
pub fn grid_element(sys: &TripleSystem, label: &str) -> Result<Element> {
    let g = grid(sys);
    g.index_of(label)
        .map(|k| g.elements[k].clone())
        .ok_or_else(|| Error::InvalidArgument(format!("no grid element {label:?} in {}", sys.kind())))
}
