use std::fmt;

use serde::Serialize;

use super::sff::{hessian, pull_back};
use crate::embedding::EmbeddingSpec;
use crate::error::Result;
use crate::grid::grid;
use crate::kind::Kind;
use crate::linalg::{Element, LinearMap, C64};
use crate::models::spin;
use crate::system::TripleSystem;

/// Threshold on `min_e |F''(0)(e, .)|` for accepting a Mok embedding.
pub const MOK_TOL: f64 = 1e-10;
const LABEL_TOL: f64 = 1e-8;
const RANK_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EmbeddingClass {
    Mok,
    NonMok,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub class: EmbeddingClass,
    /// Smallest singular value of `e -> F''(0)(e, .)`.
    pub sff_min: f64,
    #[serde(skip)]
    pub direction: Element,
    /// `F'(0) e` when it is a tripotent.
    #[serde(skip)]
    pub tripotent: Option<Element>,
    pub tripotent_label: Option<String>,
    pub tripotent_rank: Option<usize>,
    /// Rank of the unit normal of `Ran F'(0)` (spin factors only).
    pub xi_rank: Option<usize>,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.class {
            EmbeddingClass::Mok => {
                write!(f, "MOK, tripotent={}", self.tripotent_label.as_deref().unwrap_or("unlabelled"))
            }
            EmbeddingClass::NonMok => match self.xi_rank {
                Some(r) => write!(f, "NONMOK, xi_rank={r}"),
                None => write!(f, "NONMOK"),
            },
        }
    }
}

/// Decide whether `spec` is a Mok embedding from its second jet: MOK iff
/// some unit `e` has `F''(0)(e, .) = 0`.
pub fn classify_embedding(spec: &EmbeddingSpec) -> Result<Classification> {
    let sys = spec.system();
    let jet = spec.jet2();
    let d = spec.source_dim();
    let n = sys.dim();
    // column k stacks F''(0)(b_k, b_j) over j
    let mut stacked = LinearMap::zeros(n * d, d);
    for k in 0..d {
        for j in 0..d {
            let h = sys.orthonormal_coords(&hessian(&jet, &basis(d, k), &basis(d, j)));
            stacked.view_mut((j * n, k), (n, 1)).copy_from(&h);
        }
    }
    let (singular_values, v_t) = crate::linalg::svd(&stacked, true)?;
    let v_t = v_t.expect("requested");
    let (idx, sff_min) = singular_values
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty source");
    let mut direction: Element = v_t.row(idx).adjoint();
    let class = if sff_min <= MOK_TOL { EmbeddingClass::Mok } else { EmbeddingClass::NonMok };

    let mut tripotent = None;
    let mut tripotent_label = None;
    let mut tripotent_rank = None;
    if class == EmbeddingClass::Mok {
        let mut c = &jet.first * &direction;
        if let Some((label, phase)) = match_grid_label(sys, &c) {
            direction *= phase.conj();
            c *= phase.conj();
            tripotent_label = Some(label);
        }
        let check = sys.is_tripotent(&c, RANK_TOL);
        if check.is_tripotent {
            tripotent_rank = Some(check.rank);
        }
        tripotent = Some(c);
    }
    let xi_rank = match sys.kind() {
        Kind::Spin { .. } => Some(normal_rank(sys, &jet.first)),
        _ => None,
    };
    Ok(Classification { class, sff_min, direction, tripotent, tripotent_label, tripotent_rank, xi_rank })
}

fn basis(d: usize, k: usize) -> Element {
    let mut e = Element::zeros(d);
    e[k] = C64::new(1.0, 0.0);
    e
}

/// Grid element `g` and unimodular `phase` with `c = phase * g`.
fn match_grid_label(sys: &TripleSystem, c: &Element) -> Option<(String, C64)> {
    let g = grid(sys);
    g.elements.iter().zip(&g.labels).find_map(|(e, label)| {
        let phase = sys.inner(c, e) / sys.inner(e, e);
        let close = (phase.norm() - 1.0).abs() <= LABEL_TOL && sys.norm(&(c - e * phase)) <= LABEL_TOL;
        close.then(|| (label.clone(), phase / phase.norm()))
    })
}

/// Rank (1 or 2) of a unit normal to the range of the isometry `first` in a
/// spin factor: rank 1 iff its determinant vanishes.
fn normal_rank(sys: &TripleSystem, first: &LinearMap) -> usize {
    let xi = (0..sys.dim())
        .map(|k| {
            let b = sys.basis(k);
            &b - first * pull_back(sys, first, &b)
        })
        .max_by(|a, b| sys.norm(a).total_cmp(&sys.norm(b)))
        .expect("non-empty target");
    let xi = &xi / C64::new(sys.norm(&xi), 0.0);
    if spin::norm(xi.as_slice()).norm() <= RANK_TOL {
        1
    } else {
        2
    }
}
