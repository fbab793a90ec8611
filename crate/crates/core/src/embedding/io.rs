//! JSON form of embedding descriptions.
//!
//! Complex numbers are `[re, im]`; matrices are
//! `{"rows": r, "cols": c, "data": [[re, im], ...]}` in row-major order.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{EmbeddingSpec, FtSpec, LieSpec, MokSpec};
use crate::error::{Error, Result};
use crate::grid::grid_element;
use crate::linalg::{Element, LinearMap, C64};
use crate::system::TripleSystem;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &LinearMap) -> Self {
        let mut data = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                data.push([m[(i, j)].re, m[(i, j)].im]);
            }
        }
        MatrixJson { rows: m.nrows(), cols: m.ncols(), data }
    }

    pub fn to_matrix(&self) -> Result<LinearMap> {
        if self.data.len() != self.rows * self.cols {
            return Err(Error::MalformedSpec(format!(
                "matrix data has {} entries, expected {}x{}",
                self.data.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(LinearMap::from_row_iterator(self.rows, self.cols, self.data.iter().map(|&[re, im]| C64::new(re, im))))
    }
}

pub fn vector_to_json(v: &Element) -> Vec<[f64; 2]> {
    v.iter().map(|x| [x.re, x.im]).collect()
}

pub fn vector_from_json(v: &[[f64; 2]]) -> Element {
    Element::from_iterator(v.len(), v.iter().map(|&[re, im]| C64::new(re, im)))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecJson {
    Mok {
        system: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tripotent_label: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tripotent: Option<Vec<[f64; 2]>>,
        #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
        lift: Option<MatrixJson>,
    },
    LieIrrational {
        system: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        frame_labels: Option<[String; 2]>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        e1: Option<Vec<[f64; 2]>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega: Option<[f64; 2]>,
        #[serde(default = "unit")]
        tau: [f64; 2],
    },
    FtFamily {
        system: String,
        t: f64,
    },
    Reparametrized {
        inner: Box<SpecJson>,
        k: MatrixJson,
        #[serde(rename = "U")]
        u: MatrixJson,
    },
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

fn cplx([re, im]: [f64; 2]) -> C64 {
    C64::new(re, im)
}

impl SpecJson {
    pub fn from_spec(spec: &EmbeddingSpec) -> Self {
        match spec {
            EmbeddingSpec::Mok(m) => SpecJson::Mok {
                system: m.system.kind().to_string(),
                tripotent_label: m.label.clone(),
                tripotent: if m.label.is_some() { None } else { Some(vector_to_json(&m.tripotent.element)) },
                lift: Some(MatrixJson::from_matrix(&m.lift)),
            },
            EmbeddingSpec::LieIrrational(l) => SpecJson::LieIrrational {
                system: l.system.kind().to_string(),
                frame_labels: l.frame_labels.clone(),
                e1: if l.frame_labels.is_some() { None } else { Some(vector_to_json(&l.e1)) },
                omega: if l.frame_labels.is_some() { None } else { Some([l.omega.re, l.omega.im]) },
                tau: [l.tau.re, l.tau.im],
            },
            EmbeddingSpec::FtFamily(f) => SpecJson::FtFamily { system: f.system.kind().to_string(), t: f.t },
            EmbeddingSpec::Reparametrized(r) => SpecJson::Reparametrized {
                inner: Box::new(SpecJson::from_spec(&r.inner)),
                k: MatrixJson::from_matrix(&r.k),
                u: MatrixJson::from_matrix(&r.u),
            },
        }
    }

    pub fn build(&self) -> Result<EmbeddingSpec> {
        let system = |s: &str| -> Result<Arc<TripleSystem>> { Ok(Arc::new(TripleSystem::parse(s)?)) };
        match self {
            SpecJson::Mok { system: s, tripotent_label, tripotent, lift } => {
                let sys = system(s)?;
                let (c, label) = match (tripotent_label, tripotent) {
                    (_, Some(v)) => (vector_from_json(v), None),
                    (Some(label), None) => (grid_element(&sys, label)?, Some(label.clone())),
                    (None, None) => {
                        let (label, c) = crate::grid::canonical_minimal(&sys);
                        (c, Some(label))
                    }
                };
                let spec = match lift {
                    Some(l) => MokSpec::new(sys, c, label, l.to_matrix()?)?,
                    None => MokSpec::at_tripotent(sys, c, label)?,
                };
                Ok(EmbeddingSpec::Mok(spec))
            }
            SpecJson::LieIrrational { system: s, frame_labels, e1, omega, tau } => {
                let sys = system(s)?;
                let tau = cplx(*tau);
                let spec = match (frame_labels, e1) {
                    (Some([a, b]), None) => {
                        let (x, y) = (grid_element(&sys, a)?, grid_element(&sys, b)?);
                        let mut spec = LieSpec::from_frame(sys, x, y, tau)?;
                        spec.frame_labels = Some([a.clone(), b.clone()]);
                        spec
                    }
                    (None, Some(e1)) => LieSpec::new(sys, vector_from_json(e1), omega.map(cplx).unwrap_or(C64::new(1.0, 0.0)), tau)?,
                    (None, None) => LieSpec::canonical(sys, tau)?,
                    (Some(_), Some(_)) => {
                        return Err(Error::MalformedSpec("give either frame_labels or e1, not both".into()))
                    }
                };
                Ok(EmbeddingSpec::LieIrrational(spec))
            }
            SpecJson::FtFamily { system: s, t } => Ok(EmbeddingSpec::FtFamily(FtSpec::new(system(s)?, *t)?)),
            SpecJson::Reparametrized { inner, k, u } => inner.build()?.reparametrize(k.to_matrix()?, u.to_matrix()?),
        }
    }
}

impl EmbeddingSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpecJson::from_spec(self)).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<EmbeddingSpec> {
        let parsed: SpecJson = serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        parsed.build()
    }
}
