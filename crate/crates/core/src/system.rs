use std::fmt;

use crate::error::{Error, Result};
use crate::kind::{Invariants, Kind};
use crate::linalg::{Element, LinearMap, C64, ONE};
use crate::models::matrix::MatrixShape;
use crate::models::sparse::SparseTriple;
use crate::models::{albert, bicayley, spin};

#[derive(Debug, Clone)]
enum Model {
    Matrix(MatrixShape),
    Spin,
    Sparse(&'static SparseTriple),
}

/// An irreducible hermitian Jordan triple in fixed coordinates.
///
/// The inner product is `<u|v> = sum_k weight_k u_k conj(v_k)`, normalized
/// so that minimal tripotents have norm 1.
#[derive(Debug, Clone)]
pub struct TripleSystem {
    kind: Kind,
    inv: Invariants,
    labels: Vec<String>,
    weights: Vec<f64>,
    model: Model,
}

impl TripleSystem {
    pub fn new(kind: Kind) -> Result<Self> {
        let kind = kind.validate()?;
        let inv = kind.invariants();
        let (labels, weights, model) = match kind {
            Kind::Rect { r, s } => matrix_model(MatrixShape::Rect { r, s }),
            Kind::Sym { r } => matrix_model(MatrixShape::Sym { r }),
            Kind::Asym { n } => matrix_model(MatrixShape::Asym { n }),
            Kind::Spin { m } => ((1..=m).map(|j| format!("x{j}")).collect(), vec![2.0; m], Model::Spin),
            Kind::BiCayley => {
                let t = bicayley::structure().ok_or_else(|| {
                    Error::ConstructionValidationFailed("Peirce 1-space is not closed".into())
                })?;
                (bicayley::labels(), vec![1.0; bicayley::BICAYLEY_DIM], Model::Sparse(t))
            }
            Kind::Albert => {
                (albert::grid_labels(), vec![1.0; albert::ALBERT_DIM], Model::Sparse(albert::grid_structure()))
            }
        };
        debug_assert_eq!(labels.len(), inv.dim);
        Ok(TripleSystem { kind, inv, labels, weights, model })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn invariants(&self) -> Invariants {
        self.inv
    }

    pub fn dim(&self) -> usize {
        self.inv.dim
    }

    pub fn rank(&self) -> usize {
        self.inv.rank
    }

    pub fn genus(&self) -> usize {
        self.inv.genus
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero(&self) -> Element {
        Element::zeros(self.dim())
    }

    pub fn basis(&self, k: usize) -> Element {
        let mut e = self.zero();
        e[k] = ONE;
        e
    }

    pub fn check(&self, z: &Element) -> Result<()> {
        if z.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), got: z.len() })
        }
    }

    pub fn inner(&self, u: &Element, v: &Element) -> C64 {
        u.iter().zip(v.iter()).zip(&self.weights).map(|((a, b), w)| a * b.conj() * *w).sum()
    }

    pub fn norm(&self, u: &Element) -> f64 {
        self.inner(u, u).re.max(0.0).sqrt()
    }

    /// `{u;v;w}`.
    pub fn triple(&self, u: &Element, v: &Element, w: &Element) -> Element {
        let (u, v, w) = (u.as_slice(), v.as_slice(), w.as_slice());
        let out = match &self.model {
            Model::Matrix(shape) => shape.triple(u, v, w),
            Model::Spin => spin::triple(u, v, w),
            Model::Sparse(t) => t.triple(u, v, w),
        };
        Element::from_vec(out)
    }

    pub fn try_triple(&self, u: &Element, v: &Element, w: &Element) -> Result<Element> {
        self.check(u)?;
        self.check(v)?;
        self.check(w)?;
        Ok(self.triple(u, v, w))
    }

    /// `Q_u v = {u;v;u}/2`.
    pub fn quad(&self, u: &Element, v: &Element) -> Element {
        self.triple(u, v, u) * C64::new(0.5, 0.0)
    }

    /// Matrix of `D(u,v): w -> {u;v;w}`.
    pub fn box_op(&self, u: &Element, v: &Element) -> LinearMap {
        if let Model::Sparse(t) = &self.model {
            return t.box_matrix(u.as_slice(), v.as_slice());
        }
        let n = self.dim();
        let mut m = LinearMap::zeros(n, n);
        for k in 0..n {
            m.set_column(k, &self.triple(u, v, &self.basis(k)));
        }
        m
    }

    /// Matrix `M` with `Q_u x = M conj(x)`.
    pub fn quad_matrix(&self, u: &Element) -> LinearMap {
        if let Model::Sparse(t) = &self.model {
            return t.quad_matrix(u.as_slice());
        }
        let n = self.dim();
        let mut m = LinearMap::zeros(n, n);
        for k in 0..n {
            m.set_column(k, &self.quad(u, &self.basis(k)));
        }
        m
    }

    /// `B(u,v) = Id - D(u,v) + Q_u Q_v`.
    pub fn bergman(&self, u: &Element, v: &Element) -> LinearMap {
        let n = self.dim();
        let qq = self.quad_matrix(u) * self.quad_matrix(v).map(|x| x.conj());
        LinearMap::identity(n, n) - self.box_op(u, v) + qq
    }

    /// Adjoint with respect to the weighted inner product.
    pub fn adjoint(&self, a: &LinearMap) -> LinearMap {
        let mut h = a.adjoint();
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                h[(i, j)] *= self.weights[j] / self.weights[i];
            }
        }
        h
    }

    /// The same operator in coordinates orthonormal for the inner product.
    pub fn to_orthonormal(&self, a: &LinearMap) -> LinearMap {
        let mut h = a.clone();
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                h[(i, j)] *= (self.weights[i] / self.weights[j]).sqrt();
            }
        }
        h
    }

    /// Operator norm with respect to the inner product.
    pub fn operator_norm(&self, a: &LinearMap) -> f64 {
        let h = self.to_orthonormal(a);
        crate::linalg::spectral_norm(&h)
    }

    /// Coordinates of `z` in an orthonormal basis.
    pub fn orthonormal_coords(&self, z: &Element) -> Element {
        Element::from_iterator(self.dim(), z.iter().zip(&self.weights).map(|(x, w)| x * w.sqrt()))
    }

    pub fn from_orthonormal_coords(&self, y: &Element) -> Element {
        Element::from_iterator(self.dim(), y.iter().zip(&self.weights).map(|(x, w)| x / w.sqrt()))
    }

    pub(crate) fn matrix_shape(&self) -> Option<MatrixShape> {
        match self.model {
            Model::Matrix(s) => Some(s),
            _ => None,
        }
    }

    /// Coordinates from `(label, value)` pairs.
    pub fn element_from_labels(&self, parts: &[(&str, C64)]) -> Result<Element> {
        let mut z = self.zero();
        for (label, v) in parts {
            let k = self
                .label_index(label)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown label {label:?} for {}", self.kind)))?;
            z[k] += *v;
        }
        Ok(z)
    }
}

fn matrix_model(shape: MatrixShape) -> (Vec<String>, Vec<f64>, Model) {
    (shape.labels(), shape.weights(), Model::Matrix(shape))
}

impl fmt::Display for TripleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.inv;
        write!(f, "{} dim={} r={} a={} b={} p={}", self.kind, i.dim, i.rank, i.a, i.b, i.genus)
    }
}

/// Max absolute coordinate difference, for tests and diagnostics.
pub fn max_abs_diff(a: &Element, b: &Element) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
