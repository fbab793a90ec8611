//! Matrix realizations: rectangular, symmetric and antisymmetric.
//!
//! Coordinates are row-major matrix entries (rect), upper-triangular
//! entries `i <= j` (sym) or strictly upper entries `i < j` (asym).

use nalgebra::DMatrix;

use crate::linalg::{LinearMap, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixShape {
    Rect { r: usize, s: usize },
    Sym { r: usize },
    Asym { n: usize },
}

impl MatrixShape {
    pub fn rows(self) -> usize {
        match self {
            MatrixShape::Rect { r, .. } | MatrixShape::Sym { r } => r,
            MatrixShape::Asym { n } => n,
        }
    }

    pub fn cols(self) -> usize {
        match self {
            MatrixShape::Rect { s, .. } => s,
            MatrixShape::Sym { r } => r,
            MatrixShape::Asym { n } => n,
        }
    }

    /// Matrix positions `(i, j)` of the coordinates, in order.
    pub fn positions(self) -> Vec<(usize, usize)> {
        match self {
            MatrixShape::Rect { r, s } => (0..r).flat_map(|i| (0..s).map(move |j| (i, j))).collect(),
            MatrixShape::Sym { r } => (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect(),
            MatrixShape::Asym { n } => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        }
    }

    pub fn labels(self) -> Vec<String> {
        let prefix = match self {
            MatrixShape::Rect { .. } => "E",
            MatrixShape::Sym { .. } => "S",
            MatrixShape::Asym { .. } => "F",
        };
        let wide = self.cols() > 9;
        self.positions()
            .into_iter()
            .map(|(i, j)| {
                if wide {
                    format!("{prefix}{}_{}", i + 1, j + 1)
                } else {
                    format!("{prefix}{}{}", i + 1, j + 1)
                }
            })
            .collect()
    }

    /// Weights of the coordinate inner product.
    pub fn weights(self) -> Vec<f64> {
        match self {
            MatrixShape::Sym { .. } => {
                self.positions().into_iter().map(|(i, j)| if i == j { 1.0 } else { 2.0 }).collect()
            }
            _ => vec![1.0; self.positions().len()],
        }
    }

    pub fn to_matrix(self, z: &[C64]) -> LinearMap {
        let mut m = DMatrix::zeros(self.rows(), self.cols());
        for (&(i, j), &x) in self.positions().iter().zip(z) {
            m[(i, j)] = x;
            match self {
                MatrixShape::Sym { .. } => m[(j, i)] = x,
                MatrixShape::Asym { .. } => m[(j, i)] = -x,
                MatrixShape::Rect { .. } => {}
            }
        }
        m
    }

    pub fn from_matrix(self, m: &LinearMap) -> Vec<C64> {
        self.positions().into_iter().map(|(i, j)| m[(i, j)]).collect()
    }

    /// `{u;v;w} = u v* w + w v* u`.
    pub fn triple(self, u: &[C64], v: &[C64], w: &[C64]) -> Vec<C64> {
        let (mu, mv, mw) = (self.to_matrix(u), self.to_matrix(v), self.to_matrix(w));
        let vs = mv.adjoint();
        let p = &mu * &vs * &mw + &mw * &vs * &mu;
        self.from_matrix(&p)
    }
}
