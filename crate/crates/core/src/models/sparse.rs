use crate::linalg::{LinearMap, C64, ZERO};

/// Triple product given by structure constants in an orthonormal basis:
/// `{u;v;w}_l = sum coef * u_i * conj(v_j) * w_k` over stored terms
/// `(i, j, k, l, coef)`.
#[derive(Debug, Clone)]
pub struct SparseTriple {
    pub dim: usize,
    terms: Vec<(u16, u16, u16, u16, C64)>,
}

impl SparseTriple {
    pub fn new(dim: usize, terms: Vec<(usize, usize, usize, usize, C64)>) -> Self {
        let terms = terms
            .into_iter()
            .map(|(i, j, k, l, v)| (i as u16, j as u16, k as u16, l as u16, v))
            .collect();
        SparseTriple { dim, terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, usize, usize, C64)> + '_ {
        self.terms.iter().map(|&(i, j, k, l, v)| (i as usize, j as usize, k as usize, l as usize, v))
    }

    pub fn triple(&self, u: &[C64], v: &[C64], w: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for &(i, j, k, l, coef) in &self.terms {
            let (i, j, k) = (i as usize, j as usize, k as usize);
            if u[i] == ZERO || v[j] == ZERO || w[k] == ZERO {
                continue;
            }
            out[l as usize] += coef * u[i] * v[j].conj() * w[k];
        }
        out
    }

    /// Matrix of `w -> {u;v;w}`.
    pub fn box_matrix(&self, u: &[C64], v: &[C64]) -> LinearMap {
        let mut m = LinearMap::zeros(self.dim, self.dim);
        for &(i, j, k, l, coef) in &self.terms {
            let (i, j) = (i as usize, j as usize);
            if u[i] == ZERO || v[j] == ZERO {
                continue;
            }
            m[(l as usize, k as usize)] += coef * u[i] * v[j].conj();
        }
        m
    }

    /// Matrix `M` with `Q_u x = M conj(x)`.
    pub fn quad_matrix(&self, u: &[C64]) -> LinearMap {
        let mut m = LinearMap::zeros(self.dim, self.dim);
        for &(i, j, k, l, coef) in &self.terms {
            let (i, k) = (i as usize, k as usize);
            if u[i] == ZERO || u[k] == ZERO {
                continue;
            }
            m[(l as usize, j as usize)] += coef * u[i] * u[k] * 0.5;
        }
        m
    }

    /// Restrict to the coordinate subset `keep` (in the given order).
    /// Returns `None` if the subset is not closed under the product.
    pub fn restrict(&self, keep: &[usize]) -> Option<SparseTriple> {
        let mut pos = vec![usize::MAX; self.dim];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let mut terms = Vec::new();
        for (i, j, k, l, v) in self.terms() {
            if pos[i] == usize::MAX || pos[j] == usize::MAX || pos[k] == usize::MAX {
                continue;
            }
            if pos[l] == usize::MAX {
                return None;
            }
            terms.push((pos[i], pos[j], pos[k], pos[l], v));
        }
        Some(SparseTriple::new(keep.len(), terms))
    }

    /// Re-express in the basis `g_a = sign_a * e_a`.
    pub fn with_signs(&self, signs: &[f64]) -> SparseTriple {
        let terms = self
            .terms()
            .map(|(i, j, k, l, v)| (i, j, k, l, v * (signs[i] * signs[j] * signs[k] * signs[l])))
            .collect();
        SparseTriple::new(self.dim, terms)
    }
}
