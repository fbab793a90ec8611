//! Holomorphic isometric embeddings of the unit ball of `C^d` into a
//! bounded symmetric domain, with closed-form second-order jets.

pub mod io;
mod jet;
mod lie;
mod mok;

use std::sync::Arc;

pub use jet::{numeric_jacobian, numeric_jet2, numeric_jet2_of, MapJet};
pub use lie::{FtSpec, LieSpec};
pub use mok::MokSpec;

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt, Element, LinearMap, C64};
use crate::system::TripleSystem;

/// Tolerance for accepting `k` as a triple automorphism.
pub const AUTOMORPHISM_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub enum EmbeddingSpec {
    Mok(MokSpec),
    LieIrrational(LieSpec),
    FtFamily(FtSpec),
    /// `z -> k(inner(U z))`.
    Reparametrized(Box<Reparametrized>),
}

#[derive(Debug, Clone)]
pub struct Reparametrized {
    pub inner: EmbeddingSpec,
    pub k: LinearMap,
    pub u: LinearMap,
}

impl EmbeddingSpec {
    pub fn system(&self) -> &Arc<TripleSystem> {
        match self {
            EmbeddingSpec::Mok(s) => &s.system,
            EmbeddingSpec::LieIrrational(s) => &s.system,
            EmbeddingSpec::FtFamily(s) => &s.system,
            EmbeddingSpec::Reparametrized(r) => r.inner.system(),
        }
    }

    pub fn source_dim(&self) -> usize {
        match self {
            EmbeddingSpec::Mok(s) => s.lift.ncols(),
            EmbeddingSpec::LieIrrational(s) => s.basis.len() + 1,
            EmbeddingSpec::FtFamily(s) => s.basis.len() + 1,
            EmbeddingSpec::Reparametrized(r) => r.u.ncols(),
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            EmbeddingSpec::Mok(_) => "mok",
            EmbeddingSpec::LieIrrational(_) => "lie_irrational",
            EmbeddingSpec::FtFamily(_) => "ft_family",
            EmbeddingSpec::Reparametrized(_) => "reparametrized",
        }
    }

    /// `F(z)` for `z` in the open unit ball of `C^d`.
    pub fn evaluate(&self, z: &Element) -> Result<Element> {
        if z.len() != self.source_dim() {
            return Err(Error::DimensionMismatch { expected: self.source_dim(), got: z.len() });
        }
        let norm = z.norm();
        if !(norm < 1.0) {
            return Err(Error::OutsideBall { norm });
        }
        match self {
            EmbeddingSpec::Mok(s) => s.evaluate(z),
            EmbeddingSpec::LieIrrational(s) => s.evaluate(z),
            EmbeddingSpec::FtFamily(s) => s.evaluate(z),
            EmbeddingSpec::Reparametrized(r) => Ok(&r.k * r.inner.evaluate(&(&r.u * z))?),
        }
    }

    /// `k o F o U`.
    pub fn reparametrize(self, k: LinearMap, u: LinearMap) -> Result<EmbeddingSpec> {
        let sys = self.system().clone();
        let d = self.source_dim();
        if k.shape() != (sys.dim(), sys.dim()) || u.shape() != (d, d) {
            return Err(Error::InvalidArgument("reparametrization has the wrong shape".into()));
        }
        let residual = sys.automorphism_residual(&k);
        if !(residual <= AUTOMORPHISM_TOL) {
            return Err(Error::NotAutomorphism { residual });
        }
        let unitarity = (u.adjoint() * &u - LinearMap::identity(d, d)).norm();
        if !(unitarity <= 1e-10) {
            return Err(Error::InvalidArgument(format!("U is not unitary (residual {unitarity:.3e})")));
        }
        Ok(EmbeddingSpec::Reparametrized(Box::new(Reparametrized { inner: self, k, u })))
    }

    /// `F_tau(z) = conj(tau) F(tau z)`.
    pub fn rotate(self, tau: C64) -> Result<EmbeddingSpec> {
        if (tau.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("|tau| must be 1, got {}", tau.norm())));
        }
        let n = self.system().dim();
        let d = self.source_dim();
        self.reparametrize(LinearMap::identity(n, n) * tau.conj(), LinearMap::identity(d, d) * tau)
    }

    /// The minimal tripotent of a Mok embedding, transported through any
    /// reparametrization.
    pub fn mok_tripotent(&self) -> Option<Element> {
        match self {
            EmbeddingSpec::Mok(s) => Some(s.tripotent.element.clone()),
            EmbeddingSpec::Reparametrized(r) => r.inner.mok_tripotent().map(|c| &r.k * c),
            _ => None,
        }
    }

    /// Source direction whose second fundamental form is tested: the
    /// preimage of the tripotent for Mok maps, the `u` axis otherwise.
    pub fn distinguished_direction(&self) -> Element {
        match self {
            EmbeddingSpec::Reparametrized(r) => r.u.adjoint() * r.inner.distinguished_direction(),
            _ => {
                let mut e = Element::zeros(self.source_dim());
                e[0] = C64::new(1.0, 0.0);
                e
            }
        }
    }

    pub fn jet2(&self) -> MapJet {
        jet::closed_form(self)
    }
}

/// Orthonormal basis (for the inner product of `sys`) of the Peirce
/// 1-space of `c`, obtained from the grid in order.
pub(crate) fn peirce_one_basis(sys: &TripleSystem, p1: &LinearMap) -> Vec<Element> {
    let g = crate::grid::grid(sys);
    let projected: Vec<Element> = g.elements.iter().map(|e| sys.orthonormal_coords(&(p1 * e))).collect();
    gram_schmidt(&projected, 1e-8).iter().map(|y| sys.from_orthonormal_coords(y)).collect()
}

#[cfg(test)]
mod tests;
