use std::sync::Arc;

use super::peirce_one_basis;
use crate::error::{Error, Result};
use crate::linalg::{Element, LinearMap, C64, ONE};
use crate::ops::Tripotent;
use crate::system::TripleSystem;

/// `G_c(uc + v) = uc + v + Q_v c / (1 + u)` precomposed with an isometry
/// `L: C^d -> Z^2 + Z^1` of the Peirce spaces of a minimal tripotent `c`.
#[derive(Debug, Clone)]
pub struct MokSpec {
    pub system: Arc<TripleSystem>,
    pub tripotent: Tripotent,
    pub label: Option<String>,
    pub lift: LinearMap,
}

impl MokSpec {
    /// Mok embedding at the first element of the canonical frame.
    pub fn canonical(system: Arc<TripleSystem>) -> Result<Self> {
        let (label, c) = crate::grid::canonical_minimal(&system);
        Self::at_tripotent(system, c, Some(label))
    }

    /// Mok embedding at `c` with the standard lift: first coordinate along
    /// `c`, the rest along the grid-ordered basis of `Z^1`.
    pub fn at_tripotent(system: Arc<TripleSystem>, c: Element, label: Option<String>) -> Result<Self> {
        let t = system.tripotent(&c)?;
        let basis = peirce_one_basis(&system, &t.p1);
        let mut cols = vec![c.clone()];
        cols.extend(basis);
        let lift = LinearMap::from_columns(&cols);
        Self::new(system, c, label, lift)
    }

    pub fn new(system: Arc<TripleSystem>, c: Element, label: Option<String>, lift: LinearMap) -> Result<Self> {
        let tripotent = system.tripotent(&c)?;
        if tripotent.rank != 1 {
            return Err(Error::InvalidArgument(format!("tripotent has rank {}, need 1", tripotent.rank)));
        }
        let d = system.genus() - 1;
        if lift.shape() != (system.dim(), d) {
            return Err(Error::InvalidArgument(format!(
                "lift must be {}x{d}, got {}x{}",
                system.dim(),
                lift.nrows(),
                lift.ncols()
            )));
        }
        let gram = lift.adjoint() * LinearMap::from_diagonal(&Element::from_iterator(
            system.dim(),
            system.weights().iter().map(|&w| C64::new(w, 0.0)),
        )) * &lift;
        let iso = (gram - LinearMap::identity(d, d)).norm();
        if iso > 1e-10 {
            return Err(Error::InvalidArgument(format!("lift is not isometric (residual {iso:.3e})")));
        }
        let leak = (&tripotent.p0 * &lift).norm();
        if leak > 1e-10 {
            return Err(Error::InvalidArgument(format!("lift leaves Z^2 + Z^1 (residual {leak:.3e})")));
        }
        Ok(MokSpec { system, tripotent, label, lift })
    }

    /// Skips validation; for probing how checks react to broken input.
    pub fn new_unchecked(system: Arc<TripleSystem>, tripotent: Tripotent, lift: LinearMap) -> Self {
        MokSpec { system, tripotent, label: None, lift }
    }

    fn split(&self, z: &Element) -> (C64, Element) {
        let c = &self.tripotent.element;
        let x = &self.lift * z;
        let u = self.system.inner(&x, c);
        let v = x - c * u;
        (u, v)
    }

    pub fn evaluate(&self, z: &Element) -> Result<Element> {
        let c = &self.tripotent.element;
        let (u, v) = self.split(z);
        let q = self.system.quad(&v, c);
        Ok(c * u + &v + q / (ONE + u))
    }

    /// Same map through the quasi-inverse `((uc + v)/(1 + u))^c`.
    pub fn evaluate_via_quasi_inverse(&self, z: &Element) -> Result<Element> {
        let c = &self.tripotent.element;
        let (u, v) = self.split(z);
        let x = (c * u + v) / (ONE + u);
        self.system.quasi_inverse(&x, c)
    }
}
