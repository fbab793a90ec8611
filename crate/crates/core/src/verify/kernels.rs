use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::linalg::{Element, C64, ONE};
use crate::system::TripleSystem;

/// Fischer-Fock kernels of the partitions `(1)` and `(1,1)` together with the
/// exact expansion coefficients `C_k = prod_{j<=k} (1 + (a/2)(j-1))`.
#[derive(Debug, Clone, Copy)]
pub struct Rank2Kernels<'a> {
    sys: &'a TripleSystem,
}

impl<'a> Rank2Kernels<'a> {
    pub fn new(sys: &'a TripleSystem) -> Result<Self> {
        if sys.rank() != 2 {
            return Err(Error::NotApplicable(format!("{} has rank {}, expected 2", sys.kind(), sys.rank())));
        }
        Ok(Rank2Kernels { sys })
    }

    /// `C_k` for multiplicity `a`, as an exact fraction.
    pub fn coefficient(a: usize, k: usize) -> Ratio<i64> {
        let a = Ratio::new(a as i64, 2);
        (1..=k).fold(Ratio::from_integer(1), |acc, j| acc * (Ratio::from_integer(1) + a * Ratio::from_integer(j as i64 - 1)))
    }

    pub fn e1(&self, z: &Element, w: &Element) -> C64 {
        self.sys.inner(z, w)
    }

    pub fn e11(&self, z: &Element, w: &Element) -> C64 {
        let zw = self.sys.inner(z, w);
        let qzw = self.sys.inner(&self.sys.quad(z, w), w);
        (zw * zw - qzw) / (2.0 + self.sys.invariants().a as f64)
    }

    /// `1 - E1 + C_2 E11`.
    pub fn quasi_det(&self, z: &Element, w: &Element) -> C64 {
        let c2 = Self::coefficient(self.sys.invariants().a, 2);
        let c2 = *c2.numer() as f64 / *c2.denom() as f64;
        ONE - self.e1(z, w) + self.e11(z, w) * c2
    }
}
