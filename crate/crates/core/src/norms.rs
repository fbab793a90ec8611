use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::linalg::{det, pfaffian, Element, C64};
use crate::models::{albert, spin};
use crate::system::TripleSystem;

impl TripleSystem {
    /// Jordan algebra determinant of a tube-type triple, normalized to 1 at
    /// the sum of the canonical frame.
    pub fn generic_norm(&self, z: &Element) -> Result<C64> {
        self.check(z)?;
        match self.kind() {
            Kind::Rect { r, s } if r == s => Ok(det(&self.matrix_shape().unwrap().to_matrix(z.as_slice()))),
            Kind::Sym { .. } => Ok(det(&self.matrix_shape().unwrap().to_matrix(z.as_slice()))),
            Kind::Asym { n } if n % 2 == 0 => Ok(pfaffian(&self.matrix_shape().unwrap().to_matrix(z.as_slice()))),
            Kind::Spin { .. } => Ok(spin::norm(z.as_slice())),
            Kind::Albert => Ok(albert::from_grid(z.as_slice()).cubic_norm()),
            k => Err(Error::NotTubeType(k.to_string())),
        }
    }
}
