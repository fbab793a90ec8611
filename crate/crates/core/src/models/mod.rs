//! Concrete realizations of the triple product.

pub mod albert;
pub mod bicayley;
pub mod matrix;
pub mod octonion;
pub mod sparse;
pub mod spin;

pub use octonion::Octonion;
