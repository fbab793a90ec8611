//! Hermitian Jordan triple systems, their bounded symmetric domains, and
//! holomorphic isometric embeddings of the unit ball into them.
//!
//! ```
//! use jtriple::TripleSystem;
//!
//! let sys = TripleSystem::parse("spin:4").unwrap();
//! let z = sys.sample_domain(7, 0, 0.5).unwrap();
//! let w = sys.sample_domain(7, 1, 0.5).unwrap();
//! let lhs = sys.bergman(&z, &w).determinant();
//! let rhs = sys.quasi_det(&z, &w).powi(sys.genus() as i32);
//! assert!((lhs - rhs).norm() < 1e-10);
//! ```

pub mod embedding;
pub mod error;
pub mod grid;
pub mod kgroup;
pub mod kind;
pub mod linalg;
pub mod models;
pub mod norms;
pub mod ops;
pub mod sampling;
pub mod system;
pub mod verify;

pub use error::{Error, Result};
pub use kind::{Invariants, Kind};
pub use linalg::{Element, LinearMap, C64};
pub use ops::{Tripotent, TripotentCheck};
pub use system::TripleSystem;
