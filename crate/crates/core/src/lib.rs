//! Exact linear algebra and Hopf algebra machinery for crystal duality:
//! filtrations, associated graded objects, Rees deformations, the two
//! Drinfeld functors and their semiclassical limits.

pub mod error;
pub mod exactlin;
pub mod filtration;
pub mod graded;
pub mod groups;
pub mod hopf;
pub mod pairing;
pub mod rees;
pub mod report;

pub use error::{Error, Result};
pub use exactlin::{FieldSpec, LinearMap, Scalar, SparseVector, Subspace};
pub use hopf::{HopfAlgebraData, TensorElement, ValidationReport};
