//! Exact rational cohomology of configuration spaces of points on smooth
//! projective varieties, and of their relatives, from finite-dimensional
//! CDGA models.

pub mod algebra;
pub mod analysis;
pub mod cdga;
pub mod error;
pub mod linalg;
pub mod models;

pub use algebra::{BaseAlgebra, Context, Element, GeneratorSpec, Monomial};
pub use cdga::{CohomologyTable, Engine, ModelMeta, Presentation};
pub use error::{AlgebraError, CdgaError};
pub use linalg::{Rational, SparseMatrix};
