//! Graded-commutative algebras: finite-dimensional bases, free extensions,
//! monomial enumeration and Koszul-signed multiplication.

mod base;
mod context;
pub mod file;

pub use base::{tensor_index, tensor_tuple, BaseAlgebra, BaseVector, BasisElement};
pub use context::{AlgebraMap, Context, Element, GeneratorSpec, Monomial};
