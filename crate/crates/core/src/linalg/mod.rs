//! Sparse exact linear algebra over the rationals.

mod echelon;
pub mod modp;
mod rational;
mod sparse;

pub use echelon::{kernel_basis, rank, rank_with_modular_prescreen, rref, Echelon, Rref};
pub use rational::{ParseRationalError, Rational};
pub use sparse::{add_rows, SparseMatrix, SparseRow};
