//! Presented CDGAs: `(B ⊗ Sym_gr(V)) / I` with a differential.

mod cohomology;
mod engine;
mod presentation;

pub use cohomology::{CohomologyTable, VerifyFailure, VerifyReport};
pub use engine::{Engine, IdealSlice, SliceBasis, SliceKey};
pub use presentation::{ModelLayout, ModelMeta, Presentation};
