//! Model algebras: base spaces, `C_r(X)`, `A_r(X, c)`, `A_r(L^d)` and
//! the symmetric-group action on them.

mod build;
pub mod presets;
mod space;
mod symmetric;

pub use build::{
    build_a_r, build_a_r_l, build_c_r, diagonal_class, dual_basis, euler_class_twist, pull_back, pull_back_pair,
};
pub use space::{build_base, AmpleClass, ChernData, Space, SpaceSpec};
pub use symmetric::{check_group, symmetric_action, Permutation};
pub(crate) use symmetric::trace_on_slice;
