//! Generating functions, invariants and stable-range bounds.

mod equivariant;
mod generating;
mod series;

pub use equivariant::{
    action_matrix, character_euler, invariant_cohomology, partitions, sign_isotypic_cohomology, ClassFunction,
};
pub use generating::{
    cohomology_euler, nonvanishing_degree_bound, p_r_closed_form, poincare_series_u, r1_stable_series, rho_bracket,
    rho_series, stable_range_bound, weightwise_euler,
};
pub use series::{BigradedSeries, Variable};
