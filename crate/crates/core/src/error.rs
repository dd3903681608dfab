use thiserror::Error;

/// A violated law of a [`BaseAlgebra`](crate::algebra::BaseAlgebra), or a
/// malformed description of one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unit law violated: {0}")]
    UnitLaw(String),
    #[error("fundamental class: {0}")]
    Fundamental(String),
    #[error("degree additivity violated: {left} * {right} has a term {term} of the wrong degree")]
    DegreeAdditivity { left: String, right: String, term: String },
    #[error("weight additivity violated: {left} * {right} has a term {term} of the wrong weight")]
    WeightAdditivity { left: String, right: String, term: String },
    #[error("graded commutativity violated for the pair ({left}, {right})")]
    GradedCommutativity { left: String, right: String },
    #[error("associativity violated for the triple ({a}, {b}, {c})")]
    Associativity { a: String, b: String, c: String },
    #[error("Poincaré pairing degenerate on the degree block ({degree}, {complement})")]
    DegeneratePairing { degree: u32, complement: u32 },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("malformed algebra: {0}")]
    Malformed(String),
}

/// Errors raised while building or using a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdgaError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element does not belong to this context: {0}")]
    ContextMismatch(String),
    #[error("generator {label:?} must have positive degree")]
    ZeroDegreeGenerator { label: String },
    #[error("duplicate generator label {0:?}")]
    DuplicateGenerator(String),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("weight of {0} is below its degree, so weight slices are unbounded in degree")]
    WeightBelowDegree(String),
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
}
