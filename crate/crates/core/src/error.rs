use thiserror::Error;

use crate::field::FieldSpec;

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different fields ({0} vs {1})")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("symplectic forms need even dimension, got {0}")]
    OddDimension(usize),
    #[error("forms are linearly dependent")]
    DependentForms,
    #[error("subspace is not isotropic: form {form} pairs basis vectors {i} and {j} to {value}")]
    NotIsotropic {
        form: usize,
        i: usize,
        j: usize,
        value: String,
    },
    #[error("enumeration needs {needed} subspace visits, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
