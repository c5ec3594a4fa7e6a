//! Eigenspaces of `M_2 M_1^{-1}` for a pair of nonsingular alternating
//! matrices.
//!
//! For an eigenvalue `d`, `d I - M_2 M_1^{-1} = (d M_1 - M_2) M_1^{-1}`, and
//! `d M_1 - M_2` is alternating, so its rank is even and, the size being
//! even, so is every eigenspace dimension.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldScalar;
use crate::matrix::{char_poly, is_alternating, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    /// Roots of the characteristic polynomial lying in the base field.
    pub eigenvalues_in_field: Vec<FieldScalar>,
    /// `nullity(d I - M_2 M_1^{-1})` for each eigenvalue, in the same order.
    pub nullities: Vec<usize>,
    pub all_even: bool,
}

pub fn check_even_eigenspaces(m1: &Matrix, m2: &Matrix) -> Result<EigenReport> {
    for m in [m1, m2] {
        if !is_alternating(m) {
            return Err(Error::NotAlternating);
        }
    }
    if m1.rows() != m2.rows() || m1.field() != m2.field() {
        return Err(Error::DimensionMismatch(format!(
            "matrices of size {} and {}",
            m1.rows(),
            m2.rows()
        )));
    }
    let n = m1.rows();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    let operator = m2.mul(&m1.inverse()?);
    m2.inverse()?;
    let field = m1.field();
    let eigenvalues_in_field = char_poly(&operator)?.roots_in_field();
    let nullities: Vec<usize> = eigenvalues_in_field
        .iter()
        .map(|d| n - Matrix::identity(field, n).scale(d).sub(&operator).rank())
        .collect();
    let all_even = nullities.iter().all(|k| k % 2 == 0);
    Ok(EigenReport {
        eigenvalues_in_field,
        nullities,
        all_even,
    })
}
