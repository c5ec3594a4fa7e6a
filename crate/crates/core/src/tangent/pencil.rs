//! Degenerate members of a pencil of forms at a point.
//!
//! For the pencil `l1 <,>_1 + l2 <,>_2` let `R(l) = l1 R_1 + l2 R_2`, where
//! `R_t[i][a] = <v_i, w_a>_t` is the restriction of `<,>_t` to `V x E/V`. A
//! member degenerates on a plane `V' <= V` iff the left kernel of `R(l)` has
//! dimension at least two, i.e. `rank R(l) <= k - 2`, i.e. every
//! `(k-1) x (k-1)` minor of `R(l)` vanishes at `l`. The minors are binary forms
//! of degree `k - 1`, so over the algebraic closure such an `l != 0` exists iff
//! their gcd is nonconstant or they all vanish identically.

use serde::Serialize;

use super::PointContext;
use crate::error::{Error, Result};
use crate::field::FieldScalar;
use crate::matrix::{binary_form_gcd, BinaryForm, Matrix, PolyMatrix};
use crate::symplectic::pivot_patterns;

/// `R_t`: the `k x (n-k)` matrix of pairings `<v_i, w_a>_t`.
pub fn restriction_matrix(ctx: &PointContext, t: usize) -> Matrix {
    let g = ctx.forms().forms()[t].gram();
    ctx.basis().mul(g).mul(&ctx.complement().transpose())
}

/// A base-field member `l1 <,>_1 + l2 <,>_2` of the pencil and the subspace
/// of `V` (rows in ambient coordinates) on which it pairs trivially with
/// `E/V`. The subspace has dimension at least two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerateWitness {
    pub lambda: (FieldScalar, FieldScalar),
    pub subspace: Matrix,
}

/// Proof that the pencil degenerates somewhere over the algebraic closure.
/// `certificate` is the gcd of the minors: the zero form when every member
/// degenerates, otherwise a nonconstant form whose roots are the degenerate
/// members. `witnesses` lists the members defined over the base field; when
/// every member degenerates only `(1, 0)` and `(0, 1)` are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneratePencil {
    pub certificate: BinaryForm,
    pub witnesses: Vec<DegenerateWitness>,
}

/// Runs the pencil analysis on the two forms of a two-form context.
pub fn find_degenerate_pencil(ctx: &PointContext) -> Result<Option<DegeneratePencil>> {
    if ctx.m() != 2 {
        return Err(Error::InvalidArgument(format!(
            "pencil analysis needs exactly two forms, got {}",
            ctx.m()
        )));
    }
    find_degenerate_subpencil(ctx, 0, 1)
}

/// Pencil analysis for forms `first` and `second` of a context with any
/// number of forms.
pub fn find_degenerate_subpencil(ctx: &PointContext, first: usize, second: usize) -> Result<Option<DegeneratePencil>> {
    let m = ctx.m();
    if first >= m || second >= m || first == second {
        return Err(Error::InvalidArgument(format!(
            "forms {first} and {second} do not name a pencil among {m} forms"
        )));
    }
    let k = ctx.k();
    if k < 2 {
        return Ok(None);
    }
    let field = ctx.field();
    let r1 = restriction_matrix(ctx, first);
    let r2 = restriction_matrix(ctx, second);
    let r = ctx.n() - k;

    let certificate = if r + 1 < k {
        // rank R(l) <= n - k <= k - 2 for every l.
        BinaryForm::zero(field)
    } else {
        let mut running: Option<BinaryForm> = None;
        'minors: for rows in pivot_patterns(k, k - 1) {
            for cols in pivot_patterns(r, k - 1) {
                let a = r1.select_rows(&rows).select_cols(&cols);
                let b = r2.select_rows(&rows).select_cols(&cols);
                // det(x R_1 + R_2) is the minor dehomogenized at l2 = 1.
                let minor = BinaryForm::homogenize(&PolyMatrix::linear(&a, &b).determinant(), k - 1);
                let g = match running.take() {
                    None => minor,
                    Some(prev) => binary_form_gcd(&[prev, minor])?,
                };
                let unit = !g.is_zero() && g.degree() == 0;
                running = Some(g);
                if unit {
                    break 'minors;
                }
            }
        }
        running.expect("at least one minor when n - k >= k - 1")
    };

    if !certificate.is_zero() && certificate.degree() == 0 {
        return Ok(None);
    }
    let lambdas = if certificate.is_zero() {
        vec![(field.one(), field.zero()), (field.zero(), field.one())]
    } else {
        certificate.roots_in_field()
    };
    let witnesses = lambdas
        .into_iter()
        .map(|(l1, l2)| {
            let pencil = r1.scale(&l1).add(&r2.scale(&l2));
            let coeffs = pencil.left_kernel_basis();
            debug_assert!(coeffs.rows() >= 2);
            DegenerateWitness {
                lambda: (l1, l2),
                subspace: coeffs.mul(ctx.basis()),
            }
        })
        .collect();
    Ok(Some(DegeneratePencil {
        certificate,
        witnesses,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::symplectic::{FormSpace, Subspace, SymplecticForm};

    #[test]
    fn lines_never_degenerate() {
        let f5 = FieldSpec::prime(5).unwrap();
        let mut rng = crate::rng::seeded(4);
        let forms = FormSpace::random_independent_pair(f5, 4, &mut rng).unwrap();
        let v = crate::symplectic::random_isotropic_subspace(1, &forms, &mut rng).unwrap().unwrap();
        let ctx = PointContext::new(v, forms).unwrap();
        assert_eq!(find_degenerate_pencil(&ctx).unwrap(), None);
    }

    #[test]
    fn requires_two_forms() {
        let q = FieldSpec::rational();
        let forms = FormSpace::single(SymplecticForm::split(q, 4).unwrap());
        let ctx = PointContext::new(Subspace::coordinate(q, 4, &[0, 1]).unwrap(), forms).unwrap();
        assert!(find_degenerate_pencil(&ctx).is_err());
        assert!(find_degenerate_subpencil(&ctx, 0, 0).is_err());
    }
}
