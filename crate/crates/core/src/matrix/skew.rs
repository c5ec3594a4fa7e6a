//! Alternating matrices and their congruence normal form.

use super::Matrix;
use crate::error::{Error, Result};
use crate::field::FieldScalar;

/// `true` iff `m` is square, `m^T = -m`, and the diagonal vanishes.
pub fn is_alternating(m: &Matrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    (0..n).all(|i| {
        m[(i, i)].is_zero() && (i + 1..n).all(|j| (&m[(i, j)] + &m[(j, i)]).is_zero())
    })
}

/// Block-diagonal matrix with `rank / 2` copies of `[[0,1],[-1,0]]` followed
/// by zeros.
pub fn canonical_skew_form(field: crate::field::FieldSpec, n: usize, rank: usize) -> Matrix {
    assert!(rank.is_multiple_of(2) && rank <= n);
    let mut m = Matrix::zeros(field, n, n);
    for b in 0..rank / 2 {
        m[(2 * b, 2 * b + 1)] = field.one();
        m[(2 * b + 1, 2 * b)] = -field.one();
    }
    m
}

/// A congruence `P^T M P` bringing an alternating matrix to canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewNormalForm {
    pub transform: Matrix,
    pub rank: usize,
}

/// Finds an invertible `P` with `P^T M P` equal to
/// [`canonical_skew_form`]`(n, rank)`.
///
/// Symplectic Gram-Schmidt on the standard basis: take the first pair of
/// working vectors `(u, v)` with `u^T M v != 0`, rescale `v` so the pairing is
/// one, project every other working vector off the hyperbolic plane they
/// span, and repeat. Vectors left once no pair pairs nontrivially span the
/// radical.
pub fn skew_normal_form(m: &Matrix) -> Result<SkewNormalForm> {
    if !is_alternating(m) {
        return Err(Error::NotAlternating);
    }
    let field = m.field();
    let n = m.rows();
    let pair = |x: &[FieldScalar], y: &[FieldScalar]| -> FieldScalar {
        super::dot(x, &m.mul_vec(y), field)
    };

    let mut work: Vec<Vec<FieldScalar>> = Matrix::identity(field, n).to_rows();
    let mut chosen: Vec<Vec<FieldScalar>> = Vec::with_capacity(n);
    loop {
        let mut found = None;
        'search: for a in 0..work.len() {
            let mv = m.mul_vec(&work[a]);
            for (b, wb) in work.iter().enumerate().skip(a + 1) {
                let c = super::dot(wb, &mv, field);
                if !c.is_zero() {
                    // c = <w_b, w_a>, so <w_a, w_b> = -c.
                    found = Some((a, b, -c));
                    break 'search;
                }
            }
        }
        let Some((a, b, c)) = found else { break };
        let q_vec = work.remove(b);
        let p_vec = work.remove(a);
        let inv = c.inv()?;
        let q_vec: Vec<FieldScalar> = q_vec.iter().map(|x| x * &inv).collect();
        for w in work.iter_mut() {
            // w' = w + <q,w> p - <p,w> q keeps w' orthogonal to p and q.
            let alpha = pair(&q_vec, w);
            let beta = pair(&p_vec, w);
            for (i, x) in w.iter_mut().enumerate() {
                *x = &*x + &(&(&alpha * &p_vec[i]) - &(&beta * &q_vec[i]));
            }
        }
        chosen.push(p_vec);
        chosen.push(q_vec);
    }
    let rank = chosen.len();
    chosen.extend(work);
    let transform = Matrix::from_rows(field, chosen)?.transpose();
    Ok(SkewNormalForm { transform, rank })
}
