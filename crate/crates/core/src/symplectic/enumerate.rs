//! Exhaustive enumeration of subspaces of `F_q^n` by echelon pattern.

use super::{FormSpace, Subspace};
use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::matrix::Matrix;

/// Default cap on subspace visits for one enumeration.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Reads `MSGKIT_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> Result<u128> {
    match std::env::var("MSGKIT_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("MSGKIT_BUDGET={s:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`. Saturates at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    // Sum over pivot patterns of q^(free entries), done as the standard
    // recurrence [n, k] = [n-1, k-1] + q^k [n-1, k].
    let q = q as u128;
    let mut row = vec![1u128; 1];
    for m in 1..=n {
        let mut next = vec![0u128; (m + 1).min(k + 1)];
        for j in 0..next.len() {
            let take = if j > 0 { row[j - 1] } else { 0 };
            let skip = if j < row.len() && j < m {
                q.saturating_pow(j as u32).saturating_mul(row[j])
            } else {
                0
            };
            next[j] = take.saturating_add(skip);
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

/// All pivot-column sets of size `k` in `0..n`, in lexicographic order.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            if n - c < k - cur.len() {
                break;
            }
            cur.push(c);
            go(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Every subspace whose reduced echelon basis has the given pivot columns.
/// Free entries run over `F_q` as an odometer, last entry fastest.
pub fn subspaces_with_pivots(field: FieldSpec, n: usize, pivots: &[usize]) -> Result<PatternIter> {
    let q = field
        .modulus()
        .ok_or_else(|| Error::InvalidArgument("enumeration needs a prime field".into()))?;
    let mut free = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                free.push((i, c));
            }
        }
    }
    let mut template = Matrix::zeros(field, pivots.len(), n);
    for (i, &p) in pivots.iter().enumerate() {
        template[(i, p)] = field.one();
    }
    let elements: Vec<FieldScalar> = field.elements().expect("prime field").collect();
    Ok(PatternIter {
        template,
        free: free.clone(),
        digits: vec![0; free.len()],
        q,
        elements,
        done: false,
    })
}

/// Iterator over the subspaces sharing one pivot pattern.
pub struct PatternIter {
    template: Matrix,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
    q: u32,
    elements: Vec<FieldScalar>,
    done: bool,
}

impl Iterator for PatternIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut m = self.template.clone();
        for (&(i, c), &d) in self.free.iter().zip(&self.digits) {
            m[(i, c)] = self.elements[d as usize].clone();
        }
        // Advance the odometer.
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.q {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(Subspace::from_rref_unchecked(m))
    }
}

fn check_budget(n: usize, k: usize, field: FieldSpec, budget: u128) -> Result<u64> {
    let q = field
        .modulus()
        .ok_or_else(|| Error::InvalidArgument("enumeration needs a prime field".into()))?;
    let needed = gaussian_binomial(n, k, q as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(q as u64)
}

/// Every `k`-dimensional subspace of `F_q^n`, each exactly once, grouped by
/// pivot pattern in lexicographic order. Fails up front when the total count
/// exceeds `budget`.
pub fn enumerate_subspaces(
    field: FieldSpec,
    n: usize,
    k: usize,
    budget: u128,
) -> Result<impl Iterator<Item = Subspace>> {
    check_budget(n, k, field, budget)?;
    let iters = pivot_patterns(n, k)
        .into_iter()
        .map(|p| subspaces_with_pivots(field, n, &p))
        .collect::<Result<Vec<_>>>()?;
    Ok(iters.into_iter().flatten())
}

/// The simultaneously isotropic members of [`enumerate_subspaces`].
pub fn enumerate_isotropic_subspaces(
    k: usize,
    forms: &FormSpace,
    budget: u128,
) -> Result<impl Iterator<Item = Subspace> + '_> {
    let all = enumerate_subspaces(forms.field(), forms.dim(), k, budget)?;
    Ok(all.filter(move |v| {
        forms
            .isotropy_violation(v.basis())
            .expect("enumerated subspaces match the form dimension")
            .is_none()
    }))
}
