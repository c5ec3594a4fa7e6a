//! Symplectic forms, families of them, and subspaces isotropic for all of
//! them at once.

mod enumerate;

pub use enumerate::{
    budget_from_env, enumerate_isotropic_subspaces, enumerate_subspaces, gaussian_binomial,
    pivot_patterns, subspaces_with_pivots, DEFAULT_BUDGET,
};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::matrix::{dot, is_alternating, Matrix};

/// Attempts per greedy extension step before the sampler gives up.
pub const DEFAULT_RETRIES: usize = 64;

/// A nondegenerate alternating form, stored by its Gram matrix:
/// `<x, y> = x^T G y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticForm {
    gram: Matrix,
}

impl SymplecticForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !is_alternating(&gram) {
            return Err(Error::NotAlternating);
        }
        if gram.rank() != gram.rows() {
            return Err(Error::Singular);
        }
        Ok(Self { gram })
    }

    /// Block-diagonal form with `<e_{2i}, e_{2i+1}> = 1` (zero-based).
    pub fn standard(field: FieldSpec, n: usize) -> Result<Self> {
        check_even(n)?;
        Ok(Self {
            gram: crate::matrix::canonical_skew_form(field, n, n),
        })
    }

    /// Darboux form `[[0, I], [-I, 0]]`: `<e_i, e_{i + n/2}> = 1`, so the first
    /// and last `n/2` coordinate vectors each span a Lagrangian subspace.
    pub fn split(field: FieldSpec, n: usize) -> Result<Self> {
        check_even(n)?;
        let h = n / 2;
        let mut g = Matrix::zeros(field, n, n);
        for i in 0..h {
            g[(i, h + i)] = field.one();
            g[(h + i, i)] = -field.one();
        }
        Ok(Self { gram: g })
    }

    /// `P^T J P` for the standard `J` and a uniformly random invertible `P`.
    pub fn random<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Result<Self> {
        let j = Self::standard(field, n)?;
        let p = Matrix::random_invertible(field, n, rng);
        Ok(Self {
            gram: p.transpose().mul(&j.gram).mul(&p),
        })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> FieldSpec {
        self.gram.field()
    }

    pub fn pair(&self, x: &[FieldScalar], y: &[FieldScalar]) -> FieldScalar {
        dot(x, &self.gram.mul_vec(y), self.field())
    }

    pub fn scale(&self, c: &FieldScalar) -> Result<Self> {
        Self::new(self.gram.scale(c))
    }
}

fn check_even(n: usize) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        Err(Error::OddDimension(n))
    } else {
        Ok(())
    }
}

/// `m >= 1` linearly independent symplectic forms on one space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormSpace {
    forms: Vec<SymplecticForm>,
}

impl FormSpace {
    pub fn new(forms: Vec<SymplecticForm>) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::InvalidArgument("a form space needs at least one form".into()))?;
        let (n, field) = (first.dim(), first.field());
        for f in &forms {
            if f.field() != field {
                return Err(Error::MixedFields(field, f.field()));
            }
            if f.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "forms on spaces of dimension {n} and {}",
                    f.dim()
                )));
            }
        }
        let space = Self { forms };
        if space.gram_vectors().rank() < space.forms.len() {
            return Err(Error::DependentForms);
        }
        Ok(space)
    }

    pub fn single(form: SymplecticForm) -> Self {
        Self { forms: vec![form] }
    }

    /// `m` random independent forms. Fails when `m` exceeds the dimension
    /// `n(n-1)/2` of the space of alternating forms.
    pub fn random<R: Rng + ?Sized>(field: FieldSpec, n: usize, m: usize, rng: &mut R) -> Result<Self> {
        check_even(n)?;
        if m == 0 || m > n * (n - 1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "cannot choose {m} independent alternating forms on a {n}-dimensional space"
            )));
        }
        loop {
            let forms = (0..m)
                .map(|_| SymplecticForm::random(field, n, rng))
                .collect::<Result<Vec<_>>>()?;
            match Self::new(forms) {
                Ok(s) => return Ok(s),
                Err(Error::DependentForms) => continue,
                Err(e) => return Err(e),
            }
        }
    }

    /// Two random symplectic forms with independent Gram matrices. On a
    /// 2-dimensional space every pair is dependent, so `n = 2` is rejected.
    pub fn random_independent_pair<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Result<Self> {
        Self::random(field, n, 2, rng)
    }

    pub fn forms(&self) -> &[SymplecticForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.forms[0].dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.forms[0].field()
    }

    /// Each Gram matrix flattened to a row of length `n^2`.
    fn gram_vectors(&self) -> Matrix {
        let n = self.dim();
        let data = self
            .forms
            .iter()
            .flat_map(|f| f.gram.entries().iter().cloned())
            .collect();
        Matrix::from_flat(self.field(), self.forms.len(), n * n, data)
    }

    /// First pair of basis rows of `basis` that some form pairs nontrivially,
    /// as `(form, i, j, value)`.
    pub fn isotropy_violation(&self, basis: &Matrix) -> Result<Option<(usize, usize, usize, FieldScalar)>> {
        if basis.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace lives in dimension {}, forms in dimension {}",
                basis.cols(),
                self.dim()
            )));
        }
        if basis.field() != self.field() {
            return Err(Error::MixedFields(basis.field(), self.field()));
        }
        for (t, f) in self.forms.iter().enumerate() {
            let restricted = basis.mul(&f.gram).mul(&basis.transpose());
            for i in 0..basis.rows() {
                for j in i + 1..basis.rows() {
                    if !restricted[(i, j)].is_zero() {
                        return Ok(Some((t, i, j, restricted[(i, j)].clone())));
                    }
                }
            }
        }
        Ok(None)
    }
}

/// A subspace of `F^n`, held as the reduced row echelon form of a basis so
/// that equal subspaces compare and hash equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Canonicalizes the row span of `basis`. The rows must be independent.
    pub fn from_basis(basis: &Matrix) -> Result<Self> {
        let r = basis.rref();
        if r.rank < basis.rows() {
            return Err(Error::InvalidArgument(format!(
                "{} basis vectors span only a {}-dimensional subspace",
                basis.rows(),
                r.rank
            )));
        }
        Ok(Self { basis: r.matrix })
    }

    /// Wraps a matrix already known to be in reduced row echelon form.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Self {
        debug_assert_eq!(basis.rref().matrix, basis);
        Self { basis }
    }

    /// Span of the given coordinate vectors `e_i` (zero-based).
    pub fn coordinate(field: FieldSpec, n: usize, idx: &[usize]) -> Result<Self> {
        let mut b = Matrix::zeros(field, idx.len(), n);
        for (r, &i) in idx.iter().enumerate() {
            b[(r, i)] = field.one();
        }
        Self::from_basis(&b)
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_vectors()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("rows are nonzero"))
            .collect()
    }
}

/// `true` iff `v` is isotropic for every form in `forms`.
pub fn is_isotropic(v: &Subspace, forms: &FormSpace) -> Result<bool> {
    Ok(forms.isotropy_violation(v.basis())?.is_none())
}

/// Greedy isotropic sampling with the default retry budget.
pub fn random_isotropic_subspace<R: Rng + ?Sized>(
    k: usize,
    forms: &FormSpace,
    rng: &mut R,
) -> Result<Option<Subspace>> {
    random_isotropic_subspace_with_retries(k, forms, rng, DEFAULT_RETRIES)
}

/// Builds a `k`-dimensional simultaneously isotropic subspace one vector at a
/// time: each new vector is a random element of the common perp of the
/// current span that is not already in the span. Returns `None` when some step
/// fails `retries` times in a row, which can only happen for two or more
/// forms. The result is not uniformly distributed.
pub fn random_isotropic_subspace_with_retries<R: Rng + ?Sized>(
    k: usize,
    forms: &FormSpace,
    rng: &mut R,
    retries: usize,
) -> Result<Option<Subspace>> {
    let n = forms.dim();
    let field = forms.field();
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidArgument(format!(
            "isotropic dimension {k} must lie in 1..={}",
            n / 2
        )));
    }
    let mut span = Matrix::zeros(field, 0, n);
    for _ in 0..k {
        // Rows s_i G_t cut out the common perp of the current span.
        let mut constraints = Matrix::zeros(field, 0, n);
        for f in forms.forms() {
            constraints = constraints.vstack(&span.mul(f.gram()));
        }
        let perp = constraints.kernel_basis();
        if perp.rows() <= span.rows() {
            return Ok(None);
        }
        let mut extended = None;
        for _ in 0..retries {
            let coeffs: Vec<FieldScalar> = (0..perp.rows()).map(|_| field.random(rng)).collect();
            let v = perp.transpose().mul_vec(&coeffs);
            let candidate = span.vstack(&Matrix::from_flat(field, 1, n, v));
            if candidate.rank() == candidate.rows() {
                extended = Some(candidate);
                break;
            }
        }
        match extended {
            Some(s) => span = s,
            None => return Ok(None),
        }
    }
    Subspace::from_basis(&span).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn standard_forms() {
        let j2 = SymplecticForm::standard(q(), 2).unwrap();
        assert_eq!(j2.gram(), &Matrix::from_i64(q(), &[&[0, 1], &[-1, 0]]));
        let j4 = SymplecticForm::standard(q(), 4).unwrap();
        assert_eq!(
            j4.gram(),
            &Matrix::from_i64(q(), &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]])
        );
        assert!(SymplecticForm::new(j4.gram().clone()).is_ok());
        assert_eq!(SymplecticForm::standard(q(), 3), Err(Error::OddDimension(3)));
        assert!(SymplecticForm::new(Matrix::zeros(q(), 2, 2)).is_err());
    }

    #[test]
    fn random_forms_are_symplectic_and_reproducible() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = SymplecticForm::random(f3, 4, &mut rng::seeded(0)).unwrap();
        let b = SymplecticForm::random(f3, 4, &mut rng::seeded(0)).unwrap();
        assert_eq!(a, b);
        assert!(SymplecticForm::new(a.gram().clone()).is_ok());
    }

    #[test]
    fn pairs_need_dimension_four() {
        let f3 = FieldSpec::prime(3).unwrap();
        let mut r = rng::seeded(0);
        assert!(FormSpace::random_independent_pair(f3, 2, &mut r).is_err());
        let pair = FormSpace::random_independent_pair(f3, 4, &mut r).unwrap();
        assert_eq!(pair.len(), 2);
        assert!(FormSpace::new(pair.forms().to_vec()).is_ok());
    }

    #[test]
    fn dependent_forms_rejected() {
        let j = SymplecticForm::standard(q(), 4).unwrap();
        let j2 = j.scale(&q().from_i64(2)).unwrap();
        assert_eq!(FormSpace::new(vec![j, j2]), Err(Error::DependentForms));
    }

    #[test]
    fn isotropy_examples() {
        let q = q();
        let split = FormSpace::single(SymplecticForm::split(q, 4).unwrap());
        let std = FormSpace::single(SymplecticForm::standard(q, 4).unwrap());
        let line = Subspace::coordinate(q, 4, &[0]).unwrap();
        assert!(is_isotropic(&line, &split).unwrap());
        assert!(is_isotropic(&line, &std).unwrap());
        let plane = Subspace::coordinate(q, 4, &[0, 1]).unwrap();
        assert!(is_isotropic(&plane, &split).unwrap());
        // The block form pairs e_1 with e_2.
        assert!(!is_isotropic(&plane, &std).unwrap());
        let bad = Subspace::coordinate(q, 6, &[0]).unwrap();
        assert!(is_isotropic(&bad, &split).is_err());
    }

    #[test]
    fn isotropy_ignores_basis_choice() {
        let f5 = FieldSpec::prime(5).unwrap();
        let mut r = rng::seeded(1);
        let forms = FormSpace::single(SymplecticForm::random(f5, 6, &mut r).unwrap());
        for _ in 0..20 {
            let v = random_isotropic_subspace(2, &forms, &mut r).unwrap().unwrap();
            let g = Matrix::random_invertible(f5, 2, &mut r);
            let rebased = g.mul(v.basis());
            assert!(forms.isotropy_violation(&rebased).unwrap().is_none());
            assert_eq!(Subspace::from_basis(&rebased).unwrap(), v);
        }
    }

    #[test]
    fn sampler_always_succeeds_for_one_form() {
        let f5 = FieldSpec::prime(5).unwrap();
        let mut r = rng::seeded(2);
        let forms = FormSpace::single(SymplecticForm::standard(f5, 6).unwrap());
        for k in 1..=3 {
            for _ in 0..30 {
                let v = random_isotropic_subspace(k, &forms, &mut r).unwrap().unwrap();
                assert_eq!(v.dim(), k);
                assert!(is_isotropic(&v, &forms).unwrap());
            }
        }
        assert!(random_isotropic_subspace(4, &forms, &mut r).is_err());
    }

    #[test]
    fn sampler_output_is_isotropic_for_pairs() {
        let f3 = FieldSpec::prime(3).unwrap();
        let mut r = rng::seeded(3);
        for _ in 0..20 {
            let forms = FormSpace::random_independent_pair(f3, 6, &mut r).unwrap();
            if let Some(v) = random_isotropic_subspace(2, &forms, &mut r).unwrap() {
                assert!(is_isotropic(&v, &forms).unwrap());
            }
        }
    }
}
