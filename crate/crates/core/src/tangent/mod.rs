//! Tangent spaces of multiply symplectic Grassmannians.
//!
//! Fix a point `[V]` with basis `v_1..v_k` and complement vectors
//! `w_1..w_{n-k}` representing a basis of `E/V`. A tangent vector is a map
//! `f: V -> E/V`, written as the `k x (n-k)` grid `F[i][a]` with
//! `f(v_i) = sum_a F[i][a] w_a`. It is tangent to the isotropic locus of the
//! form `<,>_t` iff for every `i < j`
//!
//! ```text
//! <v_i, f(v_j)>_t - <v_j, f(v_i)>_t = 0.
//! ```
//!
//! These `m * C(k, 2)` linear conditions make up the [`ConstraintSystem`]. Its
//! left kernel is the kernel of the map `Phi` from `Lambda^2 V (x) Omega`,
//! which is nonzero exactly when the tangent space is larger than expected.

mod eigen;
mod pencil;
mod verify;

pub use eigen::{check_even_eigenspaces, EigenReport};
pub use pencil::{
    find_degenerate_pencil, find_degenerate_subpencil, restriction_matrix, DegeneratePencil,
    DegenerateWitness,
};
pub use verify::{
    verify_thm_equivalence, FormSource, Mismatch, PairSummary, Scope, VerifyConfig, VerifyReport,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};
use crate::matrix::Matrix;
use crate::symplectic::{FormSpace, Subspace};

/// `k(n-k) - m * C(k, 2)`, returned as-is even when negative.
pub fn msg_expected_dim(n: usize, k: usize, m: usize) -> i64 {
    let (n, k, m) = (n as i64, k as i64, m as i64);
    k * (n - k) - m * k * (k - 1) / 2
}

/// A point of the isotropic locus together with the frame used to write
/// tangent vectors in coordinates.
#[derive(Clone, Debug)]
pub struct PointContext {
    subspace: Subspace,
    basis: Matrix,
    complement: Matrix,
    forms: FormSpace,
}

impl PointContext {
    /// Uses the reduced echelon basis of `subspace` and, as complement, the
    /// coordinate vectors at its non-pivot columns.
    pub fn new(subspace: Subspace, forms: FormSpace) -> Result<Self> {
        let field = subspace.field();
        let n = subspace.ambient_dim();
        let pivots = subspace.pivots();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let complement = Matrix::identity(field, n).select_rows(&free);
        let basis = subspace.basis().clone();
        Self::with_frame(basis, complement, forms)
    }

    /// Uses an arbitrary basis of the subspace and an arbitrary complement.
    /// Stacking `basis` over `complement` must give an invertible matrix.
    pub fn with_frame(basis: Matrix, complement: Matrix, forms: FormSpace) -> Result<Self> {
        let n = forms.dim();
        if basis.cols() != n || complement.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "frame vectors must have length {n}"
            )));
        }
        if basis.rows() + complement.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} basis and {} complement vectors do not make {n}",
                basis.rows(),
                complement.rows()
            )));
        }
        if basis.field() != forms.field() || complement.field() != forms.field() {
            return Err(Error::MixedFields(basis.field(), forms.field()));
        }
        let subspace = Subspace::from_basis(&basis)?;
        if let Some((form, i, j, value)) = forms.isotropy_violation(&basis)? {
            return Err(Error::NotIsotropic {
                form,
                i,
                j,
                value: value.to_string(),
            });
        }
        if basis.vstack(&complement).rank() != n {
            return Err(Error::InvalidArgument(
                "complement does not complete the basis to a basis of the ambient space".into(),
            ));
        }
        Ok(Self {
            subspace,
            basis,
            complement,
            forms,
        })
    }

    /// A uniformly random basis of `subspace` and a random complement.
    pub fn random_frame<R: rand::Rng + ?Sized>(subspace: Subspace, forms: FormSpace, rng: &mut R) -> Result<Self> {
        let (field, n, k) = (subspace.field(), subspace.ambient_dim(), subspace.dim());
        let basis = Matrix::random_invertible(field, k, rng).mul(subspace.basis());
        let complement = loop {
            let c = Matrix::random(field, n - k, n, rng);
            if basis.vstack(&c).rank() == n {
                break c;
            }
        };
        Self::with_frame(basis, complement, forms)
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn complement(&self) -> &Matrix {
        &self.complement
    }

    pub fn forms(&self) -> &FormSpace {
        &self.forms
    }

    pub fn field(&self) -> FieldSpec {
        self.forms.field()
    }

    pub fn n(&self) -> usize {
        self.forms.dim()
    }

    pub fn k(&self) -> usize {
        self.basis.rows()
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    /// Index pairs `(i, j)` with `i < j < k` in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect()
    }
}

/// The `m * C(k, 2)` by `k(n-k)` matrix of tangency conditions. Row
/// `t * C(k,2) + p` holds condition `(t, i, j)` for the `p`-th pair `i < j`;
/// column `i * (n-k) + a` holds `F[i][a]`.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub matrix: Matrix,
    pub pairs: Vec<(usize, usize)>,
    pub m: usize,
}

pub fn build_constraints(ctx: &PointContext) -> ConstraintSystem {
    let (k, n, m) = (ctx.k(), ctx.n(), ctx.m());
    let r = n - k;
    let pairs = ctx.pairs();
    let mut a = Matrix::zeros(ctx.field(), m * pairs.len(), k * r);
    for t in 0..m {
        let pairing = restriction_matrix(ctx, t);
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let row = t * pairs.len() + p;
            for col in 0..r {
                a[(row, j * r + col)] = &a[(row, j * r + col)] + &pairing[(i, col)];
                a[(row, i * r + col)] = &a[(row, i * r + col)] - &pairing[(j, col)];
            }
        }
    }
    ConstraintSystem { matrix: a, pairs, m }
}

/// An element of `Lambda^2 V (x) Omega`: for each pair `i < j`, the
/// coefficients of `(v_i ^ v_j) (x) <,>_t` for `t = 0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiKernelElement {
    pub pairs: Vec<PairCoefficients>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCoefficients {
    pub i: usize,
    pub j: usize,
    pub forms: Vec<FieldScalar>,
}

impl PhiKernelElement {
    fn from_row_vector(system: &ConstraintSystem, v: &[FieldScalar]) -> Self {
        let np = system.pairs.len();
        let pairs = system
            .pairs
            .iter()
            .enumerate()
            .map(|(p, &(i, j))| PairCoefficients {
                i,
                j,
                forms: (0..system.m).map(|t| v[t * np + p].clone()).collect(),
            })
            .collect();
        Self { pairs }
    }

    /// Coordinates in the row order of the [`ConstraintSystem`].
    pub fn to_row_vector(&self, m: usize) -> Vec<FieldScalar> {
        let np = self.pairs.len();
        let mut out = Vec::with_capacity(np * m);
        for t in 0..m {
            for pc in &self.pairs {
                out.push(pc.forms[t].clone());
            }
        }
        debug_assert_eq!(out.len(), np * m);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.iter().all(|p| p.forms.iter().all(FieldScalar::is_zero))
    }

    /// Coefficient of `(v_i ^ v_j) (x) <,>_t` for `i < j`.
    pub fn coefficient(&self, i: usize, j: usize, t: usize) -> Option<&FieldScalar> {
        self.pairs
            .iter()
            .find(|p| p.i == i && p.j == j)
            .map(|p| &p.forms[t])
    }
}

/// Everything computed at one point.
#[derive(Clone, Debug, Serialize)]
pub struct TangentReport {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub expected_dim: i64,
    pub tangent_dim: usize,
    pub phi_rank: usize,
    pub phi_kernel: Vec<PhiKernelElement>,
    /// Whether some nonzero member of the pencil degenerates on a plane in
    /// `V` (over the algebraic closure). Only computed for two forms.
    pub pencil_degenerate: Option<bool>,
    pub pencil_certificate: Option<crate::matrix::BinaryForm>,
    pub degenerate_witnesses: Vec<DegenerateWitness>,
}

impl TangentReport {
    pub fn excess(&self) -> i64 {
        self.tangent_dim as i64 - self.expected_dim
    }

    pub fn has_expected_dim(&self) -> bool {
        self.excess() == 0
    }
}

/// Computes the tangent dimension, the kernel of `Phi`, and for two forms the
/// pencil degeneracy analysis.
pub fn tangent_dim(ctx: &PointContext) -> Result<TangentReport> {
    tangent_dim_with_system(ctx, build_constraints(ctx))
}

pub(crate) fn tangent_dim_with_system(ctx: &PointContext, system: ConstraintSystem) -> Result<TangentReport> {
    let (k, n, m) = (ctx.k(), ctx.n(), ctx.m());
    let phi_rank = system.matrix.rank();
    let tangent_dim = k * (n - k) - phi_rank;
    let expected_dim = msg_expected_dim(n, k, m);
    assert!(
        tangent_dim as i64 >= expected_dim,
        "tangent dimension {tangent_dim} below the lower bound {expected_dim}"
    );
    let phi_kernel: Vec<PhiKernelElement> = system
        .matrix
        .left_kernel_basis()
        .row_vectors()
        .map(|v| PhiKernelElement::from_row_vector(&system, v))
        .collect();
    debug_assert_eq!(phi_kernel.len(), system.matrix.rows() - phi_rank);

    let (pencil_degenerate, pencil_certificate, degenerate_witnesses) = if m == 2 {
        match find_degenerate_pencil(ctx)? {
            Some(d) => (Some(true), Some(d.certificate), d.witnesses),
            None => (Some(false), None, Vec::new()),
        }
    } else {
        (None, None, Vec::new())
    };
    Ok(TangentReport {
        k,
        n,
        m,
        expected_dim,
        tangent_dim,
        phi_rank,
        phi_kernel,
        pencil_degenerate,
        pencil_certificate,
        degenerate_witnesses,
    })
}

/// `j_V` on an element of `V (x) Omega` given as a `k x m` coordinate grid
/// (`elem[(i, t)]` multiplies `v_i (x) <,>_t`). Returns the induced functional
/// on `E/V` in the dual of the complement basis.
pub fn j_v(ctx: &PointContext, elem: &Matrix) -> Result<Vec<FieldScalar>> {
    if elem.rows() != ctx.k() || elem.cols() != ctx.m() {
        return Err(Error::DimensionMismatch(format!(
            "V (x) Omega element must be {}x{}, got {}x{}",
            ctx.k(),
            ctx.m(),
            elem.rows(),
            elem.cols()
        )));
    }
    let field = ctx.field();
    let r = ctx.n() - ctx.k();
    let mut out = vec![field.zero(); r];
    for t in 0..ctx.m() {
        let pairing = restriction_matrix(ctx, t);
        for i in 0..ctx.k() {
            let c = &elem[(i, t)];
            if c.is_zero() {
                continue;
            }
            for (a, o) in out.iter_mut().enumerate() {
                *o = &*o + &(c * &pairing[(i, a)]);
            }
        }
    }
    Ok(out)
}

/// The generators `w_1..w_k` of the subspace `W` attached to a kernel element,
/// each as a `k x m` grid, and whether `j_V` kills all of them.
#[derive(Clone, Debug)]
pub struct DecodedKernel {
    pub generators: Vec<Matrix>,
    pub verified: bool,
}

/// Builds `w_j = sum_{i<j} -v_i (x) <,>_{ij} + sum_{i>j} v_i (x) <,>_{ji}`
/// with `<,>_{ij} = sum_t a[i][j][t] <,>_t`, then applies [`j_v`] to each.
pub fn decode_kernel_element(ctx: &PointContext, elem: &PhiKernelElement) -> Result<DecodedKernel> {
    if elem.is_zero() {
        return Err(Error::InvalidArgument("kernel element is zero".into()));
    }
    let (k, m) = (ctx.k(), ctx.m());
    if elem.pairs.len() != k * k.saturating_sub(1) / 2 || elem.pairs.iter().any(|p| p.forms.len() != m) {
        return Err(Error::DimensionMismatch("kernel element has the wrong shape".into()));
    }
    let field = ctx.field();
    let mut generators = Vec::with_capacity(k);
    let mut verified = true;
    for j in 0..k {
        let mut w = Matrix::zeros(field, k, m);
        for pc in &elem.pairs {
            for t in 0..m {
                if pc.j == j {
                    w[(pc.i, t)] = &w[(pc.i, t)] - &pc.forms[t];
                } else if pc.i == j {
                    w[(pc.j, t)] = &w[(pc.j, t)] + &pc.forms[t];
                }
            }
        }
        verified &= j_v(ctx, &w)?.iter().all(FieldScalar::is_zero);
        generators.push(w);
    }
    Ok(DecodedKernel {
        generators,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::SymplecticForm;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    /// Split form plus `e_3 ^ e_4`; see `degenerate_example` in the
    /// integration tests for the full derivation.
    fn degenerate_pair() -> FormSpace {
        let q = q();
        let w1 = SymplecticForm::split(q, 4).unwrap();
        let mut g2 = w1.gram().clone();
        g2[(2, 3)] = q.one();
        g2[(3, 2)] = -q.one();
        FormSpace::new(vec![w1, SymplecticForm::new(g2).unwrap()]).unwrap()
    }

    #[test]
    fn expected_dimension_examples() {
        for m in 1..5 {
            assert_eq!(msg_expected_dim(7, 1, m), 6);
        }
        assert_eq!(msg_expected_dim(4, 2, 2), 2);
        assert_eq!(msg_expected_dim(4, 2, 1), 3);
        assert_eq!(msg_expected_dim(4, 2, 5), -1);
    }

    #[test]
    fn constraints_for_a_line_are_empty() {
        let forms = FormSpace::single(SymplecticForm::split(q(), 4).unwrap());
        let ctx = PointContext::new(Subspace::coordinate(q(), 4, &[0]).unwrap(), forms).unwrap();
        let sys = build_constraints(&ctx);
        assert_eq!((sys.matrix.rows(), sys.matrix.cols()), (0, 3));
        let rep = tangent_dim(&ctx).unwrap();
        assert_eq!(rep.tangent_dim, 3);
        assert!(rep.phi_kernel.is_empty());
    }

    #[test]
    fn single_constraint_row() {
        // Columns F[0][0], F[0][1], F[1][0], F[1][1]; the condition is
        // F[1][0] - F[0][1] = 0.
        let forms = FormSpace::single(SymplecticForm::split(q(), 4).unwrap());
        let ctx = PointContext::new(Subspace::coordinate(q(), 4, &[0, 1]).unwrap(), forms).unwrap();
        let sys = build_constraints(&ctx);
        assert_eq!(sys.matrix, Matrix::from_i64(q(), &[&[0, -1, 1, 0]]));
    }

    #[test]
    fn j_v_examples() {
        let forms = FormSpace::single(SymplecticForm::split(q(), 4).unwrap());
        let ctx = PointContext::new(Subspace::coordinate(q(), 4, &[0, 1]).unwrap(), forms).unwrap();
        let e1 = Matrix::from_i64(q(), &[&[1], &[0]]);
        assert_eq!(j_v(&ctx, &e1).unwrap(), vec![q().one(), q().zero()]);
        assert_eq!(j_v(&ctx, &Matrix::zeros(q(), 2, 1)).unwrap(), vec![q().zero(); 2]);
        assert!(j_v(&ctx, &Matrix::zeros(q(), 1, 1)).is_err());
    }

    #[test]
    fn degenerate_point() {
        let ctx = PointContext::new(Subspace::coordinate(q(), 4, &[0, 1]).unwrap(), degenerate_pair()).unwrap();
        let sys = build_constraints(&ctx);
        assert_eq!(sys.matrix.row(0), sys.matrix.row(1));
        let rep = tangent_dim(&ctx).unwrap();
        assert_eq!(rep.expected_dim, 2);
        assert_eq!(rep.tangent_dim, 3);
        assert_eq!(rep.phi_kernel.len(), 1);
        let decoded = decode_kernel_element(&ctx, &rep.phi_kernel[0]).unwrap();
        assert!(decoded.verified);
        assert_eq!(decoded.generators.len(), 2);
    }

    #[test]
    fn k_two_generators_are_minus_v1_and_v2() {
        let ctx = PointContext::new(Subspace::coordinate(q(), 4, &[0, 1]).unwrap(), degenerate_pair()).unwrap();
        let eta = vec![q().from_i64(2), q().from_i64(-3)];
        let elem = PhiKernelElement {
            pairs: vec![PairCoefficients { i: 0, j: 1, forms: eta }],
        };
        let d = decode_kernel_element(&ctx, &elem).unwrap();
        // w_1 = v_2 (x) eta, w_2 = -v_1 (x) eta.
        assert_eq!(d.generators[0], Matrix::from_i64(q(), &[&[0, 0], &[2, -3]]));
        assert_eq!(d.generators[1], Matrix::from_i64(q(), &[&[-2, 3], &[0, 0]]));
        assert!(!d.verified);
    }

    #[test]
    fn decoding_rejects_zero() {
        let ctx = PointContext::new(Subspace::coordinate(q(), 4, &[0, 1]).unwrap(), degenerate_pair()).unwrap();
        let elem = PhiKernelElement {
            pairs: vec![PairCoefficients { i: 0, j: 1, forms: vec![q().zero(); 2] }],
        };
        assert!(decode_kernel_element(&ctx, &elem).is_err());
    }

    #[test]
    fn non_isotropic_point_is_rejected() {
        let forms = FormSpace::single(SymplecticForm::standard(q(), 4).unwrap());
        let err = PointContext::new(Subspace::coordinate(q(), 4, &[0, 1]).unwrap(), forms).unwrap_err();
        assert!(matches!(err, Error::NotIsotropic { form: 0, i: 0, j: 1, .. }));
    }

    #[test]
    fn bad_complement_is_rejected() {
        let q = q();
        let forms = FormSpace::single(SymplecticForm::split(q, 4).unwrap());
        let basis = Matrix::from_i64(q, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let complement = Matrix::from_i64(q, &[&[1, 0, 1, 0], &[0, 1, 0, 0]]);
        assert!(PointContext::with_frame(basis, complement, forms).is_err());
    }
}
