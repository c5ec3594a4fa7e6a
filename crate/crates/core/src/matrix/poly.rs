//! Univariate polynomials, binary forms, and fraction-free determinants over
//! polynomial rings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Matrix;
use crate::error::{Error, Result};
use crate::field::{FieldScalar, FieldSpec};

/// A univariate polynomial, coefficients listed from the constant term up.
/// Trailing zero coefficients are never stored; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<FieldScalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldScalar) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: FieldSpec) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn new(field: FieldSpec, mut coeffs: Vec<FieldScalar>) -> Self {
        while coeffs.last().is_some_and(FieldScalar::is_zero) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldScalar] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldScalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldScalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &FieldScalar) -> FieldScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn scale(&self, c: &FieldScalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Scales to leading coefficient one; the zero polynomial is unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = d.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] * &lc_inv;
            let shift = top - dd;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[shift + i] = &rem[shift + i] - &(&c * dc);
                }
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(FieldScalar::is_zero) {
                rem.pop();
            }
        }
        Ok((Poly::new(self.field, quot), Poly::new(self.field, rem)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        match self.div_rem(d) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.div_rem(m).unwrap().1;
        let mut acc = Poly::constant(self.field.one()).div_rem(m).unwrap().1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(m).unwrap().1;
            }
            base = base.mul(&base).div_rem(m).unwrap().1;
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.field.from_i64(i as i64) * c)
            .collect();
        Poly::new(self.field, coeffs)
    }

    /// The distinct roots lying in the base field, in ascending order (by
    /// residue for `F_p`, by value for `Q`). The zero polynomial has no
    /// well-defined root set and returns an empty list.
    pub fn roots_in_field(&self) -> Vec<FieldScalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        match self.field.modulus() {
            Some(p) => {
                let mut roots = prime_field_roots(&self.monic(), p as u64);
                roots.sort_by_key(|r| r.residue());
                roots
            }
            None => rational_roots(self),
        }
    }
}

/// Roots over `F_p`: isolate the split part `gcd(f, x^p - x)` and separate
/// its linear factors by random equal-degree splitting.
fn prime_field_roots(f: &Poly, p: u64) -> Vec<FieldScalar> {
    let field = f.field;
    let x = Poly::x(field);
    let xp = x.pow_mod(p, f);
    let split = f.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(&split, p, &mut rng, &mut roots);
    roots
}

fn split_linear(f: &Poly, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FieldScalar>) {
    let field = f.field;
    match f.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-&f.coeff(0)),
        Some(_) => {
            if f.coeff(0).is_zero() {
                out.push(field.zero());
                let g = f.div_exact(&Poly::x(field)).unwrap();
                return split_linear(&g, p, rng, out);
            }
            loop {
                let a = field.from_i64(rng.random_range(0..p as i64));
                let shifted = Poly::new(field, vec![a, field.one()]);
                let h = shifted.pow_mod((p - 1) / 2, f).sub(&Poly::constant(field.one()));
                let g = f.gcd(&h);
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && dg < f.degree().unwrap() {
                    let rest = f.div_exact(&g).unwrap().monic();
                    split_linear(&g, p, rng, out);
                    split_linear(&rest, p, rng, out);
                    return;
                }
            }
        }
    }
}

/// Rational roots by p-adic lifting. A root `a/b` in lowest terms of the
/// primitive squarefree part has `|a| <= |f_0|` and `b <= |lc|`, so it is
/// recovered by rational reconstruction from its lift modulo any `M > 2 |f_0| |lc|`.
/// Avoids factoring `f_0` and `lc`.
fn rational_roots(f: &Poly) -> Vec<FieldScalar> {
    let field = f.field;
    let squarefree = f.div_exact(&f.gcd(&f.derivative())).expect("gcd divides f");
    let mut ints = clear_denominators(&squarefree);
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(field.zero());
        ints.remove(0);
    }
    if ints.len() > 1 {
        let lead = ints.last().unwrap().abs();
        let constant = ints[0].abs();
        let bound = BigInt::from(2u32) * &lead * &constant;
        let (p, mod_roots) = lifting_prime(&ints, &lead);
        let pb = BigInt::from(p);
        for r in mod_roots {
            let lifted = hensel_lift(&ints, BigInt::from(r), &pb, &bound);
            if let Some((a, b)) = reconstruct(&lifted.0, &lifted.1, &constant, &lead) {
                let cand = field.from_fraction(&a, &b).expect("nonzero denominator");
                if f.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.as_rational().cmp(&b.as_rational()));
    roots
}

/// The first odd prime not dividing `lead` modulo which `f` stays squarefree,
/// with the roots of `f` there.
fn lifting_prime(f: &[BigInt], lead: &BigInt) -> (u64, Vec<u64>) {
    let is_prime = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
    for p in (3u64..).filter(|&p| is_prime(p)) {
        let pb = BigInt::from(p);
        if (lead % &pb).is_zero() {
            continue;
        }
        let field = FieldSpec::prime(p).expect("odd prime");
        let reduced = Poly::new(field, f.iter().map(|c| field.from_bigint(c)).collect());
        if reduced.gcd(&reduced.derivative()).degree() != Some(0) {
            continue;
        }
        let roots = prime_field_roots(&reduced.monic(), p).iter().map(|r| r.residue().expect("prime field") as u64).collect();
        return (p, roots);
    }
    unreachable!("only finitely many primes divide the discriminant")
}

fn eval_int(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Newton iteration from a simple root modulo `p` until the modulus exceeds
/// `bound`. Returns `(root, modulus)`.
fn hensel_lift(f: &[BigInt], mut r: BigInt, p: &BigInt, bound: &BigInt) -> (BigInt, BigInt) {
    let deriv: Vec<BigInt> = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut m = p.clone();
    while &m <= bound {
        m = &m * &m;
        let fr = eval_int(f, &r, &m);
        let dr = eval_int(&deriv, &r, &m);
        let inv = dr.extended_gcd(&m).x;
        r = (&r - fr * inv).mod_floor(&m);
    }
    (r, m)
}

/// `a/b` with `a = b r (mod m)`, `|a| <= num_bound`, `0 < b <= den_bound`.
fn reconstruct(r: &BigInt, m: &BigInt, num_bound: &BigInt, den_bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > num_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (mut a, mut b) = (r1, t1);
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    (!b.is_zero() && &b <= den_bound && a.gcd(&b).is_one()).then_some((a, b))
}

fn clear_denominators(f: &Poly) -> Vec<BigInt> {
    let lcm = f
        .coeffs
        .iter()
        .map(|c| c.as_rational().unwrap().denom().clone())
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    f.coeffs
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&lcm / q.denom())
        })
        .collect()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly<{}>{:?}", self.field, self.coeffs)
    }
}

/// A homogeneous polynomial in `(l1, l2)`; `coefficients[i]` multiplies
/// `l1^i * l2^(degree - i)`. The zero form is stored with degree 0.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BinaryForm {
    degree: usize,
    coefficients: Vec<FieldScalar>,
}

impl BinaryForm {
    pub fn new(degree: usize, coefficients: Vec<FieldScalar>) -> Result<Self> {
        if coefficients.len() != degree + 1 {
            return Err(Error::DimensionMismatch(format!(
                "binary form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coefficients.len()
            )));
        }
        if coefficients.iter().all(FieldScalar::is_zero) {
            return Ok(Self::zero(coefficients[0].field()));
        }
        Ok(Self {
            degree,
            coefficients,
        })
    }

    pub fn from_i64(field: FieldSpec, coefficients: &[i64]) -> Self {
        let c: Vec<_> = coefficients.iter().map(|&x| field.from_i64(x)).collect();
        Self::new(c.len() - 1, c).unwrap()
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self {
            degree: 0,
            coefficients: vec![field.zero()],
        }
    }

    /// Homogenizes `p(x)` (with `x = l1 / l2`) to the given degree.
    pub fn homogenize(p: &Poly, degree: usize) -> Self {
        assert!(p.degree().unwrap_or(0) <= degree, "degree too small to homogenize");
        if p.is_zero() {
            return Self::zero(p.field());
        }
        Self {
            degree,
            coefficients: (0..=degree).map(|i| p.coeff(i)).collect(),
        }
    }

    /// Sets `l2 = 1`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.field(), self.coefficients.clone())
    }

    pub fn field(&self) -> FieldSpec {
        self.coefficients[0].field()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[FieldScalar] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(FieldScalar::is_zero)
    }

    /// Nonzero of positive degree, so it vanishes somewhere on the projective
    /// line over the algebraic closure.
    pub fn is_nonconstant(&self) -> bool {
        !self.is_zero() && self.degree > 0
    }

    /// Multiplicity of `l2` as a factor, i.e. of the root at `(1, 0)`.
    pub fn l2_multiplicity(&self) -> usize {
        self.degree - self.dehomogenize().degree().unwrap_or(0)
    }

    pub fn eval(&self, l1: &FieldScalar, l2: &FieldScalar) -> FieldScalar {
        let field = self.field();
        let mut acc = field.zero();
        for (i, c) in self.coefficients.iter().enumerate() {
            acc = &acc + &(&(c * &l1.pow(i as u64)) * &l2.pow((self.degree - i) as u64));
        }
        acc
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field());
        }
        Self::homogenize(&self.dehomogenize().mul(&o.dehomogenize()), self.degree + o.degree)
    }

    /// `Some(q)` with `self = q * d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &BinaryForm) -> Option<BinaryForm> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.field()));
        }
        if d.degree > self.degree || d.l2_multiplicity() > self.l2_multiplicity() {
            return None;
        }
        let q = self.dehomogenize().div_exact(&d.dehomogenize())?;
        Some(Self::homogenize(&q, self.degree - d.degree))
    }

    /// Projective roots in the base field, each normalized so that its first
    /// nonzero coordinate is one.
    pub fn roots_in_field(&self) -> Vec<(FieldScalar, FieldScalar)> {
        let field = self.field();
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        if self.l2_multiplicity() > 0 {
            out.push((field.one(), field.zero()));
        }
        for x in self.dehomogenize().roots_in_field() {
            // (x, 1) ~ (1, 1/x) when x != 0.
            if x.is_zero() {
                out.push((field.zero(), field.one()));
            } else {
                out.push((field.one(), x.inv().unwrap()));
            }
        }
        out
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm(deg {}){:?}", self.degree, self.coefficients)
    }
}

/// Greatest common divisor of binary forms.
///
/// Each nonzero form is dehomogenized at `l2 = 1`; the univariate gcd of those
/// polynomials is rehomogenized and multiplied by `l2^e`, where `e` is the
/// smallest degree deficit (the `l2`-multiplicity) among the inputs. The
/// result is monic after dehomogenization and is the zero form exactly when
/// every input is zero.
pub fn binary_form_gcd(forms: &[BinaryForm]) -> Result<BinaryForm> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidArgument("binary_form_gcd needs at least one form".into()))?;
    let field = first.field();
    if let Some(f) = forms.iter().find(|f| f.field() != field) {
        return Err(Error::MixedFields(field, f.field()));
    }
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(BinaryForm::zero(field));
    }
    let mut g = Poly::zero(field);
    let mut l2_power = usize::MAX;
    for f in nonzero {
        g = g.gcd(&f.dehomogenize());
        l2_power = l2_power.min(f.l2_multiplicity());
    }
    let l2 = BinaryForm::from_i64(field, &[1, 0]);
    let mut out = BinaryForm::homogenize(&g, g.degree().unwrap());
    for _ in 0..l2_power {
        out = out.mul(&l2);
    }
    Ok(out)
}

/// A square matrix of polynomials, for determinants over `F[x]`.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    n: usize,
    field: FieldSpec,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// `x * a + b` for square scalar matrices `a` and `b` of equal size.
    pub fn linear(a: &Matrix, b: &Matrix) -> Self {
        assert!(a.is_square() && b.is_square() && a.rows() == b.rows());
        let field = a.field();
        let entries = a
            .entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| Poly::new(field, vec![y.clone(), x.clone()]))
            .collect();
        Self {
            n: a.rows(),
            field,
            entries,
        }
    }

    /// Determinant by Bareiss fraction-free elimination; every division is
    /// exact in `F[x]`.
    pub fn determinant(&self) -> Poly {
        let n = self.n;
        let mut m = self.entries.clone();
        let one = Poly::constant(self.field.one());
        if n == 0 {
            return one;
        }
        let mut prev = one;
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return Poly::zero(self.field);
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k * n + k].mul(&m[i * n + j]).sub(&m[i * n + k].mul(&m[k * n + j]));
                    m[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k * n + k].clone();
        }
        let det = m[n * n - 1].clone();
        if negate {
            det.scale(&-self.field.one())
        } else {
            det
        }
    }
}

/// `det(x I - m)`, computed without root-finding or division by integers, so
/// it is valid in every characteristic.
pub fn char_poly(m: &Matrix) -> Result<Poly> {
    m.require_square()?;
    let field = m.field();
    Ok(PolyMatrix::linear(&Matrix::identity(field, m.rows()), &m.neg()).determinant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn char_poly_examples() {
        let q = q();
        assert_eq!(char_poly(&Matrix::identity(q, 2)).unwrap(), Poly::from_i64(q, &[1, -2, 1]));
        assert_eq!(char_poly(&Matrix::zeros(q, 2, 2)).unwrap(), Poly::from_i64(q, &[0, 0, 1]));
        let j = Matrix::from_i64(q, &[&[0, 1], &[-1, 0]]);
        assert_eq!(char_poly(&j).unwrap(), Poly::from_i64(q, &[1, 0, 1]));
    }

    #[test]
    fn char_poly_in_small_characteristic() {
        // 4x4 over F_3: dimension exceeds the characteristic.
        let f3 = FieldSpec::prime(3).unwrap();
        let m = Matrix::identity(f3, 4);
        assert_eq!(char_poly(&m).unwrap(), Poly::from_i64(f3, &[1, -4, 6, -4, 1]));
    }

    #[test]
    fn gcd_examples() {
        let q = q();
        // l1*l2 and l1^2 share l1.
        let l1l2 = BinaryForm::from_i64(q, &[0, 1, 0]);
        let l1sq = BinaryForm::from_i64(q, &[0, 0, 1]);
        assert_eq!(binary_form_gcd(&[l1l2, l1sq]).unwrap(), BinaryForm::from_i64(q, &[0, 1]));

        let l1 = BinaryForm::from_i64(q, &[0, 1]);
        let l2 = BinaryForm::from_i64(q, &[1, 0]);
        assert_eq!(binary_form_gcd(&[l1, l2]).unwrap(), BinaryForm::from_i64(q, &[1]));

        // l1^2 - l2^2 and l1 - l2.
        let a = BinaryForm::from_i64(q, &[-1, 0, 1]);
        let b = BinaryForm::from_i64(q, &[-1, 1]);
        assert_eq!(binary_form_gcd(&[a, b]).unwrap(), BinaryForm::from_i64(q, &[-1, 1]));
    }

    #[test]
    fn gcd_of_zero_forms_is_zero() {
        let z = BinaryForm::zero(q());
        assert!(binary_form_gcd(&[z.clone(), z]).unwrap().is_zero());
        assert!(binary_form_gcd(&[]).is_err());
    }

    #[test]
    fn gcd_keeps_shared_root_at_infinity() {
        // l2^2 * l1 and l2 * (l1 + l2): common factor l2.
        let a = BinaryForm::from_i64(q(), &[0, 1, 0, 0]);
        let b = BinaryForm::from_i64(q(), &[1, 1, 0]);
        let g = binary_form_gcd(&[a, b]).unwrap();
        assert_eq!(g, BinaryForm::from_i64(q(), &[1, 0]));
        assert_eq!(g.roots_in_field(), vec![(q().one(), q().zero())]);
    }

    #[test]
    fn roots_over_prime_fields_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [3u64, 5, 7, 11, 101] {
            let f = FieldSpec::prime(p).unwrap();
            for _ in 0..40 {
                let deg = rng.random_range(1..7);
                let poly = Poly::new(f, (0..=deg).map(|_| f.random(&mut rng)).collect());
                if poly.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let brute: Vec<_> = f.elements().unwrap().filter(|x| poly.eval(x).is_zero()).collect();
                assert_eq!(poly.roots_in_field(), brute, "{poly:?}");
            }
        }
    }

    #[test]
    fn roots_over_large_prime() {
        let f = FieldSpec::prime(2_147_483_647).unwrap();
        // (x - 5)(x - 123456789)(x^2 + 1); -1 is a non-residue mod 2^31 - 1.
        let p = Poly::from_i64(f, &[-5, 1])
            .mul(&Poly::from_i64(f, &[-123_456_789, 1]))
            .mul(&Poly::from_i64(f, &[1, 0, 1]));
        assert_eq!(p.roots_in_field(), vec![f.from_i64(5), f.from_i64(123_456_789)]);
    }

    #[test]
    fn rational_roots() {
        let q = q();
        // (2x - 3)(x + 4) x (x^2 + 2)
        let p = Poly::from_i64(q, &[-3, 2])
            .mul(&Poly::from_i64(q, &[4, 1]))
            .mul(&Poly::x(q))
            .mul(&Poly::from_i64(q, &[2, 0, 1]));
        let expect = vec![q.from_i64(-4), q.zero(), q.parse_scalar("3/2").unwrap()];
        assert_eq!(p.roots_in_field(), expect);
        let big = Poly::from_i64(q, &[-1_000_000_007 * 998_244_353, 1_000_000_007]);
        assert_eq!(big.roots_in_field(), vec![q.from_i64(998_244_353)]);
    }

    #[test]
    fn rational_roots_with_large_semiprime_coefficients() {
        let q = q();
        let big = |s: &str| s.parse::<BigInt>().unwrap();
        // a = p1 p2 and b = p3 p4 with 19-digit primes, times x^2 + x + 1.
        let a = big("9223372036854775783") * big("4611686018427387847");
        let b = big("2305843009213693951") * big("1152921504606846883");
        let root = q.from_fraction(&a, &b).unwrap();
        let lin = Poly::new(q, vec![q.from_bigint(&-a), q.from_bigint(&b)]);
        let f = lin.mul(&lin).mul(&Poly::from_i64(q, &[1, 1, 1]));
        assert_eq!(f.roots_in_field(), vec![root]);
    }

    #[test]
    fn rational_roots_match_construction() {
        let q = q();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let mut roots: Vec<FieldScalar> = Vec::new();
            let mut f = Poly::from_i64(q, &[rng.random_range(1..4), 0, 1]);
            for _ in 0..rng.random_range(0..5) {
                let num = rng.random_range(-50i64..=50);
                let den = rng.random_range(1i64..=30);
                let r = q.from_fraction(&BigInt::from(num), &BigInt::from(den)).unwrap();
                f = f.mul(&Poly::new(q, vec![-&r, q.one()]));
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
            f = f.scale(&q.from_i64(rng.random_range(1..1000)));
            roots.sort_by(|a, b| a.as_rational().cmp(&b.as_rational()));
            assert_eq!(f.roots_in_field(), roots);
        }
    }

    #[test]
    fn bareiss_matches_evaluation() {
        let f7 = FieldSpec::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 0..5 {
            let a = Matrix::random(f7, n, n, &mut rng);
            let b = Matrix::random(f7, n, n, &mut rng);
            let det = PolyMatrix::linear(&a, &b).determinant();
            for x in f7.elements().unwrap() {
                let direct = a.scale(&x).add(&b).determinant().unwrap();
                assert_eq!(det.eval(&x), direct);
            }
        }
    }

    #[test]
    fn binary_form_division() {
        let q = q();
        let a = BinaryForm::from_i64(q, &[-1, 0, 1]);
        let b = BinaryForm::from_i64(q, &[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), BinaryForm::from_i64(q, &[-1, 1]));
        assert!(b.div_exact(&a).is_none());
        let l2 = BinaryForm::from_i64(q, &[1, 0]);
        assert!(BinaryForm::from_i64(q, &[0, 1]).div_exact(&l2).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        fn forms() -> impl Strategy<Value = Vec<BinaryForm>> {
            (prop_oneof![Just(3u64), Just(5), Just(0)], any::<u64>(), 1usize..4).prop_map(|(p, seed, count)| {
                let field = if p == 0 { FieldSpec::rational() } else { FieldSpec::prime(p).unwrap() };
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let common_deg = rng.random_range(0..3);
                let common: Vec<_> = (0..=common_deg).map(|_| field.random(&mut rng)).collect();
                let common = BinaryForm::new(common_deg, common).unwrap();
                (0..count)
                    .map(|_| {
                        let d = rng.random_range(0..3);
                        let c: Vec<_> = (0..=d).map(|_| field.random(&mut rng)).collect();
                        BinaryForm::new(d, c).unwrap().mul(&common)
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn gcd_divides_every_input(fs in forms()) {
                let g = binary_form_gcd(&fs).unwrap();
                if g.is_zero() {
                    prop_assert!(fs.iter().all(BinaryForm::is_zero));
                } else {
                    for f in &fs {
                        prop_assert!(f.div_exact(&g).is_some(), "{:?} does not divide {:?}", g, f);
                    }
                }
            }
        }
    }
}
