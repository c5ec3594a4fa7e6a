//! Exact scalars over odd prime fields and the rationals.
//!
//! A [`FieldSpec`] names the ground field; a [`FieldScalar`] is a canonical
//! element of it. Operator overloads (`+`, `-`, `*`, `/`) panic when the two
//! operands come from different fields or when dividing by zero, the same way
//! slice indexing panics on out-of-bounds access. The `try_*` methods report
//! those conditions as [`Error`] values instead.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Magnitude bound for random rational samples. Random rationals are integers
/// drawn uniformly from `-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND`.
pub const RATIONAL_SAMPLE_BOUND: i64 = 9;

/// The ground field: `F_p` for an odd prime `3 <= p < 2^31`, or `Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    modulus: Option<u32>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !(3..1 << 31).contains(&p) {
            return Err(Error::InvalidField(format!(
                "modulus {p} must be an odd prime in [3, 2^31)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Self {
            modulus: Some(p as u32),
        })
    }

    pub const fn rational() -> Self {
        Self { modulus: None }
    }

    /// The prime modulus, or `None` for the rationals.
    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.modulus.is_some()
    }

    pub fn zero(&self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldScalar {
        match self.modulus {
            Some(p) => FieldScalar(Repr::Fp {
                value: v.rem_euclid(p as i64) as u32,
                p,
            }),
            None => FieldScalar(Repr::Q(BigRational::from_integer(BigInt::from(v)))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldScalar {
        match self.modulus {
            Some(p) => {
                let r = v.mod_floor_u32(p);
                FieldScalar(Repr::Fp { value: r, p })
            }
            None => FieldScalar(Repr::Q(BigRational::from_integer(v.clone()))),
        }
    }

    /// Builds `num / den`; in `F_p` this is `num * den^{-1}`.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<FieldScalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.modulus {
            Some(_) => self.from_bigint(num).try_div(&self.from_bigint(den)),
            None => Ok(FieldScalar(Repr::Q(BigRational::new(
                num.clone(),
                den.clone(),
            )))),
        }
    }

    /// Parses `"a"` or `"a/b"` with optional surrounding whitespace.
    pub fn parse_scalar(&self, s: &str) -> Result<FieldScalar> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        };
        match s.split_once('/') {
            Some((a, b)) => self.from_fraction(&parse_int(a)?, &parse_int(b)?),
            None => Ok(self.from_bigint(&parse_int(s)?)),
        }
    }

    /// Every element of a prime field in order `0, 1, ..., p-1`.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldScalar>> {
        self.modulus
            .map(|p| (0..p).map(move |value| FieldScalar(Repr::Fp { value, p })))
    }

    /// Uniform over `F_p`; a bounded integer for `Q` (see [`RATIONAL_SAMPLE_BOUND`]).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldScalar {
        match self.modulus {
            Some(p) => FieldScalar(Repr::Fp {
                value: rng.random_range(0..p),
                p,
            }),
            None => self.from_i64(rng.random_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldScalar {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            Some(p) => write!(f, "F_{p}"),
            None => write!(f, "Q"),
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FieldSpecJson {
    Prime { p: u64 },
    Rational,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.modulus {
            Some(p) => FieldSpecJson::Prime { p: p as u64 },
            None => FieldSpecJson::Rational,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match FieldSpecJson::deserialize(d)? {
            FieldSpecJson::Prime { p } => FieldSpec::prime(p).map_err(serde::de::Error::custom),
            FieldSpecJson::Rational => Ok(FieldSpec::rational()),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

trait ModFloor {
    fn mod_floor_u32(&self, p: u32) -> u32;
}

impl ModFloor for BigInt {
    fn mod_floor_u32(&self, p: u32) -> u32 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u32().expect("residue fits in u32")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Fp { value: u32, p: u32 },
    Q(BigRational),
}

/// An exact element of an odd prime field or of `Q`.
///
/// Prime residues are kept in `[0, p)`; rationals are in lowest terms with a
/// positive denominator, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldScalar(Repr);

impl FieldScalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Fp { p, .. } => FieldSpec { modulus: Some(*p) },
            Repr::Q(_) => FieldSpec::rational(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Fp { value, .. } => *value == 0,
            Repr::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Fp { value, .. } => *value == 1,
            Repr::Q(q) => q.is_one(),
        }
    }

    /// Canonical residue in `[0, p)` for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Fp { value, .. } => Some(*value),
            Repr::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::MixedFields(a, b))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Self(Repr::Fp {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            }),
            (Repr::Q(a), Repr::Q(b)) => Self(Repr::Q(a + b)),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Self(Repr::Fp {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            }),
            (Repr::Q(a), Repr::Q(b)) => Self(Repr::Q(a * b)),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Fp { value, p } => Self(Repr::Fp {
                value: pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32,
                p: *p,
            }),
            Repr::Q(q) => Self(Repr::Q(q.recip())),
        })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;

    fn neg(self) -> FieldScalar {
        match &self.0 {
            Repr::Fp { value, p } => FieldScalar(Repr::Fp {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            }),
            Repr::Q(q) => FieldScalar(Repr::Q(-q)),
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;

    fn neg(self) -> FieldScalar {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;

            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {e}", stringify!($method)),
                }
            }
        }

        impl $trait<FieldScalar> for FieldScalar {
            type Output = FieldScalar;

            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;

            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Fp { value, .. } => write!(f, "{value}"),
            Repr::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prime residues serialize as JSON integers. Rationals serialize as integers
/// when they are integral and fit in an `i64`, otherwise as `"a/b"` strings.
impl Serialize for FieldScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Fp { value, .. } => s.serialize_u32(*value),
            Repr::Q(q) => match q.is_integer().then(|| q.numer().to_i64()).flatten() {
                Some(v) => s.serialize_i64(v),
                None => s.serialize_str(&self.to_string()),
            },
        }
    }
}

impl FieldSpec {
    /// Decodes a scalar from its JSON encoding (integer or `"a/b"` string).
    pub fn scalar_from_json(&self, v: &serde_json::Value) -> Result<FieldScalar> {
        match v {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(self.from_i64(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(self.from_bigint(&BigInt::from(u)))
                } else {
                    Err(Error::Parse(format!("scalar {n} is not an integer")))
                }
            }
            serde_json::Value::String(s) => self.parse_scalar(s),
            other => Err(Error::Parse(format!("scalar must be a number or string, got {other}"))),
        }
    }
}
