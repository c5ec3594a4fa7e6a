//! Brill-Noether expected dimensions for rank-two bundles and coherent
//! systems. All arithmetic is exact `i64`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which Brill-Noether number stands for `rho(r, d, k, g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoVariant {
    /// Bundles with fixed determinant: `(r^2 - 1)(g - 1) - k(k - d + r(g - 1))`.
    Fixed,
    /// Bundles with varying determinant: `r^2 (g - 1) + 1 - k(k - d + r(g - 1))`.
    Full,
}

impl RhoVariant {
    pub const ALL: [RhoVariant; 2] = [RhoVariant::Fixed, RhoVariant::Full];

    pub fn name(self) -> &'static str {
        match self {
            RhoVariant::Fixed => "fixed",
            RhoVariant::Full => "full",
        }
    }
}

impl std::str::FromStr for RhoVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(RhoVariant::Fixed),
            "full" => Ok(RhoVariant::Full),
            _ => Err(Error::Parse(format!("unknown rho variant {s:?}; expected fixed or full"))),
        }
    }
}

/// Rank, degree, section count, genus and `h^1` of the determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BNParams {
    pub r: i64,
    pub d: i64,
    pub k: i64,
    pub g: i64,
    pub m: i64,
}

impl BNParams {
    pub fn new(r: i64, d: i64, k: i64, g: i64, m: i64) -> Result<Self> {
        let p = BNParams { r, d, k, g, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 1 {
            return Err(Error::InvalidArgument(format!("rank r = {} must be at least 1", self.r)));
        }
        if self.g < 2 {
            return Err(Error::InvalidArgument(format!("genus g = {} must be at least 2", self.g)));
        }
        if self.k < 0 {
            return Err(Error::InvalidArgument(format!("k = {} must be nonnegative", self.k)));
        }
        if self.m < 0 {
            return Err(Error::InvalidArgument(format!("m = {} must be nonnegative", self.m)));
        }
        Ok(())
    }

    pub fn rho(&self, variant: RhoVariant) -> i64 {
        rho(variant, self.r, self.d, self.k, self.g)
    }
}

/// `C(n, k)` for `n >= 0`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

fn section_term(r: i64, d: i64, k: i64, g: i64) -> i64 {
    k * (k - d + r * (g - 1))
}

pub fn rho_fixed(r: i64, d: i64, k: i64, g: i64) -> i64 {
    (r * r - 1) * (g - 1) - section_term(r, d, k, g)
}

pub fn rho_full(r: i64, d: i64, k: i64, g: i64) -> i64 {
    r * r * (g - 1) + 1 - section_term(r, d, k, g)
}

pub fn rho(variant: RhoVariant, r: i64, d: i64, k: i64, g: i64) -> i64 {
    match variant {
        RhoVariant::Fixed => rho_fixed(r, d, k, g),
        RhoVariant::Full => rho_full(r, d, k, g),
    }
}

/// `rho(2, d, k, g) - g + m C(k, 2)` for rank-two systems whose determinant
/// has `h^1 >= m`.
pub fn rho2_special(d: i64, k: i64, g: i64, m: i64, variant: RhoVariant) -> Result<i64> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("m = {m} must be at least 1")));
    }
    BNParams::new(2, d, k, g, m)?;
    Ok(rho(variant, 2, d, k, g) - g + m * binomial(k, 2))
}

/// `3g - 3 - C(k + 1, 2)`.
pub fn bfm_bound(g: i64, k: i64) -> i64 {
    3 * g - 3 - binomial(k + 1, 2)
}

/// `rho(r, d, k, g) - g + C(k, r) h1`.
pub fn gn_bound(r: i64, d: i64, k: i64, g: i64, h1: i64, variant: RhoVariant) -> Result<i64> {
    BNParams::new(r, d, k, g, h1)?;
    Ok(rho(variant, r, d, k, g) - g + binomial(k, r) * h1)
}

/// Whether `g + k(1 - g + floor(d/2)) - k^2 < 0`.
pub fn stable_locus_inequality(g: i64, k: i64, d: i64) -> bool {
    g + k * (1 - g + d.div_euclid(2)) - k * k < 0
}
