//! Parameter grids for the `rho` subcommand.

use msgkit::numerology::{gn_bound, rho};
use msgkit::{BNParams, Error, Result, RhoVariant};
use serde::Serialize;

/// `5` or the inclusive range `2..10`.
pub fn parse_values(flag: &str, s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Parse(format!("--{flag}: {s:?} is not an integer or a range a..b"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(Error::Parse(format!("--{flag}: empty range {s}")));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![s.parse().map_err(|_| bad())?])
    }
}

/// Degree as a function of the genus: `a g + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeSpec {
    Values(Vec<i64>),
    Linear { a: i64, b: i64 },
}

impl DegreeSpec {
    pub fn parse(s: &str) -> Result<Self> {
        if !s.contains('g') {
            return parse_values("d", s).map(DegreeSpec::Values);
        }
        let bad = || Error::Parse(format!("--d: cannot read {s:?} as a linear expression in g"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (mut a, mut b) = (0i64, 0i64);
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'-' => (-1, &rest[1..]),
                b'+' => (1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if let Some(coef) = term.strip_suffix('g') {
                let c: i64 = match coef.strip_suffix('*').unwrap_or(coef) {
                    "" => 1,
                    c => c.parse().map_err(|_| bad())?,
                };
                a += sign * c;
            } else {
                let c: i64 = term.parse().map_err(|_| bad())?;
                b += sign * c;
            }
        }
        Ok(DegreeSpec::Linear { a, b })
    }

    fn at(&self, g: i64) -> Vec<i64> {
        match self {
            DegreeSpec::Values(v) => v.clone(),
            DegreeSpec::Linear { a, b } => vec![a * g + b],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoRow {
    pub r: i64,
    pub d: i64,
    pub k: i64,
    pub g: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_fixed: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_full: Option<i64>,
    /// `rho - g + C(k, r) m` for each reported variant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_fixed: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_full: Option<i64>,
}

impl RhoRow {
    pub fn values(&self) -> Vec<i64> {
        [self.rho_fixed, self.rho_full, self.special_fixed, self.special_full]
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["r", "d", "k", "g"];
        if self.m.is_some() {
            h.push("m");
        }
        for (name, v) in [
            ("rho_fixed", self.rho_fixed),
            ("rho_full", self.rho_full),
            ("special_fixed", self.special_fixed),
            ("special_full", self.special_full),
        ] {
            if v.is_some() {
                h.push(name);
            }
        }
        h
    }

    pub fn cells(&self) -> Vec<i64> {
        let mut c = vec![self.r, self.d, self.k, self.g];
        c.extend(self.m);
        c.extend(self.values());
        c
    }
}

/// Rows in the order `r`, `g`, `k`, `d`, `m`, each ascending.
pub fn rho_table(
    r: &[i64],
    d: &DegreeSpec,
    k: &[i64],
    g: &[i64],
    m: Option<&[i64]>,
    variant: Option<RhoVariant>,
) -> Result<Vec<RhoRow>> {
    let variants: Vec<RhoVariant> = variant.map_or(RhoVariant::ALL.to_vec(), |v| vec![v]);
    let ms: Vec<Option<i64>> = match m {
        Some(ms) => ms.iter().copied().map(Some).collect(),
        None => vec![None],
    };
    let mut rows = Vec::new();
    for &r in r {
        for &g in g {
            for &k in k {
                for d in d.at(g) {
                    for &m in &ms {
                        BNParams::new(r, d, k, g, m.unwrap_or(0))?;
                        let base = |v: RhoVariant| variants.contains(&v).then(|| rho(v, r, d, k, g));
                        let special = |v: RhoVariant| -> Result<Option<i64>> {
                            match m {
                                Some(m) if variants.contains(&v) => gn_bound(r, d, k, g, m, v).map(Some),
                                _ => Ok(None),
                            }
                        };
                        rows.push(RhoRow {
                            r,
                            d,
                            k,
                            g,
                            m,
                            rho_fixed: base(RhoVariant::Fixed),
                            rho_full: base(RhoVariant::Full),
                            special_fixed: special(RhoVariant::Fixed)?,
                            special_full: special(RhoVariant::Full)?,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}
