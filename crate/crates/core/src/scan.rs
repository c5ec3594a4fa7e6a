//! Random sampling of tangent-dimension excess.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::rng;
use crate::symplectic::{random_isotropic_subspace, FormSpace};
use crate::tangent::{msg_expected_dim, tangent_dim, PointContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub field: FieldSpec,
    pub samples: u64,
    pub seed: u64,
    #[serde(skip)]
    pub workers: usize,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || 2 * self.k > self.n {
            return Err(Error::InvalidArgument(format!(
                "k = {} must lie in 1..={}",
                self.k,
                self.n / 2
            )));
        }
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidArgument("need at least one worker".into()));
        }
        if self.m == 0 || self.m > self.n * (self.n - 1) / 2 {
            return Err(Error::InvalidArgument(format!(
                "m = {} forms do not fit on a {}-dimensional space",
                self.m, self.n
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub points: u64,
    pub sampler_failures: u64,
    pub expected_dim: i64,
    pub expected_dim_count: u64,
    /// Number of points by `tangent_dim - expected_dim`.
    pub excess_dim_histogram: BTreeMap<i64, u64>,
    /// Points where some member of the pencil degenerates. Two forms only.
    pub degenerate_pencils: Option<u64>,
}

struct Sample {
    excess: i64,
    degenerate: bool,
}

/// Sample `i` draws `m` independent random forms and then a random
/// isotropic `k`-subspace, all from stream `i` of the seed.
pub fn scan(config: &ScanConfig) -> Result<ScanSummary> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let samples: Vec<Option<Sample>> = pool.install(|| {
        (0..config.samples)
            .into_par_iter()
            .map(|i| sample(config, i))
            .collect::<Result<Vec<_>>>()
    })?;

    let expected_dim = msg_expected_dim(config.n, config.k, config.m);
    let mut summary = ScanSummary {
        points: 0,
        sampler_failures: 0,
        expected_dim,
        expected_dim_count: 0,
        excess_dim_histogram: BTreeMap::new(),
        degenerate_pencils: (config.m == 2).then_some(0),
    };
    for s in samples {
        let Some(s) = s else {
            summary.sampler_failures += 1;
            continue;
        };
        summary.points += 1;
        if s.excess == 0 {
            summary.expected_dim_count += 1;
        }
        *summary.excess_dim_histogram.entry(s.excess).or_insert(0) += 1;
        if s.degenerate {
            if let Some(d) = summary.degenerate_pencils.as_mut() {
                *d += 1;
            }
        }
    }
    Ok(summary)
}

fn sample(config: &ScanConfig, index: u64) -> Result<Option<Sample>> {
    let mut rng = rng::stream(config.seed, index);
    let forms = FormSpace::random(config.field, config.n, config.m, &mut rng)?;
    let Some(v) = random_isotropic_subspace(config.k, &forms, &mut rng)? else {
        return Ok(None);
    };
    let report = tangent_dim(&PointContext::new(v, forms)?)?;
    Ok(Some(Sample {
        excess: report.excess(),
        degenerate: report.pencil_degenerate == Some(true),
    }))
}
