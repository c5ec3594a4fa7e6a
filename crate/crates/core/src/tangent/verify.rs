//! Brute-force check that a two-form point has the expected tangent dimension
//! exactly when no member of the pencil degenerates on a plane in `V`.

use rayon::prelude::*;
use serde::Serialize;

use super::{build_constraints, decode_kernel_element, tangent_dim_with_system, PointContext};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::rng;
use crate::symplectic::{
    gaussian_binomial, pivot_patterns, random_isotropic_subspace, subspaces_with_pivots, FormSpace, Subspace,
};

#[derive(Clone, Debug)]
pub enum FormSource {
    /// `count` pairs drawn with [`FormSpace::random_independent_pair`]; pair
    /// `i` uses stream `i` of the seed.
    RandomPairs { count: usize },
    Explicit(Vec<FormSpace>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Every isotropic `k`-subspace of `F_q^n`.
    Exhaustive,
    /// `points_per_pair` greedy samples per pair.
    Sampled { points_per_pair: usize },
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub k: usize,
    pub field: FieldSpec,
    pub source: FormSource,
    pub scope: Scope,
    pub seed: u64,
    pub workers: usize,
    pub budget: u128,
    /// Zero the last tangency condition before taking ranks. A sound harness
    /// must then report mismatches.
    pub inject_fault: bool,
}

/// A point where the two sides of the equivalence disagree.
#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub pair_index: usize,
    pub field: FieldSpec,
    pub n: usize,
    pub forms: FormSpace,
    pub subspace: Subspace,
    pub tangent_dim: usize,
    pub expected_dim: i64,
    pub pencil_degenerate: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PairSummary {
    pub pair_index: usize,
    pub points: u64,
    pub degenerate_points: u64,
    pub sampler_failures: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub points_checked: u64,
    pub degenerate_points: u64,
    /// Degenerate points whose degenerate pencil members all lie outside the
    /// base field.
    pub extension_only_points: u64,
    pub sampler_failures: u64,
    pub kernel_elements_checked: u64,
    pub decoder_failures: u64,
    pub pairs: Vec<PairSummary>,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Default)]
struct Tally {
    points: u64,
    degenerate: u64,
    extension_only: u64,
    sampler_failures: u64,
    kernel_elements: u64,
    decoder_failures: u64,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.points += other.points;
        self.degenerate += other.degenerate;
        self.extension_only += other.extension_only;
        self.sampler_failures += other.sampler_failures;
        self.kernel_elements += other.kernel_elements;
        self.decoder_failures += other.decoder_failures;
        self.mismatches.extend(other.mismatches);
        self
    }
}

pub fn verify_thm_equivalence(config: &VerifyConfig) -> Result<VerifyReport> {
    let VerifyConfig { n, k, field, .. } = *config;
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidArgument(format!("k = {k} must lie in 1..={}", n / 2)));
    }
    if config.workers == 0 {
        return Err(Error::InvalidArgument("need at least one worker".into()));
    }
    let pair_count = match &config.source {
        FormSource::RandomPairs { count } => *count,
        FormSource::Explicit(list) => list.len(),
    };
    if config.scope == Scope::Exhaustive {
        let q = field
            .modulus()
            .ok_or_else(|| Error::InvalidArgument("exhaustive scope needs a prime field".into()))?;
        let needed = gaussian_binomial(n, k, q as u64).saturating_mul(pair_count as u128);
        if needed > config.budget {
            return Err(Error::BudgetExceeded {
                needed,
                budget: config.budget,
            });
        }
    }
    if let FormSource::Explicit(list) = &config.source {
        for f in list {
            if f.len() != 2 || f.dim() != n || f.field() != field {
                return Err(Error::InvalidArgument(format!(
                    "explicit form spaces must be pairs on {field}^{n}"
                )));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let tallies: Vec<Tally> = pool.install(|| {
        (0..pair_count)
            .into_par_iter()
            .map(|i| run_pair(config, i))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut report = VerifyReport::default();
    for (i, t) in tallies.into_iter().enumerate() {
        report.pairs.push(PairSummary {
            pair_index: i,
            points: t.points,
            degenerate_points: t.degenerate,
            sampler_failures: t.sampler_failures,
            mismatches: t.mismatches.len() as u64,
        });
        report.points_checked += t.points;
        report.degenerate_points += t.degenerate;
        report.extension_only_points += t.extension_only;
        report.sampler_failures += t.sampler_failures;
        report.kernel_elements_checked += t.kernel_elements;
        report.decoder_failures += t.decoder_failures;
        report.mismatches.extend(t.mismatches);
    }
    Ok(report)
}

fn run_pair(config: &VerifyConfig, index: usize) -> Result<Tally> {
    let mut rng = rng::stream(config.seed, index as u64);
    let forms = match &config.source {
        FormSource::RandomPairs { .. } => FormSpace::random_independent_pair(config.field, config.n, &mut rng)?,
        FormSource::Explicit(list) => list[index].clone(),
    };
    match config.scope {
        Scope::Exhaustive => {
            let patterns = pivot_patterns(config.n, config.k);
            let parts = patterns
                .par_iter()
                .map(|p| {
                    let mut tally = Tally::default();
                    for v in subspaces_with_pivots(config.field, config.n, p)? {
                        if forms.isotropy_violation(v.basis())?.is_none() {
                            check_point(config, index, &forms, v, &mut tally)?;
                        }
                    }
                    Ok(tally)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(parts.into_iter().fold(Tally::default(), Tally::merge))
        }
        Scope::Sampled { points_per_pair } => {
            let mut tally = Tally::default();
            for _ in 0..points_per_pair {
                match random_isotropic_subspace(config.k, &forms, &mut rng)? {
                    Some(v) => check_point(config, index, &forms, v, &mut tally)?,
                    None => tally.sampler_failures += 1,
                }
            }
            Ok(tally)
        }
    }
}

fn check_point(config: &VerifyConfig, index: usize, forms: &FormSpace, v: Subspace, tally: &mut Tally) -> Result<()> {
    let ctx = PointContext::new(v, forms.clone())?;
    let mut system = build_constraints(&ctx);
    if config.inject_fault && system.matrix.rows() > 0 {
        let last = system.matrix.rows() - 1;
        for c in 0..system.matrix.cols() {
            system.matrix[(last, c)] = config.field.zero();
        }
    }
    let report = tangent_dim_with_system(&ctx, system)?;
    let degenerate = report.pencil_degenerate == Some(true);
    tally.points += 1;
    if degenerate {
        tally.degenerate += 1;
        if report.degenerate_witnesses.is_empty() {
            tally.extension_only += 1;
        }
    }
    for elem in &report.phi_kernel {
        tally.kernel_elements += 1;
        if !decode_kernel_element(&ctx, elem)?.verified {
            tally.decoder_failures += 1;
        }
    }
    if report.has_expected_dim() == degenerate {
        tally.mismatches.push(Mismatch {
            pair_index: index,
            field: config.field,
            n: config.n,
            forms: forms.clone(),
            subspace: ctx.subspace().clone(),
            tangent_dim: report.tangent_dim,
            expected_dim: report.expected_dim,
            pencil_degenerate: degenerate,
        });
    }
    Ok(())
}

impl Serialize for FormSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.forms().iter().map(|f| f.gram()))
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Matrix::serialize(self.basis(), s)
    }
}
