use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use msgkit::io::{parse_matrix_file, PointFile};
use msgkit::matrix::{canonical_skew_form, skew_normal_form};
use msgkit::numerology::RhoVariant;
use msgkit::scan::scan;
use msgkit::symplectic::budget_from_env;
use msgkit::tangent::{tangent_dim, verify_thm_equivalence, FormSource, Scope, VerifyConfig};
use msgkit::{Error, FieldSpec, Matrix, ScanConfig};
use serde::Serialize;
use serde_json::Value;

use crate::args::{FileArgs, Format, OutputArgs, RhoArgs, ScanArgs, ScopeArg, VerifyArgs};
use crate::grid::{parse_values, rho_table, DegreeSpec};

/// Failure modes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: the computation ran and found a counterexample.
    Mismatch,
    /// Exit 2: bad input, budget, or I/O.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

/// Wrapper for every JSON document the tool emits.
#[derive(Serialize)]
struct Envelope<'a, I: Serialize, R: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    field: Option<FieldSpec>,
    seed: Option<u64>,
    input: I,
    result: R,
}

fn envelope<'a, I: Serialize, R: Serialize>(
    command: &'a str,
    field: Option<FieldSpec>,
    seed: Option<u64>,
    input: I,
    result: R,
) -> Envelope<'a, I, R> {
    Envelope {
        tool: "msgkit",
        version: env!("CARGO_PKG_VERSION"),
        command,
        field,
        seed,
        input,
        result,
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string(v).map_err(|e| Failure::Input(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn emit(out: &OutputArgs, text: &str) -> Outcome {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn matrix_text(m: &Matrix) -> String {
    let mut s = String::new();
    for row in m.row_vectors() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "  [{}]", cells.join(", "));
    }
    s
}

pub fn rho(args: &RhoArgs) -> Outcome {
    let r = parse_values("r", &args.r)?;
    let d = DegreeSpec::parse(&args.d)?;
    let k = parse_values("k", &args.k)?;
    let g = parse_values("g", &args.g)?;
    let m = args.m.as_deref().map(|s| parse_values("m", s)).transpose()?;
    let rows = rho_table(&r, &d, &k, &g, m.as_deref(), args.variant)?;

    let text = match args.out.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Input<'a> {
                r: &'a str,
                d: &'a str,
                k: &'a str,
                g: &'a str,
                m: Option<&'a str>,
                variant: Option<&'static str>,
            }
            let input = Input {
                r: &args.r,
                d: &args.d,
                k: &args.k,
                g: &args.g,
                m: args.m.as_deref(),
                variant: args.variant.map(RhoVariant::name),
            };
            to_json(&envelope("rho", None, None, input, &rows))?
        }
        Format::Csv | Format::Plain => {
            if args.out.format == Format::Plain && rows.len() == 1 && rows[0].values().len() == 1 {
                format!("{}\n", rows[0].values()[0])
            } else {
                let sep = if args.out.format == Format::Csv { "," } else { "\t" };
                let mut s = String::new();
                if let Some(first) = rows.first() {
                    let _ = writeln!(s, "{}", first.header().join(sep));
                }
                for row in &rows {
                    let cells: Vec<String> = row.cells().iter().map(i64::to_string).collect();
                    let _ = writeln!(s, "{}", cells.join(sep));
                }
                s
            }
        }
    };
    emit(&args.out, &text)
}

pub fn check_point(args: &FileArgs) -> Outcome {
    let text = read(&args.input)?;
    let point = PointFile::parse(&text)?;
    let report = tangent_dim(&point.context()?)?;
    let out = match args.out.format {
        Format::Json => to_json(&envelope(
            "check-point",
            Some(point.forms.field()),
            None,
            point.to_value(),
            &report,
        ))?,
        Format::Plain | Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "field            {}", point.forms.field());
            let _ = writeln!(s, "n, k, m          {}, {}, {}", report.n, report.k, report.m);
            let _ = writeln!(s, "tangent_dim      {}", report.tangent_dim);
            let _ = writeln!(s, "expected_dim     {}", report.expected_dim);
            let _ = writeln!(s, "phi_kernel       {}", report.phi_kernel.len());
            if let Some(deg) = report.pencil_degenerate {
                let _ = writeln!(s, "pencil           {}", if deg { "degenerate" } else { "nondegenerate" });
            }
            for w in &report.degenerate_witnesses {
                let _ = writeln!(s, "witness ({}, {}):", w.lambda.0, w.lambda.1);
                s.push_str(&matrix_text(&w.subspace));
            }
            s
        }
    };
    emit(&args.out, &out)
}

pub fn scan_cmd(args: &ScanArgs) -> Outcome {
    let config = ScanConfig {
        n: args.n,
        k: args.k,
        m: args.m,
        field: args.field.resolve()?,
        samples: args.samples,
        seed: args.seed,
        workers: args.workers,
    };
    let summary = scan(&config)?;
    let out = match args.out.format {
        Format::Json => to_json(&envelope("scan", Some(config.field), Some(config.seed), config, &summary))?,
        Format::Plain | Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "points           {}", summary.points);
            let _ = writeln!(s, "sampler_failures {}", summary.sampler_failures);
            let _ = writeln!(s, "expected_dim     {}", summary.expected_dim);
            let _ = writeln!(s, "at expected      {}", summary.expected_dim_count);
            for (e, c) in &summary.excess_dim_histogram {
                let _ = writeln!(s, "excess {e:<9} {c}");
            }
            s
        }
    };
    emit(&args.out, &out)
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let field = args.field.resolve()?;
    let scope = match args.scope {
        ScopeArg::Exhaustive => Scope::Exhaustive,
        ScopeArg::Sampled => Scope::Sampled {
            points_per_pair: args.samples,
        },
    };
    let budget = budget_from_env()?;
    let config = VerifyConfig {
        n: args.n,
        k: args.k,
        field,
        source: FormSource::RandomPairs { count: args.pairs },
        scope,
        seed: args.seed,
        workers: args.workers,
        budget,
        inject_fault: args.inject_fault,
    };
    let report = verify_thm_equivalence(&config)?;

    let out = match args.out.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Input {
                n: usize,
                k: usize,
                pairs: usize,
                scope: Scope,
                inject_fault: bool,
            }
            let input = Input {
                n: args.n,
                k: args.k,
                pairs: args.pairs,
                scope,
                inject_fault: args.inject_fault,
            };
            to_json(&envelope("verify", Some(field), Some(args.seed), input, &report))?
        }
        Format::Plain | Format::Csv => {
            let mut s = String::new();
            let _ = writeln!(s, "points_checked   {}", report.points_checked);
            let _ = writeln!(s, "degenerate       {}", report.degenerate_points);
            let _ = writeln!(s, "extension_only   {}", report.extension_only_points);
            let _ = writeln!(s, "kernel_elements  {}", report.kernel_elements_checked);
            let _ = writeln!(s, "decoder_failures {}", report.decoder_failures);
            let _ = writeln!(s, "mismatches       {}", report.mismatches.len());
            s
        }
    };
    emit(&args.out, &out)?;
    if report.mismatches.is_empty() && report.decoder_failures == 0 {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

pub fn normal_form(args: &FileArgs) -> Outcome {
    let m = parse_matrix_file(&read(&args.input)?)?;
    let nf = skew_normal_form(&m)?;
    let reduced = nf.transform.transpose().mul(&m).mul(&nf.transform);
    let canonical = canonical_skew_form(m.field(), m.rows(), nf.rank);
    if reduced != canonical {
        eprintln!("error: P^T M P does not match the canonical form");
        return Err(Failure::Mismatch);
    }
    let out = match args.out.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Result<'a> {
                rank: usize,
                transform: &'a Matrix,
                canonical: &'a Matrix,
            }
            let input: Value = msgkit::io::matrix_file_value(&m);
            to_json(&envelope(
                "normal-form",
                Some(m.field()),
                None,
                input,
                Result {
                    rank: nf.rank,
                    transform: &nf.transform,
                    canonical: &reduced,
                },
            ))?
        }
        Format::Plain | Format::Csv => format!(
            "rank {}\nP:\n{}P^T M P:\n{}",
            nf.rank,
            matrix_text(&nf.transform),
            matrix_text(&reduced)
        ),
    };
    emit(&args.out, &out)
}
