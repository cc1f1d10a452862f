//! trumpkit: exact majorization and trumping checks from the command line.
//!
//! Every result is printed as one JSON document on stdout. Exit status is
//! 0 when the relation holds or the object was constructed, 1 when it
//! fails or nothing was found, and 2 on usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use trumpkit::rational::{to_f64, to_ratio_string};
use trumpkit::report::{certificate_json, report_json};
use trumpkit::{
    boundary_witness, classify, ds_witness, find_catalyst, geometric_catalyst, majorizes,
    nonuniform_demo, normalize, pad_zeros, parse_rational, ray_probe, sample_region,
    separating_example, sort_desc, trumps_with, write_region_csv, CertificateDocument, Error,
    ProbVec, SearchConfig, SearchStatus, SeparationWitness, VectorDocument,
};

#[derive(Parser)]
#[command(
    name = "trumpkit",
    version,
    about = "Exact majorization and catalytic majorization (trumping) of probability vectors",
    long_about = "Vectors are given inline as comma lists (`0.4,0.4,1/10,1/10`) or as paths to\n\
                  JSON files of the form {\"name\": \"y\", \"components\": [\"1/2\", \"0.25\", ...]}.\n\
                  Decimals are read as exact rationals. Set TRUMPKIT_THREADS to bound the\n\
                  number of worker threads.",
    after_help = "EXAMPLES:\n\
                  \n  trumpkit majorize 0.4,0.4,0.1,0.1 0.5,0.25,0.25,0\
                  \n  trumpkit trump 0.4,0.4,0.1,0.1 0.5,0.25,0.25,0 0.6,0.4\
                  \n  trumpkit find-catalyst 0.4,0.4,0.1,0.1 0.5,0.25,0.25,0 --kmax 3\
                  \n  trumpkit sample-region 0.5,0.25,0.25,0 --n 500 --kmax 3 --out region.csv"
)]
struct Cli {
    /// Divide raw nonnegative weights by their sum instead of requiring sum 1
    #[arg(long, global = true)]
    normalize: bool,
    /// Pad the shorter of X and Y with zeros when their lengths differ
    #[arg(long, global = true)]
    pad: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide x ≺ y and report every prefix gap
    Majorize {
        x: String,
        y: String,
        /// Include a T-transform chain and doubly stochastic matrix when x ≺ y
        #[arg(long)]
        witness: bool,
    },
    /// Decide x ⊗ z ≺ y ⊗ z, or re-verify a saved certificate
    Trump {
        x: Option<String>,
        y: Option<String>,
        z: Option<String>,
        /// Certificate JSON to re-check instead of X Y Z
        #[arg(long, value_name = "FILE", conflicts_with_all = ["x", "y", "z"])]
        certificate: Option<PathBuf>,
    },
    /// Report whether any catalyst can help for target y
    Classify { y: String },
    /// Build the boundary point trumped but lying on the edge of the majorized set
    Witness { y: String },
    /// Build the geometric catalyst that makes every tensor gap strict
    GeoCatalyst { x: String, y: String },
    /// Build a vector trumped by y but not majorized by it
    Separate { y: String },
    /// Build a pair separated by the given non-uniform catalyst
    DemoNonuniform { z: String },
    /// Search for a catalyst of dimension 1..=kmax and certify it exactly
    FindCatalyst {
        x: String,
        y: String,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = SearchConfig::default().restarts)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SearchConfig::default().max_denominator)]
        max_denominator: u64,
    },
    /// Certified bounds on how far a ray stays trumped, per catalyst dimension
    RayProbe {
        y: String,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a labeled sample of the simplex around y as CSV
    SampleRegion {
        y: String,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

/// Successful run: the JSON report and whether the relation held.
struct Outcome {
    report: Value,
    holds: bool,
}

impl Outcome {
    fn new(holds: bool, report: Value) -> Self {
        Outcome { report, holds }
    }
}

fn read_vector(arg: &str, normalize_input: bool) -> anyhow::Result<ProbVec> {
    let path = Path::new(arg);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let doc: VectorDocument = serde_json::from_str(&text)
            .with_context(|| format!("parsing vector document {}", path.display()))?;
        return doc
            .to_prob_vec(normalize_input)
            .with_context(|| format!("vector in {}", path.display()));
    }
    let comps = arg
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("`{arg}` is neither a file nor a comma list of numbers"))?;
    let v = if normalize_input {
        normalize(&comps)
    } else {
        ProbVec::new(comps)
    };
    v.with_context(|| format!("vector `{arg}`"))
}

fn separation_json(w: &SeparationWitness) -> Value {
    json!({
        "verdict": true,
        "x_prime": w.x_prime.to_strings(),
        "y": w.y.to_strings(),
        "not_majorized": report_json(&w.not_majorized_proof),
        "gaps": w.certificate.report.prefix_gaps.iter().map(to_ratio_string).collect::<Vec<_>>(),
        "tight_indices": w.certificate.report.tight_indices,
        "certificate": certificate_json(&w.certificate),
    })
}

/// Errors that mean "nothing to construct for this input" rather than bad input.
fn not_found(e: &Error) -> Option<Outcome> {
    match e {
        Error::NotUseful | Error::UniformCatalyst => Some(Outcome::new(
            false,
            json!({ "verdict": false, "reason": e.to_string() }),
        )),
        _ => None,
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let vec = |s: &str| read_vector(s, cli.normalize);
    let pair = |a: &str, b: &str| -> anyhow::Result<(ProbVec, ProbVec)> {
        let (x, y) = (vec(a)?, vec(b)?);
        if x.dim() == y.dim() || !cli.pad {
            return Ok((x, y));
        }
        let d = x.dim().max(y.dim());
        Ok((pad_zeros(&x, d)?, pad_zeros(&y, d)?))
    };

    Ok(match cli.command {
        Command::Majorize {
            ref x,
            ref y,
            witness,
        } => {
            let (x, y) = pair(x, y)?;
            let r = majorizes(&x, &y)?;
            let mut report = report_json(&r);
            report["violations"] = json!(r.violations());
            if witness && r.verdict {
                let w = ds_witness(&sort_desc(&x), &sort_desc(&y))?;
                report["witness"] = json!({
                    "transforms": w.transforms.iter().map(|t| json!({
                        "i": t.i + 1,
                        "j": t.j + 1,
                        "lambda": to_ratio_string(&t.lambda),
                    })).collect::<Vec<_>>(),
                    "matrix": w.matrix.entries().iter()
                        .map(|row| row.iter().map(to_ratio_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                });
            }
            Outcome::new(r.verdict, report)
        }
        Command::Trump {
            ref x,
            ref y,
            ref z,
            ref certificate,
        } => {
            if let Some(path) = certificate {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let doc: CertificateDocument = serde_json::from_str(&text)
                    .with_context(|| format!("parsing certificate {}", path.display()))?;
                return match doc.verify() {
                    Ok(c) => Ok(Outcome::new(true, trump_json(&c))),
                    Err(Error::NotTrumped) | Err(Error::VerificationFailed(_)) => {
                        Ok(Outcome::new(false, json!({ "verdict": false })))
                    }
                    Err(e) => Err(e.into()),
                };
            }
            let (Some(x), Some(y), Some(z)) = (x, y, z) else {
                bail!("trump needs X Y Z or --certificate FILE");
            };
            let (x, y) = pair(x, y)?;
            let z = vec(z)?;
            match trumps_with(&x, &y, &z)? {
                Some(c) => Outcome::new(true, trump_json(&c)),
                None => {
                    let r = majorizes(&trumpkit::tensor(&x, &z), &trumpkit::tensor(&y, &z))?;
                    let mut report = report_json(&r);
                    report["violations"] = json!(r.violations());
                    Outcome::new(false, report)
                }
            }
        }
        Command::Classify { ref y } => {
            let c = classify(&vec(y)?);
            Outcome::new(
                c.useful,
                json!({ "useful": c.useful, "d1": c.d1, "d2": c.d2, "l": c.l, "m": c.m }),
            )
        }
        Command::Witness { ref y } => {
            let y = vec(y)?;
            match boundary_witness(&y) {
                Ok(x) => {
                    let r = majorizes(&x, &y)?;
                    let mut report = report_json(&r);
                    report["x"] = json!(x.to_strings());
                    report["y"] = json!(y.to_strings());
                    Outcome::new(true, report)
                }
                Err(e) => not_found(&e).ok_or_else(|| anyhow!(e))?,
            }
        }
        Command::GeoCatalyst { ref x, ref y } => {
            let (x, y) = pair(x, y)?;
            let g = geometric_catalyst(&sort_desc(&x), &sort_desc(&y))?;
            let mut report = trump_json(&g.certificate);
            report["alpha"] = json!(to_ratio_string(&g.alpha));
            report["k"] = json!(g.k);
            report["z"] = json!(g.z.to_strings());
            Outcome::new(true, report)
        }
        Command::Separate { ref y } => match separating_example(&vec(y)?) {
            Ok(w) => Outcome::new(true, separation_json(&w)),
            Err(e) => not_found(&e).ok_or_else(|| anyhow!(e))?,
        },
        Command::DemoNonuniform { ref z } => match nonuniform_demo(&vec(z)?) {
            Ok(w) => Outcome::new(true, separation_json(&w)),
            Err(e) => not_found(&e).ok_or_else(|| anyhow!(e))?,
        },
        Command::FindCatalyst {
            ref x,
            ref y,
            kmax,
            restarts,
            seed,
            max_denominator,
        } => {
            let (x, y) = pair(x, y)?;
            let config = SearchConfig {
                restarts,
                seed,
                max_denominator,
                ..SearchConfig::default()
            };
            let r = find_catalyst(&x, &y, kmax, &config)?;
            let found = r.status == SearchStatus::CertifiedFound;
            let mut report = match &r.certificate {
                Some(c) => trump_json(c),
                None => json!({ "verdict": false, "gaps": [], "tight_indices": [] }),
            };
            report["status"] = json!(r.status);
            report["k"] = json!(r.k);
            report["f_value"] = json!(r.f_value);
            report["z_float"] = json!(r.z_float);
            report["ruled_out_by_extremes"] = json!(r.ruled_out_by_extremes);
            Outcome::new(found, report)
        }
        Command::RayProbe { ref y, k, seed } => {
            let config = SearchConfig {
                seed,
                ..SearchConfig::default()
            };
            let p = ray_probe(&vec(y)?, k, &config)?;
            let bounds: Vec<Value> = p
                .bounds
                .iter()
                .map(|b| {
                    json!({
                        "k": b.k,
                        "t": to_ratio_string(&b.t),
                        "t_float": to_f64(&b.t),
                        "certificate": certificate_json(&b.certificate),
                    })
                })
                .collect();
            Outcome::new(
                true,
                json!({ "x": p.x.to_strings(), "w": p.w.to_strings(), "bounds": bounds }),
            )
        }
        Command::SampleRegion {
            ref y,
            n,
            kmax,
            seed,
            ref out,
        } => {
            let y = vec(y)?;
            let records = sample_region(&y, kmax, n, seed, &SearchConfig::default())?;
            write_region_csv(out, &y, &records, kmax, seed)?;
            let mut by_k = vec![0usize; kmax];
            for r in &records {
                if let Some(k) = r.catalyst_dim_found {
                    by_k[k - 1] += 1;
                }
            }
            Outcome::new(
                true,
                json!({
                    "records": records.len(),
                    "in_s": records.iter().filter(|r| r.in_s).count(),
                    "first_catalyst_dim_counts": by_k,
                    "out": out.display().to_string(),
                }),
            )
        }
    })
}

fn trump_json(c: &trumpkit::TrumpCertificate) -> Value {
    let mut report = report_json(&c.report);
    report["certificate"] = certificate_json(c);
    report
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("TRUMPKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow!("TRUMPKIT_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("configuring worker threads")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(outcome) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome.report).expect("plain data serializes")
            );
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
