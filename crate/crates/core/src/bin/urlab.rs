//! Command-line front door: build, analyze and normalize representations
//! from JSON, run the verification sweeps, and emit reports.
//!
//! Exit codes: `0` all checks pass, `1` a mathematical check failed (the
//! counterexample is written next to the report), `2` invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use urlab::error::Error;
use urlab::rational::Rational;
use urlab::report::{
    render_analysis, render_length_bound, render_roundtrip, render_sl2, render_sweep,
    ReportFormat,
};
use urlab::sampler::DEFAULT_SEED;
use urlab::schema::{
    rep_from_file, rep_to_file, run_lidep, AnalysisReportDto, LidepPayload, RepFile,
};
use urlab::sweep::{
    classification_roundtrip, crosscheck_sl2, faithful_sweep, length_bound_scan, SweepConfig,
};

#[derive(Parser)]
#[command(
    name = "urlab",
    about = "Exact verification of uniserial representations of <x> |x L(V)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Output path; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Report format.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct SeedOpt {
    /// Sampling seed; URLAB_SEED overrides the built-in default.
    #[arg(long)]
    seed: Option<u64>,
}

impl SeedOpt {
    fn resolve(&self) -> u64 {
        self.seed
            .or_else(|| {
                std::env::var("URLAB_SEED")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or(DEFAULT_SEED)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a representation from a parameter file and write it with images.
    Build {
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Analyze a representation file: length, uniseriality, kernel flags.
    Analyze {
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Canonically normalize a representation file.
    Normalize {
        input: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Compare the faithfulness flag with the block-size characterization
    /// over a seeded parameter grid.
    SweepFaithful {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        /// Comma-separated rational values.
        #[arg(long, default_value = "0,1,-1/2", value_parser = parse_rational_list)]
        alphas: std::vec::Vec<Rational>,
        #[arg(long, default_value = "1,2,-1/3", value_parser = parse_rational_list)]
        lambdas: std::vec::Vec<Rational>,
        #[command(flatten)]
        seed: SeedOpt,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Conjugate, renormalize and compare normalized data; test pairwise
    /// non-isomorphism of distinct normalized representations.
    Roundtrip {
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        samples: usize,
        #[arg(long, default_value = "0,1", value_parser = parse_rational_list)]
        alphas: std::vec::Vec<Rational>,
        #[arg(long, default_value = "1,-1/3", value_parser = parse_rational_list)]
        lambdas: std::vec::Vec<Rational>,
        #[command(flatten)]
        seed: SeedOpt,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Check the independence predicate against its brute-force oracle.
    Lidep {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
        /// Row-major JSON matrix, e.g. '[["1"],["0"]]'.
        #[arg(long = "P")]
        p: String,
        #[arg(long = "Q")]
        q: String,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Four-block obstruction scan over all size tuples up to a bound.
    Reduccion {
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long, default_value = "1,-2,1/3", value_parser = parse_rational_list)]
        lambdas: std::vec::Vec<Rational>,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[command(flatten)]
        seed: SeedOpt,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Build the 6-dimensional tensor module and match it to its three-block
    /// form.
    CrosscheckSl2 {
        #[command(flatten)]
        seed: SeedOpt,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn parse_rational_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .map(|tok| tok.trim().parse::<Rational>().map_err(|e| e.to_string()))
        .collect()
}

enum Outcome {
    Pass,
    MathFail(String),
}

fn emit(out: &OutputOpts, text: &str) -> Result<(), Error> {
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn counterexample_path(out: &OutputOpts) -> PathBuf {
    match &out.output {
        Some(p) => {
            let mut name = p.file_name().unwrap_or_default().to_os_string();
            name.push(".counterexamples.json");
            p.with_file_name(name)
        }
        None => PathBuf::from("counterexamples.json"),
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Build { input, out } => {
            let file: RepFile = serde_json::from_str(&std::fs::read_to_string(&input)?)?;
            let rep = rep_from_file(&file)?;
            let text = serde_json::to_string_pretty(&rep_to_file(&rep)?)?;
            emit(&out, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Analyze { input, out } => {
            let format: ReportFormat = out.format.parse()?;
            let file: RepFile = serde_json::from_str(&std::fs::read_to_string(&input)?)?;
            let rep = rep_from_file(&file)?;
            let report = urlab::analysis::kernel_and_flags(&rep)?;
            let dto = AnalysisReportDto::from_report(&report);
            emit(&out, &render_analysis(&dto, format)?)?;
            Ok(Outcome::Pass)
        }
        Command::Normalize { input, out } => {
            let file: RepFile = serde_json::from_str(&std::fs::read_to_string(&input)?)?;
            let rep = rep_from_file(&file)?;
            let (normalized, _conjugator) = urlab::rep::normalize(&rep)?;
            let text = serde_json::to_string_pretty(&rep_to_file(&normalized)?)?;
            emit(&out, &text)?;
            Ok(Outcome::Pass)
        }
        Command::SweepFaithful {
            n_min,
            n_max,
            samples,
            alphas,
            lambdas,
            seed,
            out,
        } => {
            let format: ReportFormat = out.format.parse()?;
            let cfg = SweepConfig {
                n_min,
                n_max,
                alpha_set: alphas,
                lambda_set: lambdas,
                seed: seed.resolve(),
                samples_per_cell: samples,
            };
            let report = faithful_sweep(&cfg)?;
            emit(&out, &render_sweep(&report, format)?)?;
            if report.pass {
                Ok(Outcome::Pass)
            } else {
                let side = counterexample_path(&out);
                std::fs::write(&side, serde_json::to_string_pretty(&report.counterexamples)?)?;
                Ok(Outcome::MathFail(format!(
                    "{} cells disagree; counterexamples written to {}",
                    report.counterexamples.len(),
                    side.display()
                )))
            }
        }
        Command::Roundtrip {
            n_min,
            n_max,
            samples,
            alphas,
            lambdas,
            seed,
            out,
        } => {
            let format: ReportFormat = out.format.parse()?;
            let cfg = SweepConfig {
                n_min,
                n_max,
                alpha_set: alphas,
                lambda_set: lambdas,
                seed: seed.resolve(),
                samples_per_cell: samples,
            };
            let report = classification_roundtrip(&cfg)?;
            emit(&out, &render_roundtrip(&report, format)?)?;
            if report.pass {
                Ok(Outcome::Pass)
            } else {
                let side = counterexample_path(&out);
                let bad: Vec<_> = report.trials.iter().filter(|t| !t.recovered).collect();
                std::fs::write(&side, serde_json::to_string_pretty(&bad)?)?;
                Ok(Outcome::MathFail(format!(
                    "roundtrip failures written to {}",
                    side.display()
                )))
            }
        }
        Command::Lidep { a, b, c, p, q, out } => {
            let format: ReportFormat = out.format.parse()?;
            let payload = LidepPayload {
                a,
                b,
                c,
                p: serde_json::from_str(&p)?,
                q: serde_json::from_str(&q)?,
            };
            let result = run_lidep(&payload)?;
            let text = match format {
                ReportFormat::Json => serde_json::to_string_pretty(&result)?,
                _ => format!(
                    "predict: {}\nbruteforce: {}\nagree: {}",
                    result.predict, result.bruteforce, result.agree
                ),
            };
            emit(&out, &text)?;
            if result.agree {
                Ok(Outcome::Pass)
            } else {
                let side = counterexample_path(&out);
                std::fs::write(&side, serde_json::to_string_pretty(&payload)?)?;
                Ok(Outcome::MathFail(format!(
                    "predicate and oracle disagree; payload written to {}",
                    side.display()
                )))
            }
        }
        Command::Reduccion {
            dmax,
            lambdas,
            samples,
            seed,
            out,
        } => {
            let format: ReportFormat = out.format.parse()?;
            let report = length_bound_scan(dmax, &lambdas, seed.resolve(), samples)?;
            emit(&out, &render_length_bound(&report, format)?)?;
            if report.pass {
                Ok(Outcome::Pass)
            } else {
                let side = counterexample_path(&out);
                std::fs::write(&side, serde_json::to_string_pretty(&report.counterexamples)?)?;
                Ok(Outcome::MathFail(format!(
                    "obstruction mismatches written to {}",
                    side.display()
                )))
            }
        }
        Command::CrosscheckSl2 { seed, out } => {
            let format: ReportFormat = out.format.parse()?;
            let report = crosscheck_sl2(seed.resolve())?;
            emit(&out, &render_sl2(&report, format)?)?;
            if report.pass {
                Ok(Outcome::Pass)
            } else {
                Ok(Outcome::MathFail("tensor-module crosscheck failed".into()))
            }
        }
    }
}

/// Errors that mean a mathematical check failed on structurally valid input,
/// as opposed to input that could not be interpreted at all.
fn is_math_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::RepresentationCheckFailed { .. } | Error::FamilyHypothesis(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::from(0),
        Ok(Outcome::MathFail(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(e) if is_math_failure(&e) => {
            eprintln!("check failed: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
