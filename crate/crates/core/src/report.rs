//! Deterministic human-readable rendering of sweep and analysis reports:
//! markdown tables and CSV with a fixed column set, byte-stable for a given
//! report.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::schema::AnalysisReportDto;
use crate::sweep::{LengthBoundReport, RoundtripReport, Sl2Report, SweepReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Md,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "md" => Ok(ReportFormat::Md),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

/// One aggregated row per `(n, (a,b,c))`: seed count, expected and observed
/// faithfulness (observed is "mixed" if samples disagree).
struct SweepRow {
    n: usize,
    abc: [usize; 3],
    expected: &'static str,
    observed: String,
    seeds: usize,
    pass: bool,
}

fn sweep_rows(report: &SweepReport) -> Vec<SweepRow> {
    let mut keys: Vec<(usize, [usize; 3])> = report.cells.iter().map(|c| (c.n, c.abc)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .map(|(n, abc)| {
            let cells: Vec<_> = report
                .cells
                .iter()
                .filter(|c| c.n == n && c.abc == abc)
                .collect();
            let expected = if cells[0].expected_faithful {
                "faithful"
            } else {
                "not faithful"
            };
            let all = cells.iter().all(|c| c.flags.faithful);
            let none = cells.iter().all(|c| !c.flags.faithful);
            let observed = if all {
                "faithful".to_string()
            } else if none {
                "not faithful".to_string()
            } else {
                "mixed".to_string()
            };
            SweepRow {
                n,
                abc,
                expected,
                observed,
                seeds: cells.len(),
                pass: cells.iter().all(|c| c.pass),
            }
        })
        .collect()
}

pub fn render_sweep(report: &SweepReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)?),
        ReportFormat::Md => {
            let mut out = String::new();
            writeln!(out, "# {}", report.title).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "_{}_ (seed {})", report.evidence_note, report.seed).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "| n | (a,b,c) | expected | observed | seeds | pass |").unwrap();
            writeln!(out, "|---|---------|----------|----------|-------|------|").unwrap();
            for r in sweep_rows(report) {
                writeln!(
                    out,
                    "| {} | ({},{},{}) | {} | {} | {} | {} |",
                    r.n, r.abc[0], r.abc[1], r.abc[2], r.expected, r.observed, r.seeds, flag(r.pass)
                )
                .unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "overall: {}", flag(report.pass)).unwrap();
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut out = String::from("n,a,b,c,expected,observed,seeds,pass\n");
            for r in sweep_rows(report) {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n, r.abc[0], r.abc[1], r.abc[2], r.expected, r.observed, r.seeds, r.pass
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

pub fn render_roundtrip(report: &RoundtripReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)?),
        ReportFormat::Md => {
            let mut out = String::new();
            writeln!(out, "# {}", report.title).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "_{}_ (seed {})", report.evidence_note, report.seed).unwrap();
            writeln!(out).unwrap();
            let recovered = report.trials.iter().filter(|t| t.recovered).count();
            writeln!(
                out,
                "- conjugation/normalization trials: {} of {} recovered the normalized data",
                recovered,
                report.trials.len()
            )
            .unwrap();
            let neg = report.pairs.iter().filter(|p| p.non_isomorphic).count();
            let certified = report.pairs.iter().filter(|p| p.certified).count();
            writeln!(
                out,
                "- distinct normalized pairs: {} of {} non-isomorphic ({} certified, {} sampled)",
                neg,
                report.pairs.len(),
                certified,
                report.pairs.len() - certified
            )
            .unwrap();
            writeln!(out).unwrap();
            writeln!(out, "overall: {}", flag(report.pass)).unwrap();
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut out = String::from("n,a,b,c,alpha,lambda,sample,recovered\n");
            for t in &report.trials {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    t.n, t.abc[0], t.abc[1], t.abc[2], t.alpha, t.lambda, t.sample, t.recovered
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

pub fn render_length_bound(report: &LengthBoundReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)?),
        ReportFormat::Md => {
            let mut out = String::new();
            writeln!(out, "# {}", report.title).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "_{}_ (seed {})", report.evidence_note, report.seed).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "| sizes | lambda | sample | all (1,4) zero | expected | pass |").unwrap();
            writeln!(out, "|-------|--------|--------|----------------|----------|------|").unwrap();
            for r in &report.rows {
                writeln!(
                    out,
                    "| ({},{},{},{}) | {} | {} | {} | {} | {} |",
                    r.sizes[0],
                    r.sizes[1],
                    r.sizes[2],
                    r.sizes[3],
                    r.lambda,
                    r.sample,
                    r.all_14_blocks_zero,
                    r.expected_all_zero,
                    flag(r.pass)
                )
                .unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "overall: {}", flag(report.pass)).unwrap();
            Ok(out)
        }
        ReportFormat::Csv => {
            let mut out = String::from("d1,d2,d3,d4,lambda,sample,all_14_zero,expected,pass\n");
            for r in &report.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.sizes[0],
                    r.sizes[1],
                    r.sizes[2],
                    r.sizes[3],
                    r.lambda,
                    r.sample,
                    r.all_14_blocks_zero,
                    r.expected_all_zero,
                    r.pass
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

pub fn render_sl2(report: &Sl2Report, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)?),
        ReportFormat::Md | ReportFormat::Csv => {
            let mut out = String::new();
            writeln!(out, "# {}", report.title).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "- dimension: {}", report.dimension).unwrap();
            writeln!(out, "- faithful: {}", report.faithful).unwrap();
            writeln!(out, "- uniserial: {}", report.uniserial).unwrap();
            writeln!(out, "- length: {}", report.length).unwrap();
            writeln!(
                out,
                "- recovered blocks: ({},{},{})",
                report.recovered_abc[0], report.recovered_abc[1], report.recovered_abc[2]
            )
            .unwrap();
            writeln!(
                out,
                "- all blocks square of size 2: {}",
                report.all_blocks_square_of_size_2
            )
            .unwrap();
            writeln!(out, "- intertwiner found: {}", report.intertwiner_found).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "overall: {}", flag(report.pass)).unwrap();
            Ok(out)
        }
    }
}

pub fn render_analysis(report: &AnalysisReportDto, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)?),
        ReportFormat::Md | ReportFormat::Csv => {
            let mut out = String::new();
            writeln!(out, "| property | value |").unwrap();
            writeln!(out, "|----------|-------|").unwrap();
            writeln!(out, "| length | {} |", report.length).unwrap();
            writeln!(out, "| uniserial | {} |", report.uniserial).unwrap();
            writeln!(out, "| faithful | {} |", report.faithful).unwrap();
            writeln!(out, "| relatively faithful | {} |", report.relatively_faithful).unwrap();
            writeln!(out, "| kernel dimension | {} |", report.kernel_dim).unwrap();
            writeln!(
                out,
                "| socle layers | {} |",
                report
                    .socle_layers
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
            .unwrap();
            Ok(out)
        }
    }
}
