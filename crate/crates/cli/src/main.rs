//! `knotsum`: analyze link diagrams and Conway sums, generate random
//! instances and evaluate volume bounds. Reports are JSON (schema
//! `knotsum-report/1`) or an indented text view of the same document.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when a cross-check fails
//! or an internal invariant is violated.

mod analysis;
mod bounds;
mod generate;
mod report;
mod sum;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use knotsum::diagram::{parse_pd, parse_tangle};
use knotsum::generate::rational_tangle;
use knotsum::jones::DEFAULT_STATE_SUM_CAP;
use knotsum::TangleDiagram;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{Document, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "knotsum",
    version,
    about = "Twist numbers, Jones polynomials and volume bounds for Conway sums"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Seed for instance generation.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Largest crossing count for the brute-force state-sum cross-check.
    #[arg(long, env = "KNOTSUM_STATE_SUM_CAP", default_value_t = DEFAULT_STATE_SUM_CAP, global = true)]
    state_sum_cap: usize,
    /// Slack for floating-point comparisons in cross-checks.
    #[arg(long, default_value_t = knotsum::bounds::TOLERANCE, global = true)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze link diagrams given as PD files or inline PD text.
    Analyze {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// Conway sum of tangles, in order. Each argument is a file holding one
    /// tangle per line, inline tangle text, or `rational:a1,a2,...`.
    Sum {
        #[arg(required = true)]
        tangles: Vec<String>,
    },
    /// Write reproducible random instances.
    Generate {
        #[arg(value_enum)]
        kind: generate::Kind,
        /// Crossings of an alternating-rational diagram.
        #[arg(long, default_value_t = 6)]
        crossings: usize,
        /// Smallest diagram a tangle is cut from.
        #[arg(long, default_value_t = 4)]
        lo: usize,
        /// Largest diagram a tangle is cut from.
        #[arg(long, default_value_t = 8)]
        hi: usize,
        /// Tangles per Conway sum.
        #[arg(long, short = 'n', default_value_t = 2)]
        tangles: usize,
        #[arg(long, value_enum, default_value_t = generate::Signs::Mixed)]
        signs: generate::Signs,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Directory for one file per instance.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form volume estimates and census data.
    Bounds {
        #[command(subcommand)]
        which: bounds::BoundsCommand,
    },
}

/// A failed check inside an otherwise complete report.
struct CheckFailure;

fn read_source(arg: &str) -> Result<(String, String)> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        Ok((arg.to_string(), text))
    } else {
        Ok(("inline".to_string(), arg.to_string()))
    }
}

fn parse_tangle_arg(arg: &str) -> Result<Vec<(String, TangleDiagram)>> {
    if let Some(list) = arg.strip_prefix("rational:") {
        let a = list
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("malformed continued fraction `{list}`"))?;
        if a.is_empty() || a.iter().all(|&x| x == 0) {
            anyhow::bail!("continued fraction `{list}` has no crossings");
        }
        return Ok(vec![(arg.to_string(), rational_tangle(&a))]);
    }
    let (label, text) = read_source(arg)?;
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if lines.is_empty() {
        anyhow::bail!("{label}: no tangle found");
    }
    lines
        .iter()
        .enumerate()
        .map(|(i, line)| {
            let name = if lines.len() == 1 {
                label.clone()
            } else {
                format!("{label}:{}", i + 1)
            };
            let t = parse_tangle(line).with_context(|| format!("{name}: cannot parse tangle"))?;
            Ok((name, t))
        })
        .collect()
}

#[derive(Serialize)]
struct AnalyzeItem {
    input: String,
    #[serde(flatten)]
    analysis: analysis::Analysis,
}

fn analyze(inputs: &[String], settings: Settings) -> Result<Vec<AnalyzeItem>> {
    inputs
        .par_iter()
        .map(|arg| {
            let (label, text) = read_source(arg)?;
            let d = parse_pd(&text).with_context(|| format!("{label}: cannot parse PD code"))?;
            let analysis = analysis::analyze_diagram(&d, None, settings).with_context(|| format!("{label}"))?;
            Ok(AnalyzeItem { input: label, analysis })
        })
        .collect()
}

fn emit<T: Serialize>(doc: &Document<T>, format: Format) -> Result<bool> {
    let value = serde_json::to_value(doc)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value)?),
        Format::Text => print!("{}", report::render_text(&value)),
    }
    Ok(report::has_failure(&value))
}

fn run(cli: Cli) -> Result<std::result::Result<(), CheckFailure>> {
    let settings = Settings {
        state_sum_cap: cli.state_sum_cap,
        tolerance: cli.tolerance,
    };
    let failed = match &cli.command {
        Command::Analyze { inputs } => {
            let items = analyze(inputs, settings)?;
            emit(&Document::new("analyze", None, settings, items), cli.format)?
        }
        Command::Sum { tangles } => {
            let mut all = Vec::new();
            for arg in tangles {
                all.extend(parse_tangle_arg(arg)?);
            }
            let r = sum::run(all, settings)?;
            emit(&Document::new("sum", None, settings, r), cli.format)?
        }
        Command::Generate {
            kind,
            crossings,
            lo,
            hi,
            tangles,
            signs,
            count,
            out,
        } => {
            let params = generate::Params {
                kind: *kind,
                crossings: *crossings,
                lo: *lo,
                hi: *hi,
                tangles: *tangles,
                signs: *signs,
                count: *count,
                out: out.clone(),
            };
            let r = generate::run(&params, cli.seed)?;
            emit(&Document::new("generate", Some(cli.seed), settings, r), cli.format)?
        }
        Command::Bounds { which } => {
            let r = bounds::run(which)?;
            emit(&Document::new(bounds::name(which), None, settings, r), cli.format)?
        }
    };
    Ok(if failed { Err(CheckFailure) } else { Ok(()) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors are input errors; help and version are not errors
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CheckFailure)) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e
                .chain()
                .any(|c| matches!(c.downcast_ref::<knotsum::Error>(), Some(knotsum::Error::Internal(_))));
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}
