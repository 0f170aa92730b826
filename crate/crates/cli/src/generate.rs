use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use knotsum::generate::{Generator, DEFAULT_BUDGET};
use knotsum::TangleSign;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Prime alternating closure of a random rational tangle.
    AlternatingRational,
    /// Tangle cut from a prime alternating diagram, both closures prime.
    StronglyAlternatingTangle,
    /// Conway sum of strongly alternating tangles.
    ConwaySum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Signs {
    Positive,
    Negative,
    Mixed,
}

#[derive(Clone, Debug)]
pub struct Params {
    pub kind: Kind,
    pub crossings: usize,
    pub lo: usize,
    pub hi: usize,
    pub tangles: usize,
    pub signs: Signs,
    pub count: usize,
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
pub struct Instance {
    pub index: usize,
    pub crossings: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub continued_fraction: Option<Vec<i64>>,
    /// PD code for diagrams, tangle text for tangles, one tangle per line for sums.
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
}

#[derive(Serialize)]
pub struct GenerateReport {
    pub kind: Kind,
    pub count: usize,
    pub instances: Vec<Instance>,
}

fn sign_for(signs: Signs, i: usize) -> TangleSign {
    match signs {
        Signs::Positive => TangleSign::Positive,
        Signs::Negative => TangleSign::Negative,
        Signs::Mixed if i % 2 == 0 => TangleSign::Positive,
        Signs::Mixed => TangleSign::Negative,
    }
}

fn one(p: &Params, g: &mut Generator, index: usize) -> Result<Instance> {
    match p.kind {
        Kind::AlternatingRational => {
            for _ in 0..DEFAULT_BUDGET {
                let (a, t) = g.alternating_rational(p.crossings)?;
                let d = t.numerator_closure();
                if d.is_alternating() && d.is_prime() == Ok(true) {
                    return Ok(Instance {
                        index,
                        crossings: d.crossing_count(),
                        components: Some(d.component_count()),
                        continued_fraction: Some(a),
                        text: d.emit_pd(),
                        file: None,
                    });
                }
            }
            bail!(
                "no prime alternating rational closure with {} crossings in {DEFAULT_BUDGET} attempts",
                p.crossings
            )
        }
        Kind::StronglyAlternatingTangle => {
            let t = g.strongly_alternating_tangle(p.lo, p.hi, sign_for(p.signs, index))?;
            Ok(Instance {
                index,
                crossings: t.crossing_count(),
                components: None,
                continued_fraction: None,
                text: t.emit(),
                file: None,
            })
        }
        Kind::ConwaySum => {
            let tangles = (0..p.tangles)
                .map(|i| g.strongly_alternating_tangle(p.lo, p.hi, sign_for(p.signs, i)))
                .collect::<knotsum::Result<Vec<_>>>()?;
            let d = knotsum::diagram::conway_sum(&tangles)?;
            let text: Vec<String> = tangles.iter().map(|t| t.emit()).collect();
            Ok(Instance {
                index,
                crossings: d.crossing_count(),
                components: Some(d.component_count()),
                continued_fraction: None,
                text: text.join("\n"),
                file: None,
            })
        }
    }
}

fn extension(kind: Kind) -> &'static str {
    match kind {
        Kind::AlternatingRational => "pd",
        Kind::StronglyAlternatingTangle => "tangle",
        Kind::ConwaySum => "sum",
    }
}

fn validate(p: &Params) -> Result<()> {
    if p.count == 0 {
        bail!("count must be at least 1");
    }
    match p.kind {
        Kind::AlternatingRational if p.crossings == 0 => bail!("size 0 requested"),
        Kind::AlternatingRational if p.crossings < 3 => {
            bail!("no prime alternating diagram has {} crossings", p.crossings)
        }
        Kind::StronglyAlternatingTangle | Kind::ConwaySum if p.lo == 0 || p.hi < p.lo => {
            bail!("crossing range {}..={} is empty", p.lo, p.hi)
        }
        Kind::ConwaySum if p.tangles == 0 => bail!("size 0 requested"),
        _ => Ok(()),
    }
}

/// Instance `i` draws from stream `i` of the seed, so output does not depend
/// on scheduling.
pub fn run(p: &Params, seed: u64) -> Result<GenerateReport> {
    validate(p)?;
    let root = Generator::new(seed);
    let mut instances = (0..p.count)
        .into_par_iter()
        .map(|i| one(p, &mut root.split(i as u64), i))
        .collect::<Result<Vec<_>>>()?;
    if let Some(dir) = &p.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for inst in &mut instances {
            let name = format!("{}-{seed}-{}.{}", kind_name(p.kind), inst.index, extension(p.kind));
            let path: PathBuf = Path::new(dir).join(name);
            std::fs::write(&path, format!("{}\n", inst.text)).with_context(|| format!("writing {}", path.display()))?;
            inst.file = Some(path.display().to_string());
        }
    }
    Ok(GenerateReport {
        kind: p.kind,
        count: p.count,
        instances,
    })
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::AlternatingRational => "alternating-rational",
        Kind::StronglyAlternatingTangle => "strongly-alternating-tangle",
        Kind::ConwaySum => "conway-sum",
    }
}
