use anyhow::{bail, Result};
use clap::Subcommand;
use knotsum::bounds::{
    census, census_lookup, conway_sum_bounds, dehn_filling_factor, enumerate_short_slopes, jones_volume_bounds,
    periodic_alternating_bound, periodic_classify, periodic_lower_bound, psi, CensusEntry, Classification, CuspLattice,
    LensSpace, Quotient, Slope,
};
use serde::Serialize;

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Per-period volume function psi(x).
    Psi {
        #[arg(long)]
        x: f64,
    },
    /// Dehn filling volume factor for a minimal slope length.
    Filling {
        #[arg(long)]
        length: f64,
    },
    /// Volume bound for a link with free period p.
    Periodic {
        #[arg(long)]
        p: u64,
        /// Census name of the quotient.
        #[arg(long, conflicts_with = "volume")]
        manifold: Option<String>,
        /// Lens space filling such as "L(10,3)".
        #[arg(long, requires = "manifold")]
        lens: Option<LensSpace>,
        /// Quotient volume, when the quotient is not named.
        #[arg(long)]
        volume: Option<f64>,
        /// Twist number of a prime alternating quotient diagram.
        #[arg(long, conflicts_with_all = ["manifold", "volume"])]
        quotient_tw: Option<u64>,
    },
    /// Volume interval for a Conway sum of n tangles with twist number tw.
    Conway {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        tw: u64,
    },
    /// The Conway-sum interval in terms of |beta| + |beta'|.
    Jones {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        beta_sum: u64,
    },
    /// Slopes on the 3-chain link cusp of length at most the cutoff.
    Slopes {
        #[arg(long, default_value_t = 12.0)]
        cutoff: f64,
    },
    /// Small-volume census table, optionally filtered by name or lens space.
    Census {
        #[arg(long)]
        key: Option<String>,
    },
}

#[derive(Serialize)]
pub struct SlopeRow {
    pub slope: Slope,
    pub length_squared: String,
    pub length: f64,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum BoundsResult {
    Value {
        quantity: &'static str,
        input: f64,
        value: f64,
    },
    Periodic {
        p: u64,
        classification: Classification,
        /// `p·vol·factor(p·2^(1/4))` when only the quotient volume is known.
        #[serde(skip_serializing_if = "Option::is_none")]
        filling_estimate: Option<f64>,
    },
    Interval(knotsum::bounds::BoundReport),
    Slopes {
        cutoff: f64,
        count: usize,
        slopes: Vec<SlopeRow>,
    },
    Census {
        rows: Vec<&'static CensusEntry>,
    },
}

pub fn name(cmd: &BoundsCommand) -> &'static str {
    match cmd {
        BoundsCommand::Psi { .. } => "bounds psi",
        BoundsCommand::Filling { .. } => "bounds filling",
        BoundsCommand::Periodic { .. } => "bounds periodic",
        BoundsCommand::Conway { .. } => "bounds conway",
        BoundsCommand::Jones { .. } => "bounds jones",
        BoundsCommand::Slopes { .. } => "bounds slopes",
        BoundsCommand::Census { .. } => "bounds census",
    }
}

pub fn run(cmd: &BoundsCommand) -> Result<BoundsResult> {
    Ok(match cmd {
        BoundsCommand::Psi { x } => BoundsResult::Value {
            quantity: "psi",
            input: *x,
            value: psi(*x)?,
        },
        BoundsCommand::Filling { length } => BoundsResult::Value {
            quantity: "dehn-filling-factor",
            input: *length,
            value: dehn_filling_factor(*length)?,
        },
        BoundsCommand::Periodic {
            p,
            manifold,
            lens,
            volume,
            quotient_tw,
        } => periodic(*p, manifold.clone(), *lens, *volume, *quotient_tw)?,
        BoundsCommand::Conway { n, tw } => BoundsResult::Interval(conway_sum_bounds(*n, *tw)?),
        BoundsCommand::Jones { n, beta_sum } => BoundsResult::Interval(jones_volume_bounds(*n, *beta_sum)?),
        BoundsCommand::Slopes { cutoff } => {
            let lattice = CuspLattice::three_chain();
            let slopes: Vec<SlopeRow> = enumerate_short_slopes(&lattice, *cutoff)?
                .into_iter()
                .map(|s| SlopeRow {
                    slope: s,
                    length_squared: lattice.length_squared(s.p, s.q).to_string(),
                    length: lattice.length(s),
                })
                .collect();
            BoundsResult::Slopes {
                cutoff: *cutoff,
                count: slopes.len(),
                slopes,
            }
        }
        BoundsCommand::Census { key } => BoundsResult::Census {
            rows: match key {
                Some(k) => census_lookup(k)?,
                None => census().iter().collect(),
            },
        },
    })
}

fn periodic(
    p: u64,
    manifold: Option<String>,
    lens: Option<LensSpace>,
    volume: Option<f64>,
    quotient_tw: Option<u64>,
) -> Result<BoundsResult> {
    let (classification, filling_estimate) = match (manifold, volume, quotient_tw) {
        (Some(m), None, None) => (periodic_classify(p, &Quotient::Filling { manifold: m, lens })?, None),
        (None, Some(v), None) => (
            periodic_classify(p, &Quotient::Volume(v))?,
            Some(periodic_lower_bound(p, v)?),
        ),
        (None, None, Some(tw)) => (
            Classification::Bound {
                value: periodic_alternating_bound(p, tw)?,
                sharp: false,
            },
            None,
        ),
        _ => bail!("give exactly one of --manifold, --volume or --quotient-tw"),
    };
    Ok(BoundsResult::Periodic {
        p,
        classification,
        filling_estimate,
    })
}
