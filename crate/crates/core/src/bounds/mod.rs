//! Closed-form hyperbolic volume estimates for links assembled from tangles,
//! together with the data they rest on: short slopes on the 3-chain link
//! cusp and the census of small one-cusped manifolds with lens space fillings.
//!
//! All arithmetic is binary64; constants are taken at their printed precision.

mod census;
mod slopes;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{domain, Result};

pub use census::{census, census_lookup, periodic_classify, CensusEntry, Classification, LensSpace, Quotient};
pub use slopes::{enumerate_short_slopes, CuspLattice, Slope, NON_HYPERBOLIC_SLOPES};

/// Volume of the regular ideal tetrahedron.
pub const V3: f64 = 1.0149;
/// Volume of the regular ideal octahedron.
pub const V8: f64 = 3.6638;
/// Cap of the per-period volume function.
pub const PSI_CAP: f64 = 2.828;
/// Volume below which a one-cusped manifold is one of the ten census rows.
pub const SMALL_VOLUME: f64 = 2.848;
/// Volume lower bound for manifolds with at least two cusps that are not
/// fillings of small volume, used as the scale of the per-period function.
pub const PSI_SCALE: f64 = 3.647;
/// Constant of the width estimate for a twice-punctured disk.
pub const WIDTH_CONSTANT: f64 = 3.78;
/// Comparison tolerance for floating-point checks.
pub const TOLERANCE: f64 = 1e-9;

/// Every constant in one place, for reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub v3: f64,
    pub v8: f64,
    pub psi_cap: f64,
    pub small_volume: f64,
    pub psi_scale: f64,
    pub width_constant: f64,
}

impl Constants {
    pub const PRINTED: Constants = Constants {
        v3: V3,
        v8: V8,
        psi_cap: PSI_CAP,
        small_volume: SMALL_VOLUME,
        psi_scale: PSI_SCALE,
        width_constant: WIDTH_CONSTANT,
    };
}

fn fourth_root_two() -> f64 {
    2f64.powf(0.25)
}

/// `min(2.828, 3.647 (1 - 2√2π²/x²)^(3/2))`.
pub fn psi(x: f64) -> Result<f64> {
    if !(x >= 5.5) {
        return Err(domain("psi", format!("x = {x} is below 5.5")));
    }
    let inner = 1.0 - 2.0 * 2f64.sqrt() * PI * PI / (x * x);
    Ok(PSI_CAP.min(PSI_SCALE * inner.powf(1.5)))
}

/// `(1 - (2π / l_min)²)^(3/2)`, the volume ratio guaranteed by filling
/// cusps along slopes of length at least `l_min`.
pub fn dehn_filling_factor(l_min: f64) -> Result<f64> {
    if !(l_min > 2.0 * PI) {
        return Err(domain(
            "dehn_filling_factor",
            format!("slope length {l_min} is at most 2π"),
        ));
    }
    let r = 2.0 * PI / l_min;
    Ok((1.0 - r * r).powf(1.5))
}

fn check_period(op: &'static str, p: u64) -> Result<()> {
    if p < 6 {
        return Err(domain(op, format!("period {p} is below 6")));
    }
    Ok(())
}

/// `p (1 - 2√2π²/p²)^(3/2) vol(quotient)`: a meridian of the quotient has
/// length at least `p·2^(1/4)`.
pub fn periodic_lower_bound(p: u64, vol_quotient: f64) -> Result<f64> {
    check_period("periodic_lower_bound", p)?;
    if !(vol_quotient >= 0.0) {
        return Err(domain("periodic_lower_bound", "quotient volume is negative"));
    }
    let pf = p as f64;
    Ok(pf * dehn_filling_factor(pf * fourth_root_two())? * vol_quotient)
}

/// Periodic bound with the alternating estimate `v8 (tw'/2 - 1)` for the
/// quotient volume.
pub fn periodic_alternating_bound(p: u64, tw_quotient: u64) -> Result<f64> {
    check_period("periodic_alternating_bound", p)?;
    if tw_quotient < 2 {
        return Err(domain("periodic_alternating_bound", "quotient twist number is below 2"));
    }
    periodic_lower_bound(p, V8 * (tw_quotient as f64 / 2.0 - 1.0))
}

/// A lower/upper volume interval with the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    /// Which estimate produced the values.
    pub formula: &'static str,
    pub inputs: Vec<(&'static str, f64)>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    /// The unclamped lower bound was negative and has been replaced by 0.
    pub vacuous: bool,
    /// Auxiliary quantities such as the meridian length estimate.
    pub auxiliary: Vec<(&'static str, f64)>,
}

fn clamp(x: f64) -> (f64, bool) {
    if x < 0.0 {
        (0.0, true)
    } else {
        (x, false)
    }
}

/// Meridian length estimate `(11.524 + n·2^(1/4)) / 4` for a sum of `n`
/// tangles.
pub fn meridian_estimate(n: u64) -> f64 {
    (11.524 + n as f64 * fourth_root_two()) / 4.0
}

fn check_tangle_count(op: &'static str, n: u64) -> Result<()> {
    if n < 12 {
        return Err(domain(op, format!("{n} tangles; at least 12 are needed")));
    }
    Ok(())
}

/// Volume interval of a Conway sum of `n ≥ 12` strongly alternating tangles
/// without east-west twists.
pub fn conway_sum_bounds(n: u64, tw: u64) -> Result<BoundReport> {
    check_tangle_count("conway_sum_bounds", n)?;
    if tw < 3 {
        return Err(domain("conway_sum_bounds", format!("twist number {tw} is below 3")));
    }
    let l = meridian_estimate(n);
    let factor = dehn_filling_factor(l)?;
    let (lower, vacuous) = clamp(V8 / 2.0 * factor * (tw as f64 - 3.0));
    Ok(BoundReport {
        formula: "conway-sum-volume",
        inputs: vec![("n", n as f64), ("tw", tw as f64)],
        lower: Some(lower),
        upper: Some(10.0 * V3 * (tw as f64 - 1.0)),
        vacuous,
        auxiliary: vec![("meridian_estimate", l), ("filling_factor", factor)],
    })
}

/// The Conway-sum interval rewritten in terms of `|β| + |β'|`.
pub fn jones_volume_bounds(n: u64, beta_sum: u64) -> Result<BoundReport> {
    check_tangle_count("jones_volume_bounds", n)?;
    let l = meridian_estimate(n);
    let factor = dehn_filling_factor(l)?;
    let b = beta_sum as f64;
    let (lower, vacuous) = clamp(V8 / 4.0 * factor * (b - 6.0));
    Ok(BoundReport {
        formula: "jones-volume",
        inputs: vec![("n", n as f64), ("beta_sum", b)],
        lower: Some(lower),
        upper: Some(20.0 * V3 * (b + 1.5)),
        vacuous,
        auxiliary: vec![("meridian_estimate", l), ("filling_factor", factor)],
    })
}

/// `v8/2 (tw - 2)` for a prime alternating diagram.
pub fn alternating_volume_lower(tw: u64) -> Result<f64> {
    if tw < 2 {
        return Err(domain("alternating_volume_lower", "twist number is below 2"));
    }
    Ok(V8 / 2.0 * (tw as f64 - 2.0))
}

/// How filling the belt changes the closure of the tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BeltCase {
    /// Filling adds a new twist region.
    A,
    /// Filling adds crossings to an existing twist region.
    B,
}

/// Lower volume bound of the belted closure of a tangle with `tw` regions.
pub fn belted_lower(tw: u64, case: BeltCase) -> Result<f64> {
    let offset = match case {
        BeltCase::A => 1.0,
        BeltCase::B => 2.0,
    };
    if (tw as f64) < offset {
        return Err(domain(
            "belted_lower",
            format!("twist number {tw} is too small for case {case:?}"),
        ));
    }
    Ok(V8 / 2.0 * (tw as f64 - offset))
}

/// `v8/2 (tw - 3)` for a belted Conway sum.
pub fn belted_sum_lower(tw: u64) -> Result<f64> {
    if tw < 3 {
        return Err(domain("belted_sum_lower", "twist number is below 3"));
    }
    Ok(V8 / 2.0 * (tw as f64 - 3.0))
}

/// Range of the belt meridian length.
pub fn belt_meridian_range() -> (f64, f64) {
    (fourth_root_two(), 4.0)
}

/// `3.78/l + (n-1) l/4`, the cusp width estimate for a belt of meridian length `l`.
pub fn width_lower_bound(n: u64, l: f64) -> Result<f64> {
    if n < 2 {
        return Err(domain("width_lower_bound", "fewer than 2 tangles"));
    }
    let (lo, hi) = belt_meridian_range();
    if !(l >= lo - 1e-12 && l <= hi + 1e-12) {
        return Err(domain("width_lower_bound", format!("l = {l} outside [2^(1/4), 4]")));
    }
    Ok(WIDTH_CONSTANT / l + (n as f64 - 1.0) * l / 4.0)
}

/// Length cap `6(n+1)/n` for slopes of an essential twice-punctured disk
/// meeting the filled cusp `n` times, and its supremum 12.
pub fn twice_punctured_disk_slope_bound(n: u64) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(domain("twice_punctured_disk_slope_bound", "n is below 1"));
    }
    Ok((6.0 * (n as f64 + 1.0) / n as f64, 12.0))
}
