use anyhow::Result;
use knotsum::bounds::{conway_sum_bounds, jones_volume_bounds, BoundReport};
use knotsum::diagram::conway_sum;
use knotsum::jones::bracket_transfer;
use knotsum::twist::{is_east_west_twist, twist_number_tangle};
use knotsum::{TangleDiagram, TangleSign};
use serde::Serialize;

use crate::analysis::{analyze_diagram, Analysis};
use crate::report::{Check, Settings};

#[derive(Serialize)]
pub struct TangleSection {
    pub input: String,
    pub crossings: usize,
    pub sign: TangleSign,
    pub strongly_alternating: bool,
    pub east_west_twist: bool,
    pub twist_number: usize,
}

/// Indices of the summands by sign.
#[derive(Serialize)]
pub struct SignSplit {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub non_alternating: Vec<usize>,
}

#[derive(Serialize)]
pub struct SumReport {
    pub tangles: Vec<TangleSection>,
    pub sign_split: SignSplit,
    pub sum: Analysis,
    pub sum_checks: Vec<Check>,
    pub sum_bounds: Vec<BoundReport>,
}

pub fn run(inputs: Vec<(String, TangleDiagram)>, settings: Settings) -> Result<SumReport> {
    let tangles: Vec<TangleDiagram> = inputs.iter().map(|(_, t)| t.clone()).collect();
    let diagram = conway_sum(&tangles)?;
    let b = bracket_transfer(&tangles)?;
    let sum = analyze_diagram(&diagram, Some(b), settings)?;

    let sections: Vec<TangleSection> = inputs
        .iter()
        .map(|(input, t)| TangleSection {
            input: input.clone(),
            crossings: t.crossing_count(),
            sign: t.sign(),
            strongly_alternating: t.is_strongly_alternating(),
            east_west_twist: is_east_west_twist(t),
            twist_number: twist_number_tangle(t),
        })
        .collect();
    let pick = |s: TangleSign| -> Vec<usize> { (0..sections.len()).filter(|&i| sections[i].sign == s).collect() };
    let sign_split = SignSplit {
        positive: pick(TangleSign::Positive),
        negative: pick(TangleSign::Negative),
        non_alternating: pick(TangleSign::NonAlternating),
    };

    let n = tangles.len();
    let all_strong = sections.iter().all(|s| s.strongly_alternating);
    let tw = sum.twist.twist_number;
    let components = sum.diagram.components;
    let mut checks = Vec::new();

    if n < 2 {
        checks.push(Check::skipped(
            "twist-additivity",
            "a closure of one tangle can merge its twist regions",
        ));
    } else if all_strong {
        let separate: usize = sections.iter().map(|s| s.twist_number).sum();
        checks.push(Check::verdict(
            "twist-additivity",
            tw == separate,
            format!("tw of the sum {tw}, summed over tangles {separate}"),
        ));
    } else {
        checks.push(Check::skipped(
            "twist-additivity",
            "needs every tangle strongly alternating",
        ));
    }

    let beta: u64 = sum.jones.beta_sum.parse().unwrap_or(u64::MAX);
    if components != 1 {
        checks.push(Check::skipped(
            "tangle-sum-jones-sandwich",
            format!("the sum is a link with {components} components; the estimate needs a knot"),
        ));
    } else if !all_strong {
        checks.push(Check::skipped(
            "tangle-sum-jones-sandwich",
            "needs every tangle strongly alternating",
        ));
    } else {
        let tw64 = tw as u64;
        checks.push(Check::verdict(
            "tangle-sum-jones-sandwich",
            2 * beta + 4 >= tw64 && beta <= 2 * tw64,
            format!("tw/2 - 2 <= {beta} <= 2 tw with tw = {tw}"),
        ));
    }

    let mut bounds = Vec::new();
    let east_west: Vec<usize> = (0..n).filter(|&i| sections[i].east_west_twist).collect();
    let mut unmet = Vec::new();
    if !east_west.is_empty() {
        unmet.push(format!("tangles {east_west:?} are east-west twists"));
    }
    if n < 12 {
        unmet.push(format!(
            "{n} tangle{}; at least 12 are needed",
            if n == 1 { "" } else { "s" }
        ));
    }
    if tw < 3 {
        unmet.push(format!("twist number {tw} is below 3"));
    }
    if !unmet.is_empty() {
        checks.push(Check::precondition("conway-sum-volume", unmet.join("; ")));
    } else {
        let r = conway_sum_bounds(n as u64, tw as u64)?;
        let ordered = r.lower.unwrap_or(0.0) <= r.upper.unwrap_or(f64::INFINITY) + settings.tolerance;
        let hypothesis = if all_strong {
            ""
        } else {
            "; not every tangle is strongly alternating"
        };
        checks.push(Check::verdict(
            "conway-sum-volume",
            ordered,
            format!("interval emitted for n = {n}, tw = {tw}{hypothesis}"),
        ));
        bounds.push(r);
        if components == 1 {
            bounds.push(jones_volume_bounds(n as u64, beta)?);
        }
    }

    Ok(SumReport {
        tangles: sections,
        sign_split,
        sum,
        sum_checks: checks,
        sum_bounds: bounds,
    })
}
