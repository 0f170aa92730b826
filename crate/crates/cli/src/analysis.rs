//! Per-diagram report sections shared by `analyze` and `sum`.

use anyhow::Result;
use knotsum::bounds::{alternating_volume_lower, BoundReport};
use knotsum::jones::{boundary_coeffs, bracket, bracket_statesum, jones_from_bracket, BoundaryCoeffs};
use knotsum::poly::LaurentPolynomial;
use knotsum::states::{state_summary, StateSummary};
use knotsum::twist::twist_partition;
use knotsum::LinkDiagram;
use serde::Serialize;

use crate::report::{Check, Settings};

#[derive(Serialize)]
pub struct DiagramSection {
    pub crossings: usize,
    pub components: usize,
    pub free_loops: usize,
    pub writhe: i64,
    pub alternating: bool,
    pub prime: Option<bool>,
    pub pd: String,
}

#[derive(Serialize)]
pub struct TwistSection {
    pub twist_number: usize,
    pub region_sizes: Vec<usize>,
    pub transitive_only_pairs: usize,
}

#[derive(Serialize)]
pub struct StatesSection {
    #[serde(flatten)]
    pub summary: StateSummary,
    pub adequate: bool,
    /// `e'_A + e'_B - v_A - v_B + 2`.
    pub stoimenow_value: Option<i64>,
}

#[derive(Serialize)]
pub struct JonesSection {
    pub method: &'static str,
    pub polynomial: String,
    pub terms: LaurentPolynomial,
    pub boundary: BoundaryCoeffs,
    pub beta_sum: String,
}

#[derive(Serialize)]
pub struct Analysis {
    pub diagram: DiagramSection,
    pub twist: TwistSection,
    pub states: StatesSection,
    pub jones: JonesSection,
    pub bounds: Vec<BoundReport>,
    pub checks: Vec<Check>,
}

/// Everything about one diagram. `transfer` is a bracket already computed
/// from a tangle decomposition; otherwise the frontier evaluator runs.
pub fn analyze_diagram(d: &LinkDiagram, transfer: Option<LaurentPolynomial>, settings: Settings) -> Result<Analysis> {
    let c = d.crossing_count();
    let prime = if c > 0 && d.is_connected() {
        d.is_prime().ok()
    } else {
        None
    };
    let diagram = DiagramSection {
        crossings: c,
        components: d.component_count(),
        free_loops: d.free_loops(),
        writhe: d.writhe(),
        alternating: d.is_alternating(),
        prime,
        pd: d.emit_pd(),
    };

    let partition = twist_partition(d);
    let tw = partition.twist_number;
    let twist = TwistSection {
        twist_number: tw,
        region_sizes: partition.class_sizes(),
        transitive_only_pairs: partition.transitive_only_pairs,
    };

    let summary = state_summary(d);
    let adequate = summary.adequate();
    let stoimenow_value = (c > 0).then(|| summary.stoimenow_value());
    let states = StatesSection {
        summary,
        adequate,
        stoimenow_value,
    };

    let mut checks = Vec::new();
    let (method, b) = match transfer {
        Some(b) => {
            let frontier = bracket(d)?;
            checks.push(Check::verdict(
                "transfer-frontier-agreement",
                frontier == b,
                "tangle transfer bracket against the frontier evaluator",
            ));
            ("transfer", b)
        }
        None => ("frontier", bracket(d)?),
    };
    if c <= settings.state_sum_cap {
        let oracle = bracket_statesum(d, settings.state_sum_cap)?;
        checks.push(Check::verdict(
            "state-sum-oracle",
            oracle == b,
            format!("bracket against the 2^{c}-state sum"),
        ));
    } else {
        checks.push(Check::skipped(
            "state-sum-oracle",
            format!("{c} crossings exceed the state-sum cap of {}", settings.state_sum_cap),
        ));
    }

    let j = jones_from_bracket(&b, d.writhe());
    let boundary = boundary_coeffs(&j)?;
    let beta_sum = boundary.beta_sum();

    match (c, adequate, stoimenow_value) {
        (0, _, _) => checks.push(Check::skipped("stoimenow-identity", "diagram has no crossings")),
        (_, false, _) => checks.push(Check::skipped("stoimenow-identity", "diagram is not adequate")),
        (_, true, Some(v)) => checks.push(Check::verdict(
            "stoimenow-identity",
            beta_sum == v.into(),
            format!("|beta| + |beta'| = {beta_sum}, e'_A + e'_B - v_A - v_B + 2 = {v}"),
        )),
        _ => {}
    }

    let mut bounds = Vec::new();
    if diagram.alternating && prime == Some(true) && tw >= 2 {
        checks.push(Check::verdict(
            "dasbach-lin",
            beta_sum == tw.into(),
            format!("tw = {tw}, |beta| + |beta'| = {beta_sum}"),
        ));
        let lower = alternating_volume_lower(tw as u64)?;
        bounds.push(BoundReport {
            formula: "alternating-volume",
            inputs: vec![("tw", tw as f64)],
            lower: Some(lower),
            upper: None,
            vacuous: tw == 2,
            auxiliary: vec![],
        });
    } else {
        checks.push(Check::skipped(
            "dasbach-lin",
            "needs a prime alternating diagram with at least two twist regions",
        ));
    }

    let jones = JonesSection {
        method,
        polynomial: j.to_string(),
        terms: j,
        boundary,
        beta_sum: beta_sum.to_string(),
    };
    Ok(Analysis {
        diagram,
        twist,
        states,
        jones,
        bounds,
        checks,
    })
}
