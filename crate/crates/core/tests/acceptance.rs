//! Acceptance suite. Eleven checks, each printing a single `PASS`/`FAIL`
//! line with its id, runtime and a short summary of what was measured.
//!
//! Run with `cargo test -p knotsum --test acceptance`. Extra positional
//! arguments filter the checks by id substring. The process exits nonzero
//! when any check fails, except for a failure whose observed values match a
//! recorded deviation exactly; that line is marked `[known deviation]`.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{brute_jones, brute_state, brute_twist, PRINTED_SLOPES};
use knotsum::bounds::{
    census, conway_sum_bounds, dehn_filling_factor, enumerate_short_slopes, meridian_estimate, periodic_classify, psi,
    Classification, CuspLattice, LensSpace, Quotient, PSI_SCALE, V8,
};
use knotsum::diagram::conway_sum;
use knotsum::generate::{pretzel, Generator, SumInstance};
use knotsum::jones::{
    boundary_coeffs, bracket, bracket_statesum, bracket_transfer, jones, jones_of_sum, DEFAULT_STATE_SUM_CAP,
};
use knotsum::states::{losses, state_graph, state_summary, stoimenow_quantity, Smoothing};
use knotsum::twist::twist_number;
use knotsum::{LinkDiagram, TangleDiagram, TangleSign};

/// Absolute tolerance for closed-form spot values.
const SPOT_TOLERANCE: f64 = 1e-12;
/// Absolute tolerance for the periodic-bound numeric chain.
const CHAIN_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for `p·ψ(p)` against `p` times the census volume.
const SHARPNESS_RELATIVE: f64 = 1e-4;
/// Relative tolerance for the large-`n` Conway-sum bound against its limit.
const LIMIT_RELATIVE: f64 = 0.01;
const STOIMENOW_BUDGET: Duration = Duration::from_secs(120);
const TRANSFER_BUDGET: Duration = Duration::from_secs(1);

const STOIMENOW_MIN: usize = 500;
const DASBACH_LIN_MIN: usize = 200;
const SANDWICH_MIN: usize = 200;
const LOSS_MIN: usize = 100;
const INVARIANCE_MIN: usize = 20;

/// β-sums observed for the (2^k, -2^k) pretzel links, k = 1, 2, 3, 6.
const PRETZEL_OBSERVED: [u64; 4] = [2, 0, 2, 2];

struct Outcome {
    pass: bool,
    known_deviation: bool,
    detail: String,
}

impl Outcome {
    fn pass(detail: String) -> Self {
        Outcome {
            pass: true,
            known_deviation: false,
            detail,
        }
    }

    fn fail(detail: String) -> Self {
        Outcome {
            pass: false,
            known_deviation: false,
            detail,
        }
    }

    fn check(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            known_deviation: false,
            detail,
        }
    }
}

fn beta_sum(d: &LinkDiagram) -> u64 {
    boundary_coeffs(&jones(d).unwrap()).unwrap().beta_sum_u64()
}

/// `e'_A + e'_B - v_A - v_B + 2` from the independent circle oracle.
fn oracle_stoimenow(d: &LinkDiagram) -> i64 {
    let (tuples, loops) = d.pd_tuples();
    let (va, _, ea) = brute_state(&tuples, loops.len(), false);
    let (vb, _, eb) = brute_state(&tuples, loops.len(), true);
    ea as i64 + eb as i64 - va as i64 - vb as i64 + 2
}

/// Mixed two-tangle knots shared by the sandwich, loss and oracle checks.
fn mixed_knots() -> &'static [SumInstance] {
    static KNOTS: OnceLock<Vec<SumInstance>> = OnceLock::new();
    KNOTS.get_or_init(|| {
        let mut g = Generator::new(0x7a9c);
        (0..SANDWICH_MIN)
            .map(|_| g.two_tangle_knot(4, 8, true).unwrap())
            .collect()
    })
}

fn stoimenow_identity() -> Outcome {
    let start = Instant::now();
    let mut g = Generator::new(1);
    let mut corpus: Vec<LinkDiagram> = Vec::new();
    for _ in 0..300 {
        corpus.push(g.prime_alternating(3, 20).unwrap());
    }
    let alternating = corpus.len();
    let mut attempts = 0;
    while corpus.len() < alternating + 150 && attempts < 20_000 {
        attempts += 1;
        let n = 2 + attempts % 3;
        let d = g.rational_sum(n, 1, 5).unwrap().diagram;
        if d.crossing_count() <= 20 && d.is_connected() && state_summary(&d).adequate() {
            corpus.push(d);
        }
    }
    let rational = corpus.len() - alternating;
    for i in 0..60 {
        corpus.push(g.two_tangle_knot(4, 8, i % 2 == 1).unwrap().diagram);
    }
    let strongly = corpus.len() - alternating - rational;

    let mut bad = Vec::new();
    let mut largest = 0;
    for (i, d) in corpus.iter().enumerate() {
        largest = largest.max(d.crossing_count());
        let q = stoimenow_quantity(d).unwrap();
        let b = beta_sum(d) as i64;
        if !q.adequate || d.crossing_count() > 20 || q.value != b || oracle_stoimenow(d) != b {
            bad.push(i);
        }
    }
    let elapsed = start.elapsed();
    Outcome::check(
        bad.is_empty() && corpus.len() >= STOIMENOW_MIN && elapsed < STOIMENOW_BUDGET,
        format!(
            "{} adequate diagrams ({alternating} prime alternating, {rational} rational sums, {strongly} \
             strongly alternating sums), at most {largest} crossings, {} mismatches, {:.1} s of {} s",
            corpus.len(),
            bad.len(),
            elapsed.as_secs_f64(),
            STOIMENOW_BUDGET.as_secs()
        ),
    )
}

fn dasbach_lin() -> Outcome {
    let mut g = Generator::new(2);
    let mut checked = 0;
    let mut bad = 0;
    let mut largest_tw = 0;
    while checked < DASBACH_LIN_MIN {
        let d = g.prime_alternating(3, 18).unwrap();
        let tw = twist_number(&d);
        if tw < 2 {
            continue;
        }
        checked += 1;
        largest_tw = largest_tw.max(tw);
        if brute_twist(&d.pd_tuples().0).0 != tw || beta_sum(&d) != tw as u64 {
            bad += 1;
        }
    }
    Outcome::check(
        bad == 0,
        format!("{checked} prime alternating diagrams with tw in 2..={largest_tw}, {bad} mismatches"),
    )
}

fn tangle_sum_jones_sandwich() -> Outcome {
    let knots = mixed_knots();
    let mut bad = 0;
    let mut strict = 0;
    let mut ratio_min = f64::INFINITY;
    for inst in knots {
        let [t1, t2] = [&inst.tangles[0], &inst.tangles[1]];
        let shapes_ok = inst.diagram.component_count() == 1
            && t1.is_strongly_alternating()
            && t2.is_strongly_alternating()
            && t1.sign() == TangleSign::Positive
            && t2.sign() == TangleSign::Negative;
        let tw = twist_number(&inst.diagram) as u64;
        let b = beta_sum(&inst.diagram);
        if !shapes_ok || 2 * b + 4 < tw || b > 2 * tw {
            bad += 1;
        }
        if b < tw {
            strict += 1;
        }
        ratio_min = ratio_min.min(b as f64 / tw as f64);
    }
    Outcome::check(
        bad == 0 && strict > 0 && knots.len() >= SANDWICH_MIN,
        format!(
            "{} mixed two-tangle knots, {bad} outside tw/2 - 2 <= beta-sum <= 2 tw, {strict} with beta-sum < tw, \
             smallest beta-sum/tw {ratio_min:.3}",
            knots.len()
        ),
    )
}

fn pretzel_beta_sum() -> Outcome {
    let mut sums = Vec::new();
    let mut tws = Vec::new();
    let mut oracle_ok = true;
    for k in [1usize, 2, 3, 6] {
        let entries: Vec<i64> = std::iter::repeat_n(2, k).chain(std::iter::repeat_n(-2, k)).collect();
        let d = pretzel(&entries).unwrap();
        let j = jones(&d).unwrap();
        if k <= 3 && brute_jones(&d) != j {
            oracle_ok = false;
        }
        sums.push(boundary_coeffs(&j).unwrap().beta_sum_u64());
        tws.push(twist_number(&d));
    }
    // tw is 1 for a single column of each sign, which share both side faces
    let tw_ok = tws == [1, 4, 6, 12];
    let all_two = sums.iter().all(|&s| s == 2);
    let detail = format!("k = 1, 2, 3, 6: beta-sum {sums:?}, tw {tws:?}, expected beta-sum 2 throughout");
    if all_two && tw_ok && oracle_ok {
        return Outcome::pass(detail);
    }
    let matches_record = sums == PRETZEL_OBSERVED && tw_ok && oracle_ok;
    Outcome {
        pass: false,
        known_deviation: matches_record,
        detail: if matches_record {
            format!("{detail}; k = 2 gives 0, confirmed by the state-sum oracle")
        } else {
            detail
        },
    }
}

fn transfer_oracle_equivalence() -> Outcome {
    let mut g = Generator::new(5);
    let mut corpus: Vec<Vec<TangleDiagram>> = mixed_knots().iter().map(|i| i.tangles.clone()).collect();
    for i in 0..60 {
        let inst = g.rational_sum(2 + i % 5, 1, 4).unwrap();
        if inst.diagram.crossing_count() <= 18 {
            corpus.push(inst.tangles);
        }
    }
    corpus.push((0..12).map(|_| TangleDiagram::vertical_twist(2)).collect());
    loop {
        let inst = g.rational_sum(6, 3, 4).unwrap();
        if (21..=22).contains(&inst.diagram.crossing_count()) {
            corpus.push(inst.tangles);
            break;
        }
    }
    let mut bad = 0;
    let mut largest = 0;
    for tangles in &corpus {
        let d = conway_sum(tangles).unwrap();
        assert!(d.crossing_count() <= DEFAULT_STATE_SUM_CAP);
        largest = largest.max(d.crossing_count());
        if bracket_transfer(tangles).unwrap() != bracket_statesum(&d, DEFAULT_STATE_SUM_CAP).unwrap() {
            bad += 1;
        }
    }

    let big = g.rational_sum(30, 2, 2).unwrap();
    let start = Instant::now();
    let fast = bracket_transfer(&big.tangles).unwrap();
    let elapsed = start.elapsed();
    let agrees = fast == bracket(&big.diagram).unwrap();
    Outcome::check(
        bad == 0 && agrees && big.diagram.crossing_count() == 60 && elapsed < TRANSFER_BUDGET,
        format!(
            "{} sums up to {largest} crossings, {bad} mismatches; {} tangles / {} crossings by transfer in {:.2} ms \
             (budget {} ms), frontier agrees: {agrees}",
            corpus.len(),
            big.tangles.len(),
            big.diagram.crossing_count(),
            elapsed.as_secs_f64() * 1e3,
            TRANSFER_BUDGET.as_millis()
        ),
    )
}

fn short_slope_list() -> Outcome {
    let lattice = CuspLattice::three_chain();
    let found = enumerate_short_slopes(&lattice, 12.0).unwrap();
    let got: BTreeSet<(i64, i64)> = found.iter().map(|s| (s.p, s.q)).collect();
    let printed: BTreeSet<(i64, i64)> = PRINTED_SLOPES.iter().copied().collect();
    let exact_ok = PRINTED_SLOPES
        .iter()
        .all(|&(p, q)| lattice.length_squared(p, q) <= num_rational::BigRational::from_integer(144.into()));
    let missing = printed.difference(&got).count();
    let extra = got.difference(&printed).count();
    Outcome::check(
        got == printed && found.len() == 26 && exact_ok,
        format!(
            "{} slopes of length <= 12, {missing} missing, {extra} extra",
            found.len()
        ),
    )
}

fn psi_sharpness() -> Outcome {
    let capped: Vec<f64> = [14.0, 15.0, 20.0, 100.0].iter().map(|&x| psi(x).unwrap()).collect();
    let cap_ok = capped.iter().all(|&v| v == 2.828);
    let volume = |name: &str| census().iter().find(|e| e.name == name).unwrap().volume;
    let mut worst: f64 = 0.0;
    for (p, name) in [(14u64, "m017"), (18, "m016"), (19, "m016"), (21, "m017")] {
        let target = p as f64 * volume(name);
        let rel = (p as f64 * psi(p as f64).unwrap() - target).abs() / target;
        worst = worst.max(rel);
    }
    Outcome::check(
        cap_ok && worst <= SHARPNESS_RELATIVE && volume("m016") == 2.8281 && volume("m017") == 2.8281,
        format!("psi at 14, 15, 20, 100 = {capped:?}; worst relative gap of p psi(p) to p vol {worst:.2e}"),
    )
}

fn periodic_classifier() -> Outcome {
    let exceptions = [(LensSpace { p: 10, q: 3 }, "m003"), (LensSpace { p: 15, q: 4 }, "m006")];
    let mut bounds = 0;
    let mut found_exceptions = 0;
    let mut bad = Vec::new();
    for row in census() {
        for &lens in row.fillings.iter().filter(|l| l.p >= 6) {
            let q = Quotient::Filling {
                manifold: row.name.clone(),
                lens: Some(lens),
            };
            let expect_exception = exceptions.contains(&(lens, row.name.as_str()));
            match periodic_classify(lens.p, &q).unwrap() {
                Classification::Exception { .. } if expect_exception => found_exceptions += 1,
                Classification::Bound { .. } if !expect_exception => bounds += 1,
                other => bad.push(format!("{} {lens}: {other:?}", row.name)),
            }
        }
    }
    let term = |n: f64| PSI_SCALE * (1.0 - 2.0 * 2f64.sqrt() * PI * PI / (n * n)).powf(1.5);
    let (six, nine, thirteen) = (term(6.0), term(9.0), term(13.0));
    let chain_ok = six < 2.666 - CHAIN_TOLERANCE
        && nine < thirteen - CHAIN_TOLERANCE
        && thirteen < 2.7818 - CHAIN_TOLERANCE
        && (psi(6.0).unwrap() - six).abs() <= CHAIN_TOLERANCE
        && (psi(9.0).unwrap() - nine).abs() <= CHAIN_TOLERANCE
        && (psi(13.0).unwrap() - thirteen).abs() <= CHAIN_TOLERANCE;
    Outcome::check(
        bad.is_empty() && found_exceptions == 2 && bounds > 0 && chain_ok,
        format!(
            "{found_exceptions} exceptions, {bounds} bounds, {} misclassified; chain {six:.6} < 2.666, \
             {nine:.6} < {thirteen:.6} < 2.7818",
            bad.len()
        ),
    )
}

fn bound_spot_values() -> Outcome {
    let factor = dehn_filling_factor(4.0 * PI).unwrap();
    let factor_gap = (factor - 0.75f64.powf(1.5)).abs();
    let report = conway_sum_bounds(12, 3).unwrap();
    let l = meridian_estimate(12);
    let l_gap = (l - (11.524 + 12.0 * 2f64.powf(0.25)) / 4.0).abs();
    let reported = report
        .auxiliary
        .iter()
        .any(|&(k, v)| k == "meridian_estimate" && v == l);
    let mut worst: f64 = 0.0;
    for tw in [4u64, 5, 10, 50, 200] {
        let limit = V8 / 2.0 * (tw as f64 - 3.0);
        let lower = conway_sum_bounds(10_000, tw).unwrap().lower.unwrap();
        worst = worst.max((lower - limit).abs() / limit);
    }
    Outcome::check(
        factor_gap <= SPOT_TOLERANCE && l_gap <= SPOT_TOLERANCE && l > 2.0 * PI && reported && worst <= LIMIT_RELATIVE,
        format!(
            "filling factor at 4 pi off by {factor_gap:.1e}; meridian estimate {l:.6} off by {l_gap:.1e}; \
             n = 10^4 worst relative gap to the limit {worst:.2e}"
        ),
    )
}

fn loss_accounting() -> Outcome {
    let knots = mixed_knots();
    let mut bad = 0;
    let mut largest_ext = 0;
    for inst in knots {
        let d = &inst.diagram;
        let l = losses(d).unwrap();
        let tw = brute_twist(&d.pd_tuples().0).0 as i64;
        let (a, b) = (state_graph(d, Smoothing::A), state_graph(d, Smoothing::B));
        let reduction =
            (a.edge_count() + b.edge_count()) as i64 - (a.reduced_edge_count() + b.reduced_edge_count()) as i64;
        largest_ext = largest_ext.max(l.ell_ext);
        if l.ell_in != d.crossing_count() as i64 - tw || l.ell_in + l.ell_ext != reduction || 2 * l.ell_ext > tw + 8 {
            bad += 1;
        }
    }
    Outcome::check(
        bad == 0 && knots.len() >= LOSS_MIN,
        format!(
            "{} two-tangle knots, {bad} violations, largest external loss {largest_ext}",
            knots.len()
        ),
    )
}

fn invariance() -> Outcome {
    let mut g = Generator::new(11);
    let mut kink_bad = 0;
    for i in 0..INVARIANCE_MIN {
        let d = if i % 2 == 0 {
            g.prime_alternating(3, 14).unwrap()
        } else {
            g.rational_sum(3, 1, 4).unwrap().diagram
        };
        let k = g.add_random_kink(&d);
        if k.crossing_count() != d.crossing_count() + 1 || jones(&k).unwrap() != jones(&d).unwrap() {
            kink_bad += 1;
        }
    }
    let mut permuted = 0;
    let mut order_bad = 0;
    while permuted < INVARIANCE_MIN {
        let inst = g.rational_sum(3 + permuted % 3, 1, 5).unwrap();
        if inst.diagram.component_count() != 1 {
            continue;
        }
        let mut shuffled = inst.tangles.clone();
        while shuffled == inst.tangles {
            g.shuffle(&mut shuffled);
            if inst.tangles.iter().all(|t| *t == inst.tangles[0]) {
                break;
            }
        }
        permuted += 1;
        let j = jones(&inst.diagram).unwrap();
        if jones_of_sum(&shuffled).unwrap() != j || jones(&conway_sum(&shuffled).unwrap()).unwrap() != j {
            order_bad += 1;
        }
    }
    Outcome::check(
        kink_bad == 0 && order_bad == 0,
        format!(
            "{INVARIANCE_MIN} kink insertions ({kink_bad} changed), {permuted} reordered sums ({order_bad} changed)"
        ),
    )
}

fn main() {
    let checks: [(&str, fn() -> Outcome); 11] = [
        ("stoimenow-identity", stoimenow_identity),
        ("dasbach-lin", dasbach_lin),
        ("tangle-sum-jones-sandwich", tangle_sum_jones_sandwich),
        ("pretzel-beta-sum", pretzel_beta_sum),
        ("transfer-oracle-equivalence", transfer_oracle_equivalence),
        ("short-slope-list", short_slope_list),
        ("psi-sharpness", psi_sharpness),
        ("periodic-classifier", periodic_classifier),
        ("bound-spot-values", bound_spot_values),
        ("loss-accounting", loss_accounting),
        ("invariance", invariance),
    ];
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));

    let mut hard_failures = 0;
    let mut ran = 0;
    for (i, (id, check)) in checks.iter().enumerate() {
        if !filters.is_empty() && !filters.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::fail(format!("panicked: {msg}"))
        });
        let status = match (outcome.pass, outcome.known_deviation) {
            (true, _) => "PASS",
            (false, true) => "FAIL [known deviation]",
            (false, false) => {
                hard_failures += 1;
                "FAIL"
            }
        };
        println!(
            "{:02} {id:<28} {status} ({:.1} s) {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            outcome.detail
        );
    }
    println!("{ran} checks run, {hard_failures} unexpected failures");
    if hard_failures > 0 {
        std::process::exit(1);
    }
}
