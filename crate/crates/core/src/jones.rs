//! Kauffman bracket and Jones polynomial.
//!
//! Three evaluators share one smoothing convention (see [`Smoothing`]):
//! a brute-force state sum used as an oracle, a frontier dynamic program over
//! crossings that handles any diagram, and composition of tangle brackets for
//! Conway sums.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::map::{he, slot, vertex, PlanarMap, NE, NW, SE, SW};
use crate::diagram::{conway_sum, LinkDiagram, TangleDiagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::states::Smoothing;

pub const DEFAULT_STATE_SUM_CAP: usize = 24;

/// The state sum keeps its visited set in a `u128`.
pub const MAX_STATE_SUM_CROSSINGS: usize = 32;

/// Loop value `-A^2 - A^-2` (bracket polynomials are in `A`).
pub fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2, -1), (-2, -1)])
}

fn times_delta(p: &LaurentPolynomial) -> LaurentPolynomial {
    &(-&p.shift(4)) - &p.shift(-4)
}

fn delta_power(n: usize) -> LaurentPolynomial {
    loop_value().pow(n as u32)
}

/// Slot joined to slot `s` by the given smoothing.
#[inline]
pub(crate) fn smoothing_partner(s: usize, choice: Smoothing) -> usize {
    match choice {
        Smoothing::A => s ^ 1,
        Smoothing::B => [3, 2, 1, 0][s],
    }
}

/// Brute-force bracket over all `2^c` states.
pub fn bracket_statesum(d: &LinkDiagram, cap: usize) -> Result<LaurentPolynomial> {
    let map = &d.map;
    let c = map.crossings;
    if c > cap.min(MAX_STATE_SUM_CROSSINGS) {
        return Err(Error::CapExceeded {
            crossings: c,
            cap: cap.min(MAX_STATE_SUM_CROSSINGS),
        });
    }
    if c == 0 {
        return match map.free_loops {
            0 => Err(Error::EmptyDiagram),
            n => Ok(delta_power(n - 1)),
        };
    }
    let hist = loop_histogram(map);
    let width = 2 * c + 2;
    let mut out = LaurentPolynomial::zero();
    for b_count in 0..=c {
        for loops in 1..width {
            let n = hist[b_count * width + loops];
            if n == 0 {
                continue;
            }
            let a_count = c - b_count;
            let power = a_count as i64 - b_count as i64;
            let term = delta_power(loops - 1 + map.free_loops).shift(2 * power);
            out += &term.scale(&BigInt::from(n));
        }
    }
    Ok(out)
}

/// Counts states by (number of B-smoothings, number of loops); bit `v` of a
/// state selects the B-smoothing at crossing `v`.
fn loop_histogram(map: &PlanarMap) -> Vec<u64> {
    let c = map.crossings;
    let n = 4 * c;
    let width = 2 * c + 2;
    let pair: Vec<u8> = map.pair.iter().map(|&p| p as u8).collect();
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let total: u64 = 1u64 << c;
    let chunk = (total / 64).max(1);
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    chunks
        .par_iter()
        .map(|&k| {
            let mut hist = vec![0u64; (c + 1) * width];
            let lo = k * chunk;
            let hi = (lo + chunk).min(total);
            for state in lo..hi {
                let mut visited: u128 = 0;
                let mut loops = 0;
                while visited != full {
                    let start = (!visited & full).trailing_zeros() as usize;
                    let mut h = start;
                    loop {
                        visited |= 1u128 << h;
                        let x = pair[h] as usize;
                        visited |= 1u128 << x;
                        let v = x >> 2;
                        let s = x & 3;
                        let t = if (state >> v) & 1 == 0 { s ^ 1 } else { 3 - s };
                        h = (v << 2) | t;
                        if h == start {
                            break;
                        }
                    }
                    loops += 1;
                }
                let b = state.count_ones() as usize;
                hist[b * width + loops] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; (c + 1) * width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Result of the frontier program: polynomial per final matching of the
/// boundary corners (empty for links).
type FrontierResult = HashMap<Vec<u32>, LaurentPolynomial>;

#[derive(Clone, Copy)]
enum Outer {
    Port(usize),
    Node(u32),
}

/// Processes crossings one at a time, keeping for every partial state the
/// way the already-smoothed part connects the open half-edges.
///
/// With `normalized`, the first closed loop of each state is not weighted,
/// which gives the bracket normalized on the unknot.
fn frontier_sum(map: &PlanarMap, normalized: bool) -> FrontierResult {
    let order = crossing_order(map);
    // state: sorted list of matched pairs (a < b) of open half-edges/terminals
    type Key = (Vec<u32>, bool);
    let mut states: HashMap<Key, LaurentPolynomial> = HashMap::new();
    let mut init: Vec<(u32, u32)> = Vec::new();
    if let Some(b) = map.boundary_vertex() {
        for k in 0..4 {
            let t = he(b, k);
            let p = map.pair[t];
            if t < p || map.is_crossing_he(p) {
                init.push((t.min(p) as u32, t.max(p) as u32));
            }
        }
    }
    states.insert((flatten(init), false), LaurentPolynomial::one());
    for &v in &order {
        let mut next: HashMap<Key, LaurentPolynomial> = HashMap::with_capacity(states.len() * 2);
        for ((key, closed), poly) in states {
            let mates = unflatten(&key);
            let mate_of = |x: u32| -> Option<u32> {
                mates.iter().find_map(|&(a, b)| {
                    if a == x {
                        Some(b)
                    } else if b == x {
                        Some(a)
                    } else {
                        None
                    }
                })
            };
            let outer: [Outer; 4] = std::array::from_fn(|s| {
                let h = he(v, s) as u32;
                if let Some(m) = mate_of(h) {
                    if vertex(m as usize) == v && map.is_crossing_he(m as usize) {
                        Outer::Port(slot(m as usize))
                    } else {
                        Outer::Node(m)
                    }
                } else {
                    let q = map.pair[h as usize];
                    if vertex(q) == v {
                        Outer::Port(slot(q))
                    } else {
                        Outer::Node(q as u32)
                    }
                }
            });
            for choice in [Smoothing::A, Smoothing::B] {
                let mut visited = [false; 4];
                let mut joins: Vec<(u32, u32)> = Vec::with_capacity(2);
                for s in 0..4 {
                    let Outer::Node(x) = outer[s] else { continue };
                    if visited[s] {
                        continue;
                    }
                    let mut cur = s;
                    let y = loop {
                        visited[cur] = true;
                        let t = smoothing_partner(cur, choice);
                        visited[t] = true;
                        match outer[t] {
                            Outer::Node(y) => break y,
                            Outer::Port(u) => cur = u,
                        }
                    };
                    joins.push((x.min(y), x.max(y)));
                }
                let mut loops = 0;
                for s in 0..4 {
                    if visited[s] {
                        continue;
                    }
                    let mut cur = s;
                    loop {
                        visited[cur] = true;
                        let t = smoothing_partner(cur, choice);
                        visited[t] = true;
                        let Outer::Port(u) = outer[t] else {
                            unreachable!("cycle reached an open end")
                        };
                        cur = u;
                        if cur == s {
                            break;
                        }
                    }
                    loops += 1;
                }
                let at_v = |x: u32| map.is_crossing_he(x as usize) && vertex(x as usize) == v;
                let mut new_pairs: Vec<(u32, u32)> =
                    mates.iter().copied().filter(|&(a, b)| !at_v(a) && !at_v(b)).collect();
                new_pairs.extend(joins.iter().copied());
                new_pairs.sort_unstable();
                let mut weight = poly.shift(if choice == Smoothing::A { 2 } else { -2 });
                let mut now_closed = closed;
                for _ in 0..loops {
                    if normalized && !now_closed {
                        now_closed = true;
                    } else {
                        weight = times_delta(&weight);
                    }
                }
                let entry = next
                    .entry((flatten(new_pairs), now_closed))
                    .or_insert_with(LaurentPolynomial::zero);
                *entry += &weight;
            }
        }
        states = next;
    }
    let mut out: FrontierResult = HashMap::new();
    for ((key, _), poly) in states {
        let e = out.entry(key).or_insert_with(LaurentPolynomial::zero);
        *e += &poly;
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn flatten(pairs: Vec<(u32, u32)>) -> Vec<u32> {
    pairs.into_iter().flat_map(|(a, b)| [a, b]).collect()
}

fn unflatten(key: &[u32]) -> Vec<(u32, u32)> {
    key.chunks_exact(2).map(|w| (w[0], w[1])).collect()
}

/// Greedy order that keeps the set of open half-edges small: always take the
/// crossing with the most half-edges already attached to processed ones.
fn crossing_order(map: &PlanarMap) -> Vec<usize> {
    let c = map.crossings;
    let mut done = vec![false; c];
    let mut attached = vec![0usize; c];
    if let Some(b) = map.boundary_vertex() {
        for k in 0..4 {
            let p = map.pair[he(b, k)];
            if map.is_crossing_he(p) {
                attached[vertex(p)] += 1;
            }
        }
    }
    let mut order = Vec::with_capacity(c);
    for _ in 0..c {
        let v = (0..c)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (attached[v], std::cmp::Reverse(v)))
            .unwrap();
        done[v] = true;
        order.push(v);
        for s in 0..4 {
            let p = map.pair[he(v, s)];
            if map.is_crossing_he(p) && vertex(p) != v {
                attached[vertex(p)] += 1;
            }
        }
    }
    order
}

/// Bracket of a link diagram, normalized so the crossingless unknot is 1.
pub fn bracket(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    let map = &d.map;
    if map.crossings == 0 {
        return match map.free_loops {
            0 => Err(Error::EmptyDiagram),
            n => Ok(delta_power(n - 1)),
        };
    }
    let result = frontier_sum(map, true);
    let poly = result.get(&Vec::new()).cloned().unwrap_or_default();
    Ok(&poly * &delta_power(map.free_loops))
}

/// `(-A^3)^(-w) <D>` rewritten in `t = A^-4`.
pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> LaurentPolynomial {
    let mut f = bracket.shift(-6 * writhe);
    if writhe.rem_euclid(2) == 1 {
        f = -f;
    }
    // A^j has doubled key 2j and becomes t^(-j/4), doubled key -j/2
    f.map_exponents(|k| {
        debug_assert!(k % 4 == 0, "bracket exponent {k} not even");
        -k / 4
    })
}

/// Jones polynomial in `t`; half-integer powers occur for links with an
/// even number of components.
pub fn jones(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    let j = jones_from_bracket(&bracket(d)?, d.writhe());
    if d.component_count() % 2 == 1 {
        debug_assert!(j.has_integral_exponents());
    }
    Ok(j)
}

/// Jones polynomial computed from the brute-force state sum.
pub fn jones_statesum(d: &LinkDiagram, cap: usize) -> Result<LaurentPolynomial> {
    Ok(jones_from_bracket(&bracket_statesum(d, cap)?, d.writhe()))
}

/// Bracket of a tangle in the basis of its two crossingless smoothings:
/// `horizontal` is the coefficient of NW–NE/SW–SE, `vertical` of NW–SW/NE–SE.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketPair {
    pub horizontal: LaurentPolynomial,
    pub vertical: LaurentPolynomial,
}

fn corner_key(a: usize, b: usize, c: usize, d: usize, base: usize) -> Vec<u32> {
    let mut pairs = [(base + a, base + b), (base + c, base + d)].map(|(x, y)| (x.min(y) as u32, x.max(y) as u32));
    pairs.sort_unstable();
    flatten(pairs.to_vec())
}

impl BracketPair {
    /// The trivial horizontal tangle.
    pub fn identity() -> Self {
        BracketPair {
            horizontal: LaurentPolynomial::one(),
            vertical: LaurentPolynomial::zero(),
        }
    }

    pub fn of_tangle(t: &TangleDiagram) -> Self {
        let map = &t.map;
        let base = 4 * map.crossings;
        let result = frontier_sum(map, false);
        let get = |k: Vec<u32>| result.get(&k).cloned().unwrap_or_default();
        let loops = delta_power(map.free_loops);
        BracketPair {
            horizontal: &get(corner_key(NW, NE, SW, SE, base)) * &loops,
            vertical: &get(corner_key(NW, SW, NE, SE, base)) * &loops,
        }
    }

    /// Same as [`of_tangle`](Self::of_tangle) by enumerating all states.
    pub fn of_tangle_statesum(t: &TangleDiagram, cap: usize) -> Result<Self> {
        let map = &t.map;
        let c = map.crossings;
        if c > cap.min(MAX_STATE_SUM_CROSSINGS) {
            return Err(Error::CapExceeded {
                crossings: c,
                cap: cap.min(MAX_STATE_SUM_CROSSINGS),
            });
        }
        let b = c;
        let mut out = BracketPair {
            horizontal: LaurentPolynomial::zero(),
            vertical: LaurentPolynomial::zero(),
        };
        for state in 0u64..(1u64 << c) {
            let choice = |v: usize| {
                if (state >> v) & 1 == 0 {
                    Smoothing::A
                } else {
                    Smoothing::B
                }
            };
            let mut visited = vec![false; map.pair.len()];
            // the arc from NW decides the matching
            let mut h = he(b, NW);
            visited[h] = true;
            let end = loop {
                let x = map.pair[h];
                visited[x] = true;
                if !map.is_crossing_he(x) {
                    break slot(x);
                }
                h = he(vertex(x), smoothing_partner(slot(x), choice(vertex(x))));
                visited[h] = true;
            };
            let mut rest = he(b, if end == NE { SW } else { NE });
            visited[rest] = true;
            loop {
                let x = map.pair[rest];
                visited[x] = true;
                if !map.is_crossing_he(x) {
                    break;
                }
                rest = he(vertex(x), smoothing_partner(slot(x), choice(vertex(x))));
                visited[rest] = true;
            }
            let mut loops = map.free_loops;
            for start in 0..4 * c {
                if visited[start] {
                    continue;
                }
                let mut h = start;
                loop {
                    visited[h] = true;
                    let x = map.pair[h];
                    visited[x] = true;
                    h = he(vertex(x), smoothing_partner(slot(x), choice(vertex(x))));
                    if h == start {
                        break;
                    }
                }
                loops += 1;
            }
            let b_count = state.count_ones() as i64;
            let power = c as i64 - 2 * b_count;
            let term = delta_power(loops).shift(2 * power);
            match end {
                NE => out.horizontal += &term,
                SW => out.vertical += &term,
                _ => unreachable!("planar tangle states never cross"),
            }
        }
        Ok(out)
    }

    /// Bracket pair of `self + other`.
    pub fn sum(&self, other: &BracketPair) -> BracketPair {
        let (p1, q1, p2, q2) = (&self.horizontal, &self.vertical, &other.horizontal, &other.vertical);
        BracketPair {
            horizontal: p1 * p2,
            vertical: &(&(p1 * q2) + &(q1 * p2)) + &times_delta(&(q1 * q2)),
        }
    }

    /// Normalized bracket of the numerator closure.
    pub fn numerator(&self) -> LaurentPolynomial {
        &times_delta(&self.horizontal) + &self.vertical
    }

    /// Normalized bracket of the denominator closure.
    pub fn denominator(&self) -> LaurentPolynomial {
        &self.horizontal + &times_delta(&self.vertical)
    }
}

/// Bracket of the Conway sum of `tangles` by composing their bracket pairs.
pub fn bracket_transfer(tangles: &[TangleDiagram]) -> Result<LaurentPolynomial> {
    if tangles.is_empty() {
        return Err(Error::EmptySum);
    }
    let pairs: Vec<BracketPair> = tangles.par_iter().map(BracketPair::of_tangle).collect();
    let total = pairs.iter().fold(BracketPair::identity(), |acc, p| acc.sum(p));
    let b = total.numerator();
    if b.is_zero() {
        return Err(Error::Internal("Conway sum bracket vanished".into()));
    }
    Ok(b)
}

/// Jones polynomial of a Conway sum through [`bracket_transfer`]; the writhe
/// is read from the summed diagram.
pub fn jones_of_sum(tangles: &[TangleDiagram]) -> Result<LaurentPolynomial> {
    let d = conway_sum(tangles)?;
    Ok(jones_from_bracket(&bracket_transfer(tangles)?, d.writhe()))
}

/// Extreme and next-to-extreme coefficients of a Laurent polynomial written
/// from the top down as `alpha t^k + beta t^(k-1) + ... + beta' t^(m+1) + alpha' t^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCoeffs {
    /// Doubled highest exponent.
    pub k: i64,
    /// Doubled lowest exponent.
    pub m: i64,
    #[serde(serialize_with = "as_string")]
    pub alpha: BigInt,
    #[serde(serialize_with = "as_string")]
    pub beta: BigInt,
    #[serde(serialize_with = "as_string")]
    pub beta_prime: BigInt,
    #[serde(serialize_with = "as_string")]
    pub alpha_prime: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl BoundaryCoeffs {
    /// `|beta| + |beta'|`.
    pub fn beta_sum(&self) -> BigInt {
        self.beta.abs() + self.beta_prime.abs()
    }

    pub fn beta_sum_u64(&self) -> u64 {
        u64::try_from(self.beta_sum()).unwrap_or(u64::MAX)
    }
}

/// Coefficients at the highest power `k`, at `k - 1`, at `m + 1` and at the
/// lowest power `m`. Absent terms read as zero.
pub fn boundary_coeffs(j: &LaurentPolynomial) -> Result<BoundaryCoeffs> {
    let k = j.max_doubled().ok_or(Error::ZeroPolynomial)?;
    let m = j.min_doubled().ok_or(Error::ZeroPolynomial)?;
    Ok(BoundaryCoeffs {
        k,
        m,
        alpha: j.coeff(k),
        beta: j.coeff(k - 2),
        beta_prime: j.coeff(m + 2),
        alpha_prime: j.coeff(m),
    })
}
