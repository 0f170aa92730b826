//! Reproducible random instances: alternating rational tangles, strongly
//! alternating tangles, Conway sums, pretzel links, and the moves used by
//! invariance checks (kinks and crossing relabelings).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::map::{he, PlanarMap};
use crate::diagram::{conway_sum, LinkDiagram, TangleDiagram, TangleSign};
use crate::error::{Error, Result};

/// Attempts allowed to a rejection sampler before it gives up.
pub const DEFAULT_BUDGET: usize = 20_000;

/// Continued-fraction tangle: `H(a1)`, then alternately a vertical twist
/// stacked below and a horizontal twist added on the east. Alternating when
/// all entries share a sign.
pub fn rational_tangle(a: &[i64]) -> TangleDiagram {
    let Some((&first, rest)) = a.split_first() else {
        return TangleDiagram::horizontal_trivial();
    };
    let mut t = TangleDiagram::horizontal_twist(first);
    for (i, &x) in rest.iter().enumerate() {
        t = if i % 2 == 0 {
            t.stack(&TangleDiagram::vertical_twist(x))
        } else {
            t.sum(&TangleDiagram::horizontal_twist(x))
        };
    }
    t
}

/// Vertical twists `V(e1), ..., V(ek)` whose Conway sum is the pretzel link
/// `P(e1, ..., ek)`.
pub fn pretzel_tangles(entries: &[i64]) -> Vec<TangleDiagram> {
    entries.iter().map(|&e| TangleDiagram::vertical_twist(e)).collect()
}

pub fn pretzel(entries: &[i64]) -> Result<LinkDiagram> {
    conway_sum(&pretzel_tangles(entries))
}

/// Inserts a kink into the edge at half-edge `edge`, keeping orientations.
/// A diagram without crossings gets its kink on a free loop.
pub fn add_kink(d: &LinkDiagram, edge: usize, positive: bool) -> LinkDiagram {
    let map = &d.map;
    let c = map.crossings;
    if c == 0 {
        assert!(map.free_loops > 0, "the empty diagram has no edge for a kink");
        let pairs: [(usize, usize); 2] = if positive { [(0, 1), (2, 3)] } else { [(1, 2), (3, 0)] };
        let mut pair = vec![0; 4];
        for (a, b) in pairs {
            pair[a] = b;
            pair[b] = a;
        }
        let kinked = PlanarMap {
            pair,
            crossings: 1,
            boundary: false,
            free_loops: map.free_loops - 1,
        };
        let (k, _) = LinkDiagram::from_map(kinked);
        if k.positive[0] == positive {
            return k;
        }
        return k.mirror();
    }
    let h = edge % map.pair.len();
    let (out, inc) = if d.is_incoming(h) {
        (map.pair[h], h)
    } else {
        (h, map.pair[h])
    };
    let n = map.pair.len();
    let mut pair = map.pair.clone();
    pair.extend([0; 4]);
    let mut incoming: Vec<bool> = (0..n).map(|x| d.is_incoming(x)).collect();
    let v = |s| he(c, s);
    let mut join = |a: usize, b: usize| {
        pair[a] = b;
        pair[b] = a;
    };
    join(out, v(0));
    if positive {
        join(v(2), v(3));
        join(v(1), inc);
        incoming.extend([true, false, false, true]);
    } else {
        join(v(2), v(1));
        join(v(3), inc);
        incoming.extend([true, true, false, false]);
    }
    let kinked = PlanarMap {
        pair,
        crossings: c + 1,
        boundary: false,
        free_loops: map.free_loops,
    };
    LinkDiagram::from_orientation(kinked, &incoming).0
}

/// Renames crossing `v` to `perm[v]`.
pub fn permute_crossings(d: &LinkDiagram, perm: &[usize]) -> LinkDiagram {
    assert_eq!(perm.len(), d.crossing_count());
    let map = d.map.relabel(|h| he(perm[h / 4], h % 4));
    let mut positive = vec![false; perm.len()];
    for (v, &p) in perm.iter().enumerate() {
        positive[p] = d.positive[v];
    }
    LinkDiagram {
        map,
        positive,
        belt: None,
        decomposition: None,
    }
}

/// Cuts `d` open along the edges at darts `x1` and `x2` of one face. The
/// boundary circle sits in that face, and the corners are placed so that the
/// numerator closure gives back `d`.
fn cut_along_face(d: &LinkDiagram, x1: usize, x2: usize) -> Option<TangleDiagram> {
    let map = &d.map;
    let c = map.crossings;
    let (y1, y2) = (map.pair[x1], map.pair[x2]);
    if x1 == x2 || x1 == y2 {
        return None;
    }
    let target = d.canonical_form();
    for (k1, k2) in [(0, 1), (1, 0)] {
        for (k3, k4) in [(2, 3), (3, 2)] {
            let mut pair = map.pair.clone();
            pair.extend([0; 4]);
            for (x, k) in [(x1, k1), (y1, k2), (x2, k3), (y2, k4)] {
                pair[x] = he(c, k);
                pair[he(c, k)] = x;
            }
            let cut = PlanarMap {
                pair,
                crossings: c,
                boundary: true,
                free_loops: map.free_loops,
            };
            if cut.check_spherical().is_err() {
                continue;
            }
            let t = TangleDiagram::from_map(cut);
            if t.numerator_closure().canonical_form() == target {
                return Some(t);
            }
        }
    }
    None
}

/// A two-tangle (or longer) Conway sum together with its summands.
#[derive(Clone, Debug)]
pub struct SumInstance {
    pub tangles: Vec<TangleDiagram>,
    pub diagram: LinkDiagram,
}

/// Seeded generator over ChaCha8; `split` derives independent streams.
#[derive(Clone, Debug)]
pub struct Generator {
    seed: u64,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Same seed, independent stream `stream`.
    pub fn split(&self, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream + 1);
        Generator { seed: self.seed, rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }

    /// A random permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut self.rng);
        p
    }

    /// A random composition of `total` into at most `max_parts` positive parts.
    pub fn composition(&mut self, total: usize, max_parts: usize) -> Vec<usize> {
        assert!(total > 0);
        let parts = self.rng.random_range(1..=max_parts.min(total).max(1));
        let mut cuts: Vec<usize> = (1..total).collect();
        cuts.shuffle(&mut self.rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(parts);
        let mut prev = 0;
        for x in cuts.into_iter().chain([total]) {
            out.push(x - prev);
            prev = x;
        }
        out
    }

    /// Same-sign continued fraction with `crossings` crossings in total.
    pub fn continued_fraction(&mut self, crossings: usize, positive: bool) -> Vec<i64> {
        let s = if positive { 1 } else { -1 };
        self.composition(crossings, 6)
            .into_iter()
            .map(|x| s * x as i64)
            .collect()
    }

    /// Alternating rational tangle with `crossings` crossings and a random sign.
    pub fn alternating_rational(&mut self, crossings: usize) -> Result<(Vec<i64>, TangleDiagram)> {
        if crossings == 0 {
            return Err(Error::Generation("size 0 requested".into()));
        }
        let positive = self.rng.random_bool(0.5);
        let a = self.continued_fraction(crossings, positive);
        let t = rational_tangle(&a);
        Ok((a, t))
    }

    /// Prime alternating diagram with crossing count in `lo..=hi`: either a
    /// two-bridge closure or an alternating sum of rational tangles.
    pub fn prime_alternating(&mut self, lo: usize, hi: usize) -> Result<LinkDiagram> {
        self.prime_alternating_with(lo, hi, DEFAULT_BUDGET)
    }

    pub fn prime_alternating_with(&mut self, lo: usize, hi: usize, budget: usize) -> Result<LinkDiagram> {
        if lo == 0 || hi < lo {
            return Err(Error::Generation(format!("crossing range {lo}..={hi} is empty")));
        }
        for _ in 0..budget {
            let c = self.rng.random_range(lo.max(3)..=hi.max(3));
            let positive = self.rng.random_bool(0.5);
            let d = if self.rng.random_bool(0.4) || c < 6 {
                rational_tangle(&self.continued_fraction(c, positive)).numerator_closure()
            } else {
                let parts = self.composition(c, 4);
                let tangles: Vec<_> = parts
                    .into_iter()
                    .map(|k| rational_tangle(&self.continued_fraction(k, positive)))
                    .collect();
                conway_sum(&tangles)?.unmarked()
            };
            if d.is_alternating() && d.is_prime() == Ok(true) {
                return Ok(d);
            }
        }
        Err(Error::Generation(format!(
            "no prime alternating diagram in {budget} attempts"
        )))
    }

    /// Strongly alternating tangle of the given sign, cut from a random prime
    /// alternating diagram with `lo..=hi` crossings.
    pub fn strongly_alternating_tangle(&mut self, lo: usize, hi: usize, sign: TangleSign) -> Result<TangleDiagram> {
        self.strongly_alternating_with(lo, hi, sign, DEFAULT_BUDGET)
    }

    pub fn strongly_alternating_with(
        &mut self,
        lo: usize,
        hi: usize,
        sign: TangleSign,
        budget: usize,
    ) -> Result<TangleDiagram> {
        if sign == TangleSign::NonAlternating {
            return Err(Error::Generation("strongly alternating tangles have a sign".into()));
        }
        let mut tried = 0;
        let mut cut_ok = 0;
        while tried < budget {
            let d = self.prime_alternating_with(lo, hi, budget - tried)?;
            tried += 1;
            let faces = d.map.faces();
            let f = self.rng.random_range(0..faces.count);
            let darts: Vec<usize> = (0..d.map.pair.len()).filter(|&h| faces.face_of[h] == f).collect();
            if darts.len() < 2 {
                continue;
            }
            let i = self.rng.random_range(0..darts.len());
            let j = (i + self.rng.random_range(1..darts.len())) % darts.len();
            let Some(t) = cut_along_face(&d, darts[i], darts[j]) else {
                continue;
            };
            cut_ok += 1;
            if !t.is_strongly_alternating() {
                continue;
            }
            return Ok(match t.sign() {
                s if s == sign => t,
                _ => t.mirror(),
            });
        }
        Err(Error::Generation(format!(
            "rejection budget of {budget} exhausted: {cut_ok} cuts made, none strongly alternating"
        )))
    }

    /// Knot `T1 + T2` of two strongly alternating tangles; with `mixed` the
    /// second one is negative, so the sum is not alternating. When a sum is a
    /// link, the quarter-turned mirror of each summand (same sign, other
    /// closures swapped) is tried before drawing new tangles.
    pub fn two_tangle_knot(&mut self, lo: usize, hi: usize, mixed: bool) -> Result<SumInstance> {
        const ATTEMPTS: usize = 200;
        for _ in 0..ATTEMPTS {
            let t1 = self.strongly_alternating_tangle(lo, hi, TangleSign::Positive)?;
            let s2 = if mixed {
                TangleSign::Negative
            } else {
                TangleSign::Positive
            };
            let t2 = self.strongly_alternating_tangle(lo, hi, s2)?;
            let firsts = [t1.clone(), t1.mirror().rotate()];
            let seconds = [t2.clone(), t2.mirror().rotate()];
            for a in &firsts {
                for b in &seconds {
                    let tangles = vec![a.clone(), b.clone()];
                    let diagram = conway_sum(&tangles)?;
                    if diagram.component_count() == 1 {
                        return Ok(SumInstance { tangles, diagram });
                    }
                }
            }
        }
        Err(Error::Generation(format!(
            "no knot among {ATTEMPTS} two-tangle sums with {lo}..={hi} crossings per tangle"
        )))
    }

    /// Conway sum of `n` alternating rational tangles with `lo..=hi`
    /// crossings each and random signs.
    pub fn rational_sum(&mut self, n: usize, lo: usize, hi: usize) -> Result<SumInstance> {
        if n == 0 || lo == 0 || hi < lo {
            return Err(Error::Generation("size 0 requested".into()));
        }
        let tangles: Vec<_> = (0..n)
            .map(|_| {
                let c = self.rng.random_range(lo..=hi);
                let positive = self.rng.random_bool(0.5);
                rational_tangle(&self.continued_fraction(c, positive))
            })
            .collect();
        let diagram = conway_sum(&tangles)?;
        Ok(SumInstance { tangles, diagram })
    }

    /// Adds a kink of random sign on a random edge.
    pub fn add_random_kink(&mut self, d: &LinkDiagram) -> LinkDiagram {
        let n = d.map.pair.len().max(1);
        let edge = self.rng.random_range(0..n);
        let positive = self.rng.random_bool(0.5);
        add_kink(d, edge, positive)
    }

    /// Relabels the crossings of `d` at random.
    pub fn permute(&mut self, d: &LinkDiagram) -> LinkDiagram {
        let perm = self.permutation(d.crossing_count());
        permute_crossings(d, &perm)
    }
}
