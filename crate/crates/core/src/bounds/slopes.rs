use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Euclidean cusp torus given by its meridian and longitude translations.
///
/// Lengths are computed from the exact Gram form
/// `|p·μ + q·λ|² = a p² + b pq + c q²` with rational `a`, `b`, `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspLattice {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl CuspLattice {
    /// Cusp of the 3-chain link complement: `λ = 4`, `μ = 3/2 + (√7/2) i`.
    pub fn three_chain() -> Self {
        // |μ|² = 9/4 + 7/4, 2 Re(μ λ̄) = 12, |λ|² = 16
        CuspLattice::from_gram(rat(4, 1), rat(12, 1), rat(16, 1)).expect("positive definite")
    }

    /// Lattice with `|p·μ + q·λ|² = a p² + b pq + c q²`.
    pub fn from_gram(a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        let four: BigRational = rat(4, 1);
        if !a.is_positive() || !(&four * &a * &c - &b * &b).is_positive() {
            return Err(Error::DegenerateLattice);
        }
        Ok(CuspLattice { a, b, c })
    }

    /// Lattice from floating-point translations, each `(re, im)`. The
    /// coordinates are converted exactly to rationals.
    pub fn from_translations(meridian: (f64, f64), longitude: (f64, f64)) -> Result<Self> {
        let conv = |x: f64| BigRational::from_float(x).ok_or(Error::DegenerateLattice);
        let (mr, mi, lr, li) = (
            conv(meridian.0)?,
            conv(meridian.1)?,
            conv(longitude.0)?,
            conv(longitude.1)?,
        );
        let a = &mr * &mr + &mi * &mi;
        let b = rat(2, 1) * (&mr * &lr + &mi * &li);
        let c = &lr * &lr + &li * &li;
        CuspLattice::from_gram(a, b, c)
    }

    /// Exact squared length of the slope `p/q`.
    pub fn length_squared(&self, p: i64, q: i64) -> BigRational {
        let (p, q) = (BigRational::from_integer(p.into()), BigRational::from_integer(q.into()));
        &self.a * &p * &p + &self.b * &p * &q + &self.c * &q * &q
    }

    pub fn length(&self, s: Slope) -> f64 {
        self.length_squared(s.p, s.q).to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    /// Largest `|p|` and `|q|` of a vector of length at most `cutoff`.
    fn search_box(&self, cutoff: f64) -> (i64, i64) {
        let (a, b, c) = (
            self.a.to_f64().unwrap_or(0.0),
            self.b.to_f64().unwrap_or(0.0),
            self.c.to_f64().unwrap_or(0.0),
        );
        let p_max = cutoff / (a - b * b / (4.0 * c)).sqrt();
        let q_max = cutoff / (c - b * b / (4.0 * a)).sqrt();
        (p_max.ceil() as i64 + 1, q_max.ceil() as i64 + 1)
    }
}

/// A slope `p/q` in lowest terms with `q ≥ 0`, and `1/0` for the meridian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Option<Slope> {
        if p == 0 && q == 0 {
            return None;
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Some(Slope { p, q })
    }

    pub const INFINITY: Slope = Slope { p: 1, q: 0 };

    pub fn integer(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Slopes of the 3-chain link cusp whose fillings are not hyperbolic.
pub const NON_HYPERBOLIC_SLOPES: [Slope; 5] = [
    Slope { p: 1, q: 0 },
    Slope { p: -3, q: 1 },
    Slope { p: -2, q: 1 },
    Slope { p: -1, q: 1 },
    Slope { p: 0, q: 1 },
];

/// Every slope of length at most `cutoff`, sorted by denominator and then
/// numerator. The comparison with `cutoff²` is exact when `cutoff²` is the
/// square of a float with an exact rational value.
pub fn enumerate_short_slopes(lattice: &CuspLattice, cutoff: f64) -> Result<Vec<Slope>> {
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(domain(
            "enumerate_short_slopes",
            format!("cutoff {cutoff} is not positive"),
        ));
    }
    let bound = BigRational::from_float(cutoff).ok_or(Error::DegenerateLattice)?;
    let bound2 = &bound * &bound;
    let (p_max, q_max) = lattice.search_box(cutoff);
    let mut out = Vec::new();
    for q in 0..=q_max {
        for p in -p_max..=p_max {
            if q == 0 && p <= 0 {
                continue;
            }
            if p.gcd(&q) != 1 {
                continue;
            }
            if lattice.length_squared(p, q) <= bound2 {
                out.push(Slope { p, q });
            }
        }
    }
    out.sort_by_key(|s| (s.q, s.p));
    Ok(out)
}
