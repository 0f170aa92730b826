use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize, Serializer};

use super::{psi, PSI_CAP};
use crate::error::{domain, Error, Result};

/// The lens space `L(p, q)`; `L(1, 0)` is the 3-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LensSpace {
    pub p: u64,
    pub q: u64,
}

impl LensSpace {
    pub const SPHERE: LensSpace = LensSpace { p: 1, q: 0 };
}

impl FromStr for LensSpace {
    type Err = Error;

    /// Accepts `L(p,q)` with optional spaces, and `S^3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedLensSpace(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "S^3" || t == "S3" {
            return Ok(LensSpace::SPHERE);
        }
        let inner = t.strip_prefix("L(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (p, q) = inner.split_once(',').ok_or_else(bad)?;
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        if p == 0 {
            return Err(bad());
        }
        Ok(LensSpace { p, q })
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == LensSpace::SPHERE {
            f.write_str("S^3")
        } else {
            write!(f, "L({},{})", self.p, self.q)
        }
    }
}

impl Serialize for LensSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LensSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One small-volume one-cusped census manifold, as a filling of two cusps of
/// the 3-chain link complement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub name: String,
    pub alternate_name: String,
    /// Volume truncated to four decimals.
    pub volume: f64,
    /// Filling slopes on two cusps of the 3-chain link complement.
    pub surgery: [String; 2],
    pub fillings: Vec<LensSpace>,
}

/// The ten one-cusped manifolds of volume at most 2.848.
pub fn census() -> &'static [CensusEntry] {
    static TABLE: OnceLock<Vec<CensusEntry>> = OnceLock::new();
    TABLE.get_or_init(|| serde_json::from_str(include_str!("census.json")).expect("embedded census parses"))
}

/// Rows matching a manifold name (`m003`), an alternate name, or a lens
/// space filling (`L(10,3)`).
pub fn census_lookup(key: &str) -> Result<Vec<&'static CensusEntry>> {
    let key = key.trim();
    let rows: Vec<_> = if let Ok(lens) = key.parse::<LensSpace>() {
        census().iter().filter(|e| e.fillings.contains(&lens)).collect()
    } else {
        census()
            .iter()
            .filter(|e| e.name == key || (!e.alternate_name.is_empty() && e.alternate_name == key))
            .collect()
    };
    if rows.is_empty() {
        return Err(Error::UnknownManifold(key.to_string()));
    }
    Ok(rows)
}

const EXCEPTIONS: [(u64, LensSpace, &str, &str); 2] = [
    (
        10,
        LensSpace { p: 10, q: 3 },
        "m003",
        "5-component link of period 10 whose quotient is the complement of m003 in L(10,3)",
    ),
    (
        15,
        LensSpace { p: 15, q: 4 },
        "m006",
        "5-component link of period 15 whose quotient is the complement of m006 in L(15,4)",
    ),
];

const SHARP: [(u64, &str); 4] = [(14, "m017"), (21, "m017"), (18, "m016"), (19, "m016")];

/// What is known about the quotient of a freely periodic link complement.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Quotient {
    /// The quotient is a census manifold, optionally with its lens space.
    Filling { manifold: String, lens: Option<LensSpace> },
    /// Only the quotient volume is known.
    Volume(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Classification {
    /// `vol ≥ p·ψ(p)`; `sharp` marks the covers where equality is nearly attained.
    Bound {
        value: f64,
        sharp: bool,
    },
    Exception {
        description: &'static str,
    },
    NotApplicable {
        reason: String,
    },
}

fn classify_row(p: u64, row: &CensusEntry, lens: LensSpace) -> Result<Classification> {
    for (ep, el, name, description) in EXCEPTIONS {
        if ep == p && el == lens && name == row.name {
            return Ok(Classification::Exception { description });
        }
    }
    Ok(Classification::Bound {
        value: p as f64 * psi(p as f64)?,
        sharp: SHARP.contains(&(p, row.name.as_str())),
    })
}

/// Volume bound `p·ψ(p)` for a hyperbolic link with free period `p ≥ 6`,
/// or one of the two exceptional links.
pub fn periodic_classify(p: u64, quotient: &Quotient) -> Result<Classification> {
    if p < 6 {
        return Err(domain("periodic_classify", format!("period {p} is below 6")));
    }
    match quotient {
        Quotient::Filling { manifold, lens } => {
            let row = census()
                .iter()
                .find(|e| &e.name == manifold)
                .ok_or_else(|| Error::UnknownManifold(manifold.clone()))?;
            let lens = match lens {
                Some(l) => *l,
                None => match row.fillings.iter().find(|l| l.p == p) {
                    Some(l) => *l,
                    None => {
                        return Ok(Classification::NotApplicable {
                            reason: format!("{} has no lens space filling of order {p}", row.name),
                        })
                    }
                },
            };
            if lens.p != p {
                return Ok(Classification::NotApplicable {
                    reason: format!("{lens} has fundamental group of order {}, not {p}", lens.p),
                });
            }
            if !row.fillings.contains(&lens) {
                return Ok(Classification::NotApplicable {
                    reason: format!("{lens} is not a filling of {}", row.name),
                });
            }
            classify_row(p, row, lens)
        }
        Quotient::Volume(v) => {
            if !(*v > 0.0) {
                return Err(domain("periodic_classify", "quotient volume is not positive"));
            }
            let candidates: Vec<(&CensusEntry, LensSpace)> = census()
                .iter()
                .filter(|e| (e.volume - v).abs() < 5e-5)
                .filter_map(|e| e.fillings.iter().find(|l| l.p == p).map(|l| (e, *l)))
                .collect();
            if candidates.is_empty() && *v < PSI_CAP {
                return Ok(Classification::NotApplicable {
                    reason: format!("no census manifold of volume {v} has a lens space filling of order {p}"),
                });
            }
            let mut sharp = false;
            for (row, lens) in candidates {
                match classify_row(p, row, lens)? {
                    Classification::Bound { sharp: s, .. } => sharp |= s,
                    other => return Ok(other),
                }
            }
            Ok(Classification::Bound {
                value: p as f64 * psi(p as f64)?,
                sharp,
            })
        }
    }
}
