use super::link::{BeltMark, Decomposition, LinkDiagram};
use super::map::{he, slot, splice, vertex, PlanarMap, Role, NE, NW, SE, SW};
use crate::error::{Error, Result};

/// Sign of an alternating tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TangleSign {
    Positive,
    Negative,
    NonAlternating,
}

/// A tangle diagram in the unit square with corners NW, NE, SE, SW.
///
/// The boundary is stored as one extra vertex whose slots are the corners;
/// tangles carry over/under data but no orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleDiagram {
    pub(crate) map: PlanarMap,
}

impl TangleDiagram {
    pub(crate) fn from_map(map: PlanarMap) -> Self {
        debug_assert!(map.boundary && map.is_involution());
        TangleDiagram { map }
    }

    #[inline]
    pub(crate) fn boundary(&self) -> usize {
        self.map.crossings
    }

    #[inline]
    pub(crate) fn corner(&self, k: usize) -> usize {
        he(self.map.crossings, k)
    }

    fn crossingless(a: (usize, usize), b: (usize, usize)) -> Self {
        let mut pair = vec![0; 4];
        pair[a.0] = a.1;
        pair[a.1] = a.0;
        pair[b.0] = b.1;
        pair[b.1] = b.0;
        TangleDiagram::from_map(PlanarMap {
            pair,
            crossings: 0,
            boundary: true,
            free_loops: 0,
        })
    }

    /// Arcs NW–NE and SW–SE.
    pub fn horizontal_trivial() -> Self {
        Self::crossingless((NW, NE), (SW, SE))
    }

    /// Arcs NW–SW and NE–SE.
    pub fn vertical_trivial() -> Self {
        Self::crossingless((NW, SW), (NE, SE))
    }

    /// A single crossing. It is positive when the strand from NE passes over.
    pub fn crossing(positive: bool) -> Self {
        let corners = if positive { [SE, NE, NW, SW] } else { [SW, SE, NE, NW] };
        let mut pair = vec![0; 8];
        for (s, &k) in corners.iter().enumerate() {
            pair[he(0, s)] = he(1, k);
            pair[he(1, k)] = he(0, s);
        }
        TangleDiagram::from_map(PlanarMap {
            pair,
            crossings: 1,
            boundary: true,
            free_loops: 0,
        })
    }

    /// A row of `|n|` crossings running west to east; the sign of `n` picks the sign.
    pub fn horizontal_twist(n: i64) -> Self {
        let mut t = Self::horizontal_trivial();
        for _ in 0..n.unsigned_abs() {
            t = t.sum(&Self::crossing(n > 0));
        }
        t
    }

    /// A column of `|n|` crossings running north to south.
    pub fn vertical_twist(n: i64) -> Self {
        Self::horizontal_twist(-n).rotate()
    }

    pub fn crossing_count(&self) -> usize {
        self.map.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.map.free_loops
    }

    /// Closed components inside the square.
    pub fn closed_components(&self) -> usize {
        self.map.closed_components()
    }

    /// Places `other` east of `self`, joining NE to NW and SE to SW.
    pub fn sum(&self, other: &TangleDiagram) -> TangleDiagram {
        let c1 = self.map.crossings;
        let c2 = other.map.crossings;
        let n1 = self.map.pair.len();
        let mut pair = self.map.pair.clone();
        pair.extend(other.map.pair.iter().map(|&p| p + n1));
        let b1 = c1;
        let b2 = c2;
        let nb = c1 + c2;
        let mut roles = Vec::with_capacity(pair.len());
        for h in 0..n1 {
            roles.push(if vertex(h) < b1 {
                Role::Keep(h)
            } else {
                match slot(h) {
                    NW => Role::Keep(he(nb, NW)),
                    SW => Role::Keep(he(nb, SW)),
                    NE => Role::Transit(n1 + he(b2, NW)),
                    _ => Role::Transit(n1 + he(b2, SW)),
                }
            });
        }
        for h in 0..other.map.pair.len() {
            roles.push(if vertex(h) < b2 {
                Role::Keep(4 * c1 + h)
            } else {
                match slot(h) {
                    NE => Role::Keep(he(nb, NE)),
                    SE => Role::Keep(he(nb, SE)),
                    NW => Role::Transit(he(b1, NE)),
                    _ => Role::Transit(he(b1, SE)),
                }
            });
        }
        let (pair, loops) = splice(&pair, &roles, 4 * (nb + 1));
        TangleDiagram::from_map(PlanarMap {
            pair,
            crossings: nb,
            boundary: true,
            free_loops: self.map.free_loops + other.map.free_loops + loops,
        })
    }

    /// Quarter turn clockwise: the corner that was NW becomes NE.
    pub fn rotate(&self) -> TangleDiagram {
        let b = self.boundary();
        TangleDiagram::from_map(
            self.map
                .relabel(|h| if vertex(h) == b { he(b, (slot(h) + 1) % 4) } else { h }),
        )
    }

    /// Quarter turn counterclockwise.
    pub fn rotate_back(&self) -> TangleDiagram {
        self.rotate().rotate().rotate()
    }

    /// Places `lower` south of `self`, joining SW to NW and SE to NE.
    pub fn stack(&self, lower: &TangleDiagram) -> TangleDiagram {
        lower.rotate().sum(&self.rotate()).rotate_back()
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> TangleDiagram {
        let c = self.map.crossings;
        TangleDiagram::from_map(self.map.relabel(|h| {
            if vertex(h) < c {
                he(vertex(h), (slot(h) + 1) % 4)
            } else {
                h
            }
        }))
    }

    fn close(&self, joins: [(usize, usize); 2]) -> PlanarMap {
        let c = self.map.crossings;
        let b = self.boundary();
        let mut partner = [0usize; 4];
        for (x, y) in joins {
            partner[x] = y;
            partner[y] = x;
        }
        let roles: Vec<Role> = (0..self.map.pair.len())
            .map(|h| {
                if vertex(h) < c {
                    Role::Keep(h)
                } else {
                    Role::Transit(he(b, partner[slot(h)]))
                }
            })
            .collect();
        let (pair, loops) = splice(&self.map.pair, &roles, 4 * c);
        PlanarMap {
            pair,
            crossings: c,
            boundary: false,
            free_loops: self.map.free_loops + loops,
        }
    }

    /// Joins NW to NE and SW to SE outside the square.
    pub fn numerator_closure(&self) -> LinkDiagram {
        LinkDiagram::from_map(self.close([(NW, NE), (SW, SE)])).0
    }

    /// Joins NW to SW and NE to SE outside the square.
    pub fn denominator_closure(&self) -> LinkDiagram {
        LinkDiagram::from_map(self.close([(NW, SW), (NE, SE)])).0
    }

    /// Every crossing-to-crossing edge joins an over-slot to an under-slot.
    pub fn is_alternating(&self) -> bool {
        (0..4 * self.map.crossings).all(|h| self.map.edge_alternates(h))
    }

    /// Whether the strand entering at corner `k` first meets an over-crossing.
    /// `None` when it reaches another corner without crossing.
    pub(crate) fn corner_leads_over(&self, k: usize) -> Option<bool> {
        let t = self.map.pair[self.corner(k)];
        self.map.is_crossing_he(t).then(|| slot(t) % 2 == 1)
    }

    pub fn sign(&self) -> TangleSign {
        if !self.is_alternating() {
            return TangleSign::NonAlternating;
        }
        // positive wants NE and SW over, NW and SE under
        let want_pos = [(NW, false), (NE, true), (SE, false), (SW, true)];
        let mut pos = true;
        let mut neg = true;
        for (k, over) in want_pos {
            if let Some(o) = self.corner_leads_over(k) {
                pos &= o == over;
                neg &= o != over;
            }
        }
        match (pos, neg) {
            (true, _) => TangleSign::Positive,
            (false, true) => TangleSign::Negative,
            _ => TangleSign::NonAlternating,
        }
    }

    /// Alternating, with both closures connected prime diagrams.
    pub fn is_strongly_alternating(&self) -> bool {
        self.sign() != TangleSign::NonAlternating
            && self.map.crossings > 0
            && self.numerator_closure().is_prime().unwrap_or(false)
            && self.denominator_closure().is_prime().unwrap_or(false)
    }

    /// Corner at the other end of the strand that starts at corner `k`.
    pub fn corner_partner(&self, k: usize) -> usize {
        let strands = self.map.strands();
        let b = self.boundary();
        for s in strands.iter().filter(|s| !s.closed) {
            let first = s.departures[0];
            let last = self.map.pair[*s.departures.last().unwrap()];
            if first == he(b, k) {
                return slot(last);
            }
            if last == he(b, k) {
                return slot(first);
            }
        }
        unreachable!("every corner lies on an open strand")
    }

    /// Crossing tuples and corner labels in the tangle text format.
    pub fn emit(&self) -> String {
        let n = self.map.pair.len();
        let mut label = vec![0u64; n];
        let mut next = 1;
        for h in 0..n {
            if label[h] == 0 {
                label[h] = next;
                label[self.map.pair[h]] = next;
                next += 1;
            }
        }
        let mut parts: Vec<String> = (0..self.map.crossings)
            .map(|v| {
                let t = [0, 1, 2, 3].map(|s| label[he(v, s)]);
                format!("X({},{},{},{})", t[0], t[1], t[2], t[3])
            })
            .collect();
        for i in 0..self.map.free_loops as u64 {
            parts.push(format!("Loop({})", next + i));
        }
        let b = self.boundary();
        parts.push(format!(
            "NW={} NE={} SE={} SW={}",
            label[he(b, NW)],
            label[he(b, NE)],
            label[he(b, SE)],
            label[he(b, SW)]
        ));
        parts.join(" ")
    }
}

impl std::fmt::Display for TangleDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.emit())
    }
}

/// Sums the tangles west to east and takes the numerator closure, keeping
/// track of which tangle every crossing came from.
pub fn conway_sum(tangles: &[TangleDiagram]) -> Result<LinkDiagram> {
    let (first, rest) = tangles.split_first().ok_or(Error::EmptySum)?;
    let total = rest.iter().fold(first.clone(), |acc, t| acc.sum(t));
    let map = total.close([(NW, NE), (SW, SE)]);
    let (mut link, rotated) = LinkDiagram::from_map(map);
    let origin = tangles
        .iter()
        .enumerate()
        .flat_map(|(i, t)| (0..t.crossing_count()).map(move |j| (i, j)))
        .collect();
    link.decomposition = Some(Decomposition {
        tangles: tangles.to_vec(),
        origin,
        rotated,
    });
    Ok(link)
}

// Local crossings of the belt tangle.
const TW: usize = 0;
const TE: usize = 1;
const BW: usize = 2;
const BE: usize = 3;

/// Two horizontal strands encircled by a vertical circle that passes over
/// them on the west and under them on the east.
fn belt_tangle() -> TangleDiagram {
    // west crossings: slots E, N, W, S (circle over); east: N, W, S, E (circle under)
    let (we, wn, ww, ws) = (0, 1, 2, 3);
    let (en, ew, es, ee) = (0, 1, 2, 3);
    let b = 4;
    let joins = [
        (he(TW, we), he(TE, ew)),
        (he(TW, wn), he(TE, en)),
        (he(TW, ws), he(BW, wn)),
        (he(BW, ws), he(BE, es)),
        (he(BE, en), he(TE, es)),
        (he(BW, we), he(BE, ew)),
        (he(b, NW), he(TW, ww)),
        (he(b, SW), he(BW, ww)),
        (he(b, NE), he(TE, ee)),
        (he(b, SE), he(BE, ee)),
    ];
    let mut pair = vec![0; 20];
    for (x, y) in joins {
        pair[x] = y;
        pair[y] = x;
    }
    TangleDiagram::from_map(PlanarMap {
        pair,
        crossings: 4,
        boundary: true,
        free_loops: 0,
    })
}

/// Numerator closure of `t` with a belt circle around its two closing arcs.
pub fn add_belt(t: &TangleDiagram) -> LinkDiagram {
    let c = t.crossing_count();
    let total = t.sum(&belt_tangle());
    let map = total.close([(NW, NE), (SW, SE)]);
    let (mut link, rotated) = LinkDiagram::from_map(map);
    let crossings = [c + TW, c + TE, c + BW, c + BE];
    // west slot of TW/BW is 2, east slot of TE/BE is 3, before normalization
    let raw = [he(c + TW, 2), he(c + BW, 2), he(c + TE, 3), he(c + BE, 3)];
    let ports = raw.map(|h| {
        if rotated[vertex(h)] {
            he(vertex(h), (slot(h) + 2) % 4)
        } else {
            h
        }
    });
    link.belt = Some(BeltMark { crossings, ports });
    link
}

/// Removes the belt and inserts a horizontal twist of `2|n|` crossings
/// between the two strands it encircled; `n = 0` gives back the plain closure.
pub fn twist_fill(belted: &LinkDiagram, n: i64) -> Result<LinkDiagram> {
    let belt = belted.belt.as_ref().ok_or(Error::MissingBelt)?;
    let rest_tangle = cut_belt(belted, belt);
    Ok(rest_tangle
        .sum(&TangleDiagram::horizontal_twist(2 * n))
        .numerator_closure())
}

/// The tangle left after cutting the belt crossings out of a belted diagram.
fn cut_belt(link: &LinkDiagram, belt: &BeltMark) -> TangleDiagram {
    let map = &link.map;
    let c = map.crossings;
    let mut index = vec![usize::MAX; c];
    let mut kept = 0;
    for (v, slot_index) in index.iter_mut().enumerate() {
        if !belt.crossings.contains(&v) {
            *slot_index = kept;
            kept += 1;
        }
    }
    // ports: west top, west bottom, east top, east bottom
    let port_corner = [NE, SE, NW, SW];
    let b = kept;
    let to_new = |h: usize| -> usize {
        if let Some(k) = belt.ports.iter().position(|&p| p == h) {
            he(b, port_corner[k])
        } else {
            he(index[vertex(h)], slot(h))
        }
    };
    let mut pair = vec![usize::MAX; 4 * (kept + 1)];
    for h in 0..map.pair.len() {
        let v = vertex(h);
        let keep = !belt.crossings.contains(&v) || belt.ports.contains(&h);
        if keep {
            pair[to_new(h)] = to_new(map.pair[h]);
        }
    }
    TangleDiagram::from_map(PlanarMap {
        pair,
        crossings: kept,
        boundary: true,
        free_loops: map.free_loops,
    })
}
