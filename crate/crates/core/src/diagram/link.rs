use super::map::{he, slot, straight, vertex, PlanarMap};
use super::tangle::TangleDiagram;
use crate::error::{Error, Result};

/// Where each crossing of a Conway sum came from.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub(crate) tangles: Vec<TangleDiagram>,
    /// `(tangle, crossing within tangle)` per crossing of the sum.
    pub(crate) origin: Vec<(usize, usize)>,
    /// Slot `s` of a sum crossing is slot `s + 2` of its tangle crossing when set.
    pub(crate) rotated: Vec<bool>,
}

impl Decomposition {
    pub fn tangles(&self) -> &[TangleDiagram] {
        &self.tangles
    }

    pub fn tangle_of(&self, crossing: usize) -> usize {
        self.origin[crossing].0
    }

    pub fn origin(&self, crossing: usize) -> (usize, usize) {
        self.origin[crossing]
    }

    /// Slot of the tangle crossing that corresponds to `slot` of the sum crossing.
    pub fn tangle_slot(&self, crossing: usize, slot: usize) -> usize {
        if self.rotated[crossing] {
            (slot + 2) % 4
        } else {
            slot
        }
    }
}

/// The four crossings added by [`add_belt`](super::add_belt) and the
/// half-edges through which the belted strands leave them.
#[derive(Clone, Debug)]
pub(crate) struct BeltMark {
    /// Top-west, top-east, bottom-west, bottom-east.
    pub crossings: [usize; 4],
    /// West end of the top strand, west end of the bottom strand,
    /// east end of the top strand, east end of the bottom strand.
    pub ports: [usize; 4],
}

/// An oriented link diagram on the sphere.
///
/// Slot 0 of every crossing is the incoming under-strand, so slot 2 is the
/// outgoing under-strand. A crossing is positive when its over-strand enters
/// through slot 3.
#[derive(Clone, Debug)]
pub struct LinkDiagram {
    pub(crate) map: PlanarMap,
    pub(crate) positive: Vec<bool>,
    pub(crate) belt: Option<BeltMark>,
    pub(crate) decomposition: Option<Decomposition>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.positive == other.positive
    }
}

impl Eq for LinkDiagram {}

impl LinkDiagram {
    pub fn empty() -> Self {
        LinkDiagram {
            map: PlanarMap::empty(),
            positive: Vec::new(),
            belt: None,
            decomposition: None,
        }
    }

    /// Builds an unoriented map into a diagram: each strand is oriented so
    /// that its smallest half-edge is outgoing, then crossings are rotated so
    /// that slot 0 is incoming. The returned flags record which crossings
    /// were rotated.
    pub(crate) fn from_map(map: PlanarMap) -> (LinkDiagram, Vec<bool>) {
        debug_assert!(!map.boundary);
        let mut incoming = vec![false; map.pair.len()];
        for strand in map.strands() {
            for &d in &strand.departures {
                incoming[map.pair[d]] = true;
            }
        }
        Self::from_orientation(map, &incoming)
    }

    /// Normalizes crossings given an incoming flag for every half-edge.
    pub(crate) fn from_orientation(map: PlanarMap, incoming: &[bool]) -> (LinkDiagram, Vec<bool>) {
        let c = map.crossings;
        let rotated: Vec<bool> = (0..c).map(|v| !incoming[he(v, 0)]).collect();
        let shift = |h: usize| {
            if rotated[vertex(h)] {
                he(vertex(h), (slot(h) + 2) % 4)
            } else {
                h
            }
        };
        let map = map.relabel(shift);
        let positive = (0..c)
            .map(|v| {
                let old = if rotated[v] { he(v, 1) } else { he(v, 3) };
                incoming[old]
            })
            .collect();
        (
            LinkDiagram {
                map,
                positive,
                belt: None,
                decomposition: None,
            },
            rotated,
        )
    }

    pub fn crossing_count(&self) -> usize {
        self.map.crossings
    }

    pub fn component_count(&self) -> usize {
        self.map.closed_components()
    }

    pub fn free_loops(&self) -> usize {
        self.map.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.map.crossings == 0 && self.map.free_loops == 0
    }

    /// Crossing signs, `+1` or `-1`.
    pub fn signs(&self) -> Vec<i32> {
        self.positive.iter().map(|&p| if p { 1 } else { -1 }).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.positive.iter().map(|&p| if p { 1 } else { -1 }).sum()
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    pub fn has_belt(&self) -> bool {
        self.belt.is_some()
    }

    /// Crossing indices of the belt, if the diagram carries one.
    pub fn belt_crossings(&self) -> Option<[usize; 4]> {
        self.belt.as_ref().map(|b| b.crossings)
    }

    /// Drops the belt and decomposition markings.
    pub fn unmarked(&self) -> LinkDiagram {
        LinkDiagram {
            map: self.map.clone(),
            positive: self.positive.clone(),
            belt: None,
            decomposition: None,
        }
    }

    #[inline]
    pub(crate) fn is_incoming(&self, h: usize) -> bool {
        match slot(h) {
            0 => true,
            2 => false,
            3 => self.positive[vertex(h)],
            _ => !self.positive[vertex(h)],
        }
    }

    /// Oriented components through crossings, each as its outgoing half-edges
    /// in order, starting from the smallest outgoing half-edge.
    pub(crate) fn oriented_strands(&self) -> Vec<Vec<usize>> {
        let n = self.map.pair.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.is_incoming(start) {
                continue;
            }
            let mut deps = Vec::new();
            let mut h = start;
            loop {
                deps.push(h);
                seen[h] = true;
                let a = self.map.pair[h];
                seen[a] = true;
                h = straight(a);
                if h == start {
                    break;
                }
            }
            out.push(deps);
        }
        out
    }

    /// Component index of every half-edge (free loops are numbered last and
    /// own no half-edges).
    pub fn component_of_half_edges(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.map.pair.len()];
        for (i, strand) in self.oriented_strands().iter().enumerate() {
            for &d in strand {
                comp[d] = i;
                comp[self.map.pair[d]] = i;
            }
        }
        comp
    }

    /// Reverses the components flagged in `which`, indexed as in
    /// [`component_of_half_edges`](Self::component_of_half_edges). Markings are dropped.
    pub fn reverse_components(&self, which: &[bool]) -> LinkDiagram {
        let comp = self.component_of_half_edges();
        let incoming: Vec<bool> = (0..self.map.pair.len())
            .map(|h| {
                let flip = comp[h] != usize::MAX && which.get(comp[h]).copied().unwrap_or(false);
                self.is_incoming(h) != flip
            })
            .collect();
        LinkDiagram::from_orientation(self.map.clone(), &incoming).0
    }

    /// Whether the underlying 4-valent graph is connected. Free loops count
    /// as separate pieces; the empty diagram is not connected.
    pub fn is_connected(&self) -> bool {
        if self.map.crossings == 0 {
            return self.map.free_loops == 1;
        }
        self.map.free_loops == 0 && self.map.vertex_components().1 == 1
    }

    /// Every edge joins an over-slot to an under-slot.
    pub fn is_alternating(&self) -> bool {
        (0..self.map.pair.len()).all(|h| self.map.edge_alternates(h))
    }

    /// Swaps over and under at every crossing, keeping the orientation.
    pub fn mirror(&self) -> LinkDiagram {
        let positive = &self.positive;
        let r = |v: usize| if positive[v] { 1 } else { 3 };
        // new slot s is old slot s + 3 at a positive crossing, s + 1 at a negative one
        let map = self.map.relabel(|h| he(vertex(h), (slot(h) + r(vertex(h))) % 4));
        LinkDiagram {
            map,
            positive: self.positive.iter().map(|p| !p).collect(),
            belt: None,
            decomposition: None,
        }
    }

    /// Crossing tuples with edges numbered consecutively along components.
    pub fn pd_tuples(&self) -> (Vec<[u64; 4]>, Vec<u64>) {
        let mut label = vec![0u64; self.map.pair.len()];
        let mut next = 1u64;
        for strand in self.oriented_strands() {
            for &d in &strand {
                label[d] = next;
                label[self.map.pair[d]] = next;
                next += 1;
            }
        }
        let tuples = (0..self.map.crossings)
            .map(|v| [0, 1, 2, 3].map(|s| label[he(v, s)]))
            .collect();
        let loops = (0..self.map.free_loops as u64).map(|i| next + i).collect();
        (tuples, loops)
    }

    /// Writes the diagram as PD text.
    pub fn emit_pd(&self) -> String {
        let (tuples, loops) = self.pd_tuples();
        let mut parts: Vec<String> = tuples
            .iter()
            .map(|t| format!("X({},{},{},{})", t[0], t[1], t[2], t[3]))
            .collect();
        parts.extend(loops.iter().map(|l| format!("Loop({l})")));
        parts.join(" ")
    }

    pub(crate) fn require_connected_with_crossings(&self) -> Result<()> {
        if self.map.crossings == 0 {
            return Err(Error::NoCrossings);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }
}

impl std::fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.emit_pd())
    }
}
