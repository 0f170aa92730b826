//! All-A and all-B states, their state graphs, adequacy, and the edge-loss
//! bookkeeping for Conway sums.
//!
//! The A-smoothing at a crossing joins the two regions swept when the
//! over-strand is turned counterclockwise. With slots numbered
//! counterclockwise and the over-strand on the odd slots, it pairs slots
//! `(0, 1)` and `(2, 3)`; the B-smoothing pairs `(1, 2)` and `(3, 0)`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::diagram::map::{he, slot, vertex, PlanarMap};
use crate::diagram::{LinkDiagram, TangleDiagram};
use crate::error::{Error, Result};
use crate::jones::smoothing_partner;
use crate::twist::{twist_number, twist_partition_tangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    pub fn other(self) -> Smoothing {
        match self {
            Smoothing::A => Smoothing::B,
            Smoothing::B => Smoothing::A,
        }
    }
}

/// Circles (and, for tangles, the two boundary arcs) of a resolved diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCircles {
    /// Number of circles, free loops included.
    pub count: usize,
    /// Circle of every half-edge; free loops get the highest indices and own
    /// no half-edges.
    pub circle_of: Vec<usize>,
}

pub(crate) fn resolve_map(map: &PlanarMap, choice: impl Fn(usize) -> Smoothing) -> StateCircles {
    let n = map.pair.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra.max(rb)] = ra.min(rb);
        }
    };
    for h in 0..n {
        union(&mut parent, h, map.pair[h]);
        if map.is_crossing_he(h) {
            let t = he(vertex(h), smoothing_partner(slot(h), choice(vertex(h))));
            union(&mut parent, h, t);
        }
    }
    let mut index = HashMap::new();
    let mut circle_of = vec![0; n];
    for (h, c) in circle_of.iter_mut().enumerate() {
        let r = find(&mut parent, h);
        let next = index.len();
        *c = *index.entry(r).or_insert(next);
    }
    StateCircles {
        count: index.len() + map.free_loops,
        circle_of,
    }
}

/// Resolves every crossing with the same smoothing.
pub fn resolve_state(d: &LinkDiagram, choice: Smoothing) -> StateCircles {
    resolve_map(&d.map, |_| choice)
}

/// Resolves one crossing, leaving the others in place.
pub fn smooth_crossing(d: &LinkDiagram, crossing: usize, choice: Smoothing) -> LinkDiagram {
    use crate::diagram::map::{splice, Role};
    let map = &d.map;
    let roles: Vec<Role> = (0..map.pair.len())
        .map(|h| {
            let v = vertex(h);
            if v == crossing {
                Role::Transit(he(v, smoothing_partner(slot(h), choice)))
            } else if v < crossing {
                Role::Keep(h)
            } else {
                Role::Keep(h - 4)
            }
        })
        .collect();
    let (pair, loops) = splice(&map.pair, &roles, map.pair.len() - 4);
    let new_map = PlanarMap {
        pair,
        crossings: map.crossings - 1,
        boundary: false,
        free_loops: map.free_loops + loops,
    };
    LinkDiagram::from_map(new_map).0
}

/// A state graph: one vertex per circle, one edge per crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateGraph {
    pub choice: Smoothing,
    pub vertex_count: usize,
    /// Endpoints of the edge of each crossing.
    pub edges: Vec<(usize, usize)>,
}

impl StateGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges with both ends on one circle.
    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    /// Edge count after collapsing every family of parallel edges to one.
    pub fn reduced_edge_count(&self) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Crossings grouped into parallel families, ordered by smallest crossing.
    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let mut groups: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (x, &(a, b)) in self.edges.iter().enumerate() {
            groups.entry((a.min(b), a.max(b))).or_default().push(x);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }
}

fn graph_of_map(map: &PlanarMap, choice: Smoothing) -> (StateGraph, StateCircles) {
    let circles = resolve_map(map, |_| choice);
    let (s1, s2) = match choice {
        Smoothing::A => (0, 2),
        Smoothing::B => (1, 3),
    };
    let edges = (0..map.crossings)
        .map(|v| (circles.circle_of[he(v, s1)], circles.circle_of[he(v, s2)]))
        .collect();
    (
        StateGraph {
            choice,
            vertex_count: circles.count,
            edges,
        },
        circles,
    )
}

pub fn state_graph(d: &LinkDiagram, choice: Smoothing) -> StateGraph {
    graph_of_map(&d.map, choice).0
}

pub fn reduced_edge_count(g: &StateGraph) -> usize {
    g.reduced_edge_count()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateSummary {
    pub c: usize,
    pub v_a: usize,
    pub e_a: usize,
    pub e_a_reduced: usize,
    pub v_b: usize,
    pub e_b: usize,
    pub e_b_reduced: usize,
    pub adequate_a: bool,
    pub adequate_b: bool,
}

impl StateSummary {
    pub fn adequate(&self) -> bool {
        self.adequate_a && self.adequate_b
    }

    /// `e'_A + e'_B - v_A - v_B + 2`.
    pub fn stoimenow_value(&self) -> i64 {
        self.e_a_reduced as i64 + self.e_b_reduced as i64 - self.v_a as i64 - self.v_b as i64 + 2
    }

    /// Edges removed when both graphs are reduced.
    pub fn reduction_loss(&self) -> usize {
        self.e_a + self.e_b - self.e_a_reduced - self.e_b_reduced
    }
}

fn summary_of(ga: &StateGraph, gb: &StateGraph, c: usize) -> StateSummary {
    StateSummary {
        c,
        v_a: ga.vertex_count,
        e_a: ga.edge_count(),
        e_a_reduced: ga.reduced_edge_count(),
        v_b: gb.vertex_count,
        e_b: gb.edge_count(),
        e_b_reduced: gb.reduced_edge_count(),
        adequate_a: ga.loop_count() == 0,
        adequate_b: gb.loop_count() == 0,
    }
}

pub fn state_summary(d: &LinkDiagram) -> StateSummary {
    let (ga, gb) = rayon::join(|| state_graph(d, Smoothing::A), || state_graph(d, Smoothing::B));
    summary_of(&ga, &gb, d.crossing_count())
}

/// Both state graphs are loop-free.
pub fn is_adequate(d: &LinkDiagram) -> bool {
    state_summary(d).adequate()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StoimenowQuantity {
    pub value: i64,
    /// False when the diagram is inadequate and the value carries no meaning.
    pub adequate: bool,
}

/// `e'_A + e'_B - v_A - v_B + 2`, flagged when the diagram is inadequate.
pub fn stoimenow_quantity(d: &LinkDiagram) -> Result<StoimenowQuantity> {
    d.require_connected_with_crossings()?;
    let s = state_summary(d);
    Ok(StoimenowQuantity {
        value: s.stoimenow_value(),
        adequate: s.adequate(),
    })
}

/// State graph of a tangle; the two arcs ending on the boundary are its
/// exterior vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangleStateGraph {
    pub graph: StateGraph,
    pub exterior: [usize; 2],
    /// Vertex of the arc through each corner (NW, NE, SE, SW).
    pub corner_vertex: [usize; 4],
}

pub fn tangle_state_graph(t: &TangleDiagram, choice: Smoothing) -> TangleStateGraph {
    let map = &t.map;
    let (graph, circles) = graph_of_map(map, choice);
    let b = map.crossings;
    let corner_vertex = [0, 1, 2, 3].map(|k| circles.circle_of[he(b, k)]);
    let mut ext: Vec<usize> = corner_vertex.to_vec();
    ext.sort_unstable();
    ext.dedup();
    debug_assert_eq!(ext.len(), 2);
    TangleStateGraph {
        graph,
        exterior: [ext[0], ext[1]],
        corner_vertex,
    }
}

/// `(e_A - e'_A) + (e_B - e'_B)` for the state graphs of a tangle.
pub fn tangle_reduction_loss(t: &TangleDiagram) -> usize {
    [Smoothing::A, Smoothing::B]
        .iter()
        .map(|&ch| {
            let g = tangle_state_graph(t, ch).graph;
            g.edge_count() - g.reduced_edge_count()
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BridgeType {
    /// Both edges come from different twist regions.
    I,
    /// Some edge to each exterior vertex comes from one twist region.
    II,
}

/// An interior vertex joined to both exterior vertices of a tangle state graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bridge {
    pub choice: Smoothing,
    pub vertex: usize,
    /// Crossings giving edges to the first and to the second exterior vertex.
    pub to_first: Vec<usize>,
    pub to_second: Vec<usize>,
    pub kind: BridgeType,
}

/// Bridges of an alternating tangle in one state graph.
pub fn bridges(t: &TangleDiagram, choice: Smoothing) -> Result<Vec<Bridge>> {
    if !t.is_alternating() {
        return Err(Error::NotAlternating);
    }
    let tg = tangle_state_graph(t, choice);
    let regions = twist_partition_tangle(t);
    let [x1, x2] = tg.exterior;
    let mut to_first: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut to_second: HashMap<usize, Vec<usize>> = HashMap::new();
    for (cr, &(a, b)) in tg.graph.edges.iter().enumerate() {
        for (u, w) in [(a, b), (b, a)] {
            if u == x1 && w != x1 && w != x2 {
                to_first.entry(w).or_default().push(cr);
            }
            if u == x2 && w != x1 && w != x2 {
                to_second.entry(w).or_default().push(cr);
            }
        }
    }
    let mut out: Vec<Bridge> = to_first
        .into_iter()
        .filter_map(|(v, f)| {
            let s = to_second.get(&v)?.clone();
            let same_region = f
                .iter()
                .any(|&x| s.iter().any(|&y| regions.class_of[x] == regions.class_of[y]));
            Some(Bridge {
                choice,
                vertex: v,
                kind: if same_region { BridgeType::II } else { BridgeType::I },
                to_first: f,
                to_second: s,
            })
        })
        .collect();
    out.sort_by_key(|b| b.vertex);
    Ok(out)
}

/// A bridge of one summand, with whether it survives in the sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumBridge {
    pub tangle: usize,
    pub bridge: Bridge,
    /// False when the exterior vertices of the tangle lie on one circle of
    /// the summed diagram's state, so the bridge collapses to parallel edges.
    /// `None` when an exterior arc carries no crossing.
    pub admissible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LossReport {
    pub ell_in: i64,
    pub ell_ext: i64,
    /// `e_A + e_B - e'_A - e'_B` of the sum.
    pub total_loss: usize,
    /// Losses attributed to parallel edges from one twist region of one tangle.
    pub ell_in_attributed: usize,
    pub bridges: Vec<SumBridge>,
    pub summary: StateSummary,
    pub twist_number: usize,
}

impl LossReport {
    pub fn type_two_count(&self, tangle: usize, choice: Smoothing) -> usize {
        self.bridges
            .iter()
            .filter(|b| b.tangle == tangle && b.bridge.choice == choice && b.bridge.kind == BridgeType::II)
            .count()
    }
}

/// Splits the reduction loss of a Conway sum into losses inside twist
/// regions and losses caused by gluing tangles together.
pub fn losses(d: &LinkDiagram) -> Result<LossReport> {
    let dec = d.decomposition().ok_or(Error::MissingDecomposition)?;
    let summary = state_summary(d);
    let tw = twist_number(d);
    let ell_in = summary.c as i64 - tw as i64;
    let total = summary.reduction_loss();
    let regions: Vec<_> = dec.tangles().iter().map(twist_partition_tangle).collect();
    let mut attributed = 0;
    let mut bridges_out = Vec::new();
    for choice in [Smoothing::A, Smoothing::B] {
        let g = state_graph(d, choice);
        for class in g.parallel_classes() {
            let mut groups: HashMap<(usize, usize), usize> = HashMap::new();
            for &x in &class {
                let (ti, tc) = dec.origin(x);
                *groups.entry((ti, regions[ti].class_of[tc])).or_default() += 1;
            }
            attributed += groups.values().map(|n| n - 1).sum::<usize>();
        }
        let circles = resolve_state(d, choice);
        for (ti, t) in dec.tangles().iter().enumerate() {
            let Ok(bs) = bridges(t, choice) else { continue };
            if bs.is_empty() {
                continue;
            }
            let tg = tangle_state_graph(t, choice);
            let admissible = exterior_circles(d, ti, t, &tg, &circles).map(|(a, b)| a != b);
            for bridge in bs {
                bridges_out.push(SumBridge {
                    tangle: ti,
                    bridge,
                    admissible,
                });
            }
        }
    }
    Ok(LossReport {
        ell_in,
        ell_ext: total as i64 - ell_in,
        total_loss: total,
        ell_in_attributed: attributed,
        bridges: bridges_out,
        summary,
        twist_number: tw,
    })
}

/// Circles of the summed diagram containing the two exterior arcs of tangle `ti`.
fn exterior_circles(
    d: &LinkDiagram,
    ti: usize,
    t: &TangleDiagram,
    tg: &TangleStateGraph,
    circles: &StateCircles,
) -> Option<(usize, usize)> {
    let dec = d.decomposition()?;
    let tc = tangle_state_graph_circles(t, tg.graph.choice);
    let mut found = [None, None];
    for (local, &v) in tc.iter().enumerate() {
        let Some(idx) = tg.exterior.iter().position(|&x| x == v) else {
            continue;
        };
        if found[idx].is_some() {
            continue;
        }
        let (lc, ls) = (vertex(local), slot(local));
        if lc >= t.crossing_count() {
            continue;
        }
        let link_crossing = (0..d.crossing_count()).find(|&x| dec.origin(x) == (ti, lc))?;
        let link_slot = (0..4).find(|&s| dec.tangle_slot(link_crossing, s) == ls)?;
        found[idx] = Some(circles.circle_of[he(link_crossing, link_slot)]);
    }
    Some((found[0]?, found[1]?))
}

fn tangle_state_graph_circles(t: &TangleDiagram, choice: Smoothing) -> Vec<usize> {
    resolve_map(&t.map, |_| choice).circle_of
}
