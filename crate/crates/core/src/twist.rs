//! Twist regions: crossings joined by a simple closed curve that meets the
//! diagram only at those crossings.
//!
//! Two crossings are related when two distinct faces sit at opposite corners
//! of both of them; the curve then runs through those two faces. Twist
//! regions are the classes of the transitive closure of this relation.

use std::collections::HashMap;

use serde::Serialize;

use crate::diagram::map::PlanarMap;
use crate::diagram::{LinkDiagram, TangleDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistPartition {
    /// Crossings of each region, sorted; regions ordered by smallest crossing.
    pub classes: Vec<Vec<usize>>,
    /// Region index of every crossing.
    pub class_of: Vec<usize>,
    pub twist_number: usize,
    /// Pairs of crossings in a common region without a direct face-pair
    /// witness, i.e. related only through the transitive closure.
    pub transitive_only_pairs: usize,
}

impl TwistPartition {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Face pairs opposite each other at crossing `v`, as ordered `(min, max)`.
fn opposite_pairs(faces: &crate::diagram::map::Faces, v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(2);
    for k in 0..2 {
        let (f, g) = (faces.corner(v, k), faces.corner(v, k + 2));
        if f != g {
            out.push((f.min(g), f.max(g)));
        }
    }
    out
}

pub(crate) fn partition_of_map(map: &PlanarMap) -> TwistPartition {
    let c = map.crossings;
    let faces = map.faces();
    let mut groups: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for v in 0..c {
        for key in opposite_pairs(&faces, v) {
            groups.entry(key).or_default().push(v);
        }
    }
    let mut uf = UnionFind::new(c);
    let mut direct = vec![false; c * c];
    for members in groups.values() {
        for &a in members {
            uf.union(members[0], a);
            for &b in members {
                direct[a * c + b] = true;
            }
        }
    }
    let mut index = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; c];
    for v in 0..c {
        let r = uf.find(v);
        let i = *index.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[i].push(v);
        class_of[v] = i;
    }
    let mut transitive_only_pairs = 0;
    for class in &classes {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                if !direct[a * c + b] {
                    transitive_only_pairs += 1;
                }
            }
        }
    }
    TwistPartition {
        twist_number: classes.len(),
        classes,
        class_of,
        transitive_only_pairs,
    }
}

pub fn twist_partition(d: &LinkDiagram) -> TwistPartition {
    partition_of_map(&d.map)
}

/// Twist regions of a tangle; the curves stay inside the square.
pub fn twist_partition_tangle(t: &TangleDiagram) -> TwistPartition {
    partition_of_map(&t.map)
}

pub fn twist_number(d: &LinkDiagram) -> usize {
    twist_partition(d).twist_number
}

pub fn twist_number_tangle(t: &TangleDiagram) -> usize {
    twist_partition_tangle(t).twist_number
}

/// A single twist region whose curve runs through the regions along the
/// north and south sides of the square, so its crossings form a west-to-east row.
pub fn is_east_west_twist(t: &TangleDiagram) -> bool {
    let map = &t.map;
    if map.crossings == 0 || twist_number_tangle(t) != 1 {
        return false;
    }
    let faces = map.faces();
    let b = map.crossings;
    let (north, south) = (faces.corner(b, 0), faces.corner(b, 2));
    if north == south {
        return false;
    }
    let key = (north.min(south), north.max(south));
    (0..map.crossings).all(|v| opposite_pairs(&faces, v).contains(&key))
}
