//! Independent oracles that work from PD tuples alone, sharing no code with
//! the library beyond reading its emitted tuples.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use knotsum::poly::LaurentPolynomial;
use knotsum::LinkDiagram;

pub const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
pub const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
pub const KINK: &str = "X(1,1,2,2)";

fn find(parent: &mut HashMap<u64, u64>, x: u64) -> u64 {
    let mut r = x;
    while let Some(&p) = parent.get(&r) {
        if p == r {
            break;
        }
        r = p;
    }
    parent.insert(x, r);
    r
}

/// Kauffman bracket by summing over all states, keyed by the power of A.
/// The A-smoothing joins tuple positions (0,1) and (2,3).
pub fn brute_bracket(tuples: &[[u64; 4]], free_loops: usize) -> BTreeMap<i64, i64> {
    let n = tuples.len();
    assert!(n <= 16, "oracle is for small diagrams");
    let labels: HashSet<u64> = tuples.iter().flatten().copied().collect();
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for state in 0u32..(1 << n) {
        let mut parent: HashMap<u64, u64> = labels.iter().map(|&l| (l, l)).collect();
        for (i, t) in tuples.iter().enumerate() {
            let joins = if state >> i & 1 == 0 {
                [(t[0], t[1]), (t[2], t[3])]
            } else {
                [(t[0], t[3]), (t[1], t[2])]
            };
            for (a, b) in joins {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent.insert(ra, rb);
            }
        }
        let roots: HashSet<u64> = labels.iter().map(|&l| find(&mut parent, l)).collect();
        let loops = roots.len() + free_loops;
        let b = state.count_ones() as i64;
        let a = n as i64 - b;
        // delta^(loops - 1), delta = -A^2 - A^-2
        let mut poly: BTreeMap<i64, i64> = BTreeMap::from([(0, 1)]);
        for _ in 1..loops {
            let mut next = BTreeMap::new();
            for (&e, &c) in &poly {
                *next.entry(e + 2).or_insert(0) -= c;
                *next.entry(e - 2).or_insert(0) -= c;
            }
            poly = next;
        }
        for (e, c) in poly {
            *out.entry(e + a - b).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Writhe from PD tuples: under-strands run from position 0 to position 2,
/// and directions are pushed along strands from there. Components that never
/// pass under are split off and do not contribute.
pub fn brute_writhe(tuples: &[[u64; 4]]) -> i64 {
    // for each label, the (crossing, position) pairs where it appears
    let mut ends: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        for (p, &l) in t.iter().enumerate() {
            ends.entry(l).or_default().push((i, p));
        }
    }
    // incoming[(i, p)] for every tuple position
    let mut incoming: HashMap<(usize, usize), bool> = HashMap::new();
    let mut stack = Vec::new();
    for i in 0..tuples.len() {
        stack.push(((i, 0), true));
        stack.push(((i, 2), false));
    }
    while let Some((pos, inc)) = stack.pop() {
        if let Some(&old) = incoming.get(&pos) {
            assert_eq!(old, inc, "inconsistent orientation");
            continue;
        }
        incoming.insert(pos, inc);
        let (i, p) = pos;
        // straight through the crossing
        stack.push(((i, (p + 2) % 4), !inc));
        // across the edge
        let e = &ends[&tuples[i][p]];
        let other = if e[0] == pos { e[1] } else { e[0] };
        stack.push((other, !inc));
    }
    let mut w = 0;
    for i in 0..tuples.len() {
        match incoming.get(&(i, 3)) {
            Some(true) => w += 1,
            Some(false) => w -= 1,
            None => {}
        }
    }
    w
}

/// Jones polynomial from the brute-force bracket and writhe.
pub fn brute_jones(d: &LinkDiagram) -> LaurentPolynomial {
    let (tuples, loops) = d.pd_tuples();
    let br = brute_bracket(&tuples, loops.len());
    let w = brute_writhe(&tuples);
    // V(t) = (-A^3)^(-w) <D>, t = A^-4: A^j becomes t^(-j/4)
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let terms = br.into_iter().map(|(e, c)| {
        let a = e - 3 * w;
        assert_eq!(a % 2, 0);
        (-a / 2, sign * c)
    });
    LaurentPolynomial::from_doubled_terms(terms)
}

pub fn bracket_poly(br: &BTreeMap<i64, i64>) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(br.iter().map(|(&e, &c)| (e, c)))
}

fn connected_without(tuples: &[[u64; 4]], removed: &[u64], split: Option<(usize, [usize; 2])>) -> bool {
    // nodes: crossings, plus a twin node for a split crossing
    let n = tuples.len();
    let node = |i: usize, p: usize| -> usize {
        match split {
            Some((v, side)) if v == i && side.contains(&p) => n,
            _ => i,
        }
    };
    let mut by_label: HashMap<u64, Vec<usize>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        for (p, &l) in t.iter().enumerate() {
            if !removed.contains(&l) {
                by_label.entry(l).or_default().push(node(i, p));
            }
        }
    }
    let total = if split.is_some() { n + 1 } else { n };
    let mut adj = vec![Vec::new(); total];
    for v in by_label.values() {
        if v.len() == 2 {
            adj[v[0]].push(v[1]);
            adj[v[1]].push(v[0]);
        }
    }
    let mut seen = vec![false; total];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Primality by graph cuts: no crossing splits the diagram when its slots are
/// separated into two adjacent pairs, and no two edges disconnect it.
pub fn brute_is_prime(d: &LinkDiagram) -> bool {
    let (tuples, loops) = d.pd_tuples();
    assert!(loops.is_empty() && !tuples.is_empty());
    for v in 0..tuples.len() {
        for side in [[0, 1], [1, 2]] {
            if !connected_without(&tuples, &[], Some((v, side))) {
                return false;
            }
        }
    }
    let labels: Vec<u64> = {
        let mut l: Vec<u64> = tuples.iter().flatten().copied().collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            if !connected_without(&tuples, &[a, b], None) {
                return false;
            }
        }
    }
    true
}

/// Faces traced from PD tuples. A dart is `(crossing, position)`; the face
/// through a dart continues across its edge and turns to the next position.
/// Returns the face at each corner `(crossing, k)`, the corner lying between
/// positions `k` and `k + 1`.
pub fn brute_corner_faces(tuples: &[[u64; 4]]) -> Vec<[usize; 4]> {
    let mut ends: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        for (p, &l) in t.iter().enumerate() {
            ends.entry(l).or_default().push((i, p));
        }
    }
    let other = |i: usize, p: usize| {
        let e = &ends[&tuples[i][p]];
        if e[0] == (i, p) {
            e[1]
        } else {
            e[0]
        }
    };
    let mut face = vec![[usize::MAX; 4]; tuples.len()];
    let mut count = 0;
    for i in 0..tuples.len() {
        for p in 0..4 {
            if face[i][p] != usize::MAX {
                continue;
            }
            let (mut j, mut q) = (i, p);
            while face[j][q] == usize::MAX {
                face[j][q] = count;
                let (a, b) = other(j, (q + 1) % 4);
                j = a;
                q = b;
            }
            count += 1;
        }
    }
    face
}

/// Twist number by the face-pair relation and its transitive closure, with
/// the number of same-class pairs that have no direct witness.
pub fn brute_twist(tuples: &[[u64; 4]]) -> (usize, usize) {
    let n = tuples.len();
    let faces = brute_corner_faces(tuples);
    let pairs = |i: usize| -> Vec<(usize, usize)> {
        let f = faces[i];
        [(f[0], f[2]), (f[1], f[3])]
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect()
    };
    let related = |i: usize, j: usize| pairs(i).iter().any(|p| pairs(j).contains(p));
    let mut class: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if class[i] != class[j] && related(i, j) {
                    let (lo, hi) = (class[i].min(class[j]), class[i].max(class[j]));
                    class.iter_mut().filter(|c| **c == hi).for_each(|c| *c = lo);
                    changed = true;
                }
            }
        }
    }
    let distinct: HashSet<usize> = class.iter().copied().collect();
    let mut indirect = 0;
    for i in 0..n {
        for j in i + 1..n {
            if class[i] == class[j] && !related(i, j) {
                indirect += 1;
            }
        }
    }
    (distinct.len(), indirect)
}

/// State graph of the all-A (`b = false`) or all-B state as
/// `(vertices, loops, reduced edges)`; parallel loops at one circle
/// collapse like any other parallel family.
pub fn brute_state(tuples: &[[u64; 4]], free_loops: usize, b: bool) -> (usize, usize, usize) {
    let labels: HashSet<u64> = tuples.iter().flatten().copied().collect();
    let mut parent: HashMap<u64, u64> = labels.iter().map(|&l| (l, l)).collect();
    for t in tuples {
        let joins = if b {
            [(t[0], t[3]), (t[1], t[2])]
        } else {
            [(t[0], t[1]), (t[2], t[3])]
        };
        for (x, y) in joins {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent.insert(rx, ry);
        }
    }
    let roots: HashSet<u64> = labels.iter().map(|&l| find(&mut parent, l)).collect();
    let mut loops = 0;
    let mut edges = HashSet::new();
    for t in tuples {
        // the two arcs of a smoothing touch the circles through opposite labels
        let (x, y) = if b { (t[1], t[3]) } else { (t[0], t[2]) };
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            loops += 1;
        }
        edges.insert((rx.min(ry), rx.max(ry)));
    }
    (roots.len() + free_loops, loops, edges.len())
}

/// The 26 slopes of length at most 12, as printed.
pub const PRINTED_SLOPES: [(i64, i64); 26] = [
    (1, 0),
    (-7, 1),
    (-6, 1),
    (-5, 1),
    (-4, 1),
    (-3, 1),
    (-2, 1),
    (-1, 1),
    (0, 1),
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 1),
    (-7, 2),
    (-5, 2),
    (-3, 2),
    (-1, 2),
    (1, 2),
    (-8, 3),
    (-7, 3),
    (-5, 3),
    (-4, 3),
    (-2, 3),
    (-1, 3),
    (-7, 4),
    (-5, 4),
];
