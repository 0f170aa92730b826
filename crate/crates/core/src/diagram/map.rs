//! Combinatorial maps of 4-valent diagrams.
//!
//! Half-edge `4 * v + s` is slot `s` of vertex `v`; slots are listed
//! counterclockwise. At a crossing the even slots carry the under-strand and
//! the odd slots the over-strand. A tangle has one extra vertex, the boundary,
//! whose slots are the corners NW, NE, SE, SW: seen from the far side of the
//! sphere that cyclic order is counterclockwise, so the same face-tracing rule
//! applies to every vertex.

/// Corner slots of the boundary vertex.
pub const NW: usize = 0;
pub const NE: usize = 1;
pub const SE: usize = 2;
pub const SW: usize = 3;

pub(crate) const CORNER_NAMES: [&str; 4] = ["NW", "NE", "SE", "SW"];

#[inline]
pub(crate) fn he(v: usize, s: usize) -> usize {
    4 * v + s
}

#[inline]
pub(crate) fn vertex(h: usize) -> usize {
    h / 4
}

#[inline]
pub(crate) fn slot(h: usize) -> usize {
    h % 4
}

#[inline]
pub(crate) fn straight(h: usize) -> usize {
    he(vertex(h), (slot(h) + 2) % 4)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct PlanarMap {
    /// Edge involution on half-edges.
    pub pair: Vec<usize>,
    pub crossings: usize,
    /// When set, vertex `crossings` is the tangle boundary.
    pub boundary: bool,
    /// Closed components that meet no crossing.
    pub free_loops: usize,
}

/// Faces traced from the rotation system; a dart is named by the half-edge it leaves from.
#[derive(Clone, Debug)]
pub(crate) struct Faces {
    pub face_of: Vec<usize>,
    pub count: usize,
}

impl Faces {
    /// Face at corner `k` of vertex `v` (between slots `k` and `k + 1`).
    #[inline]
    pub fn corner(&self, v: usize, k: usize) -> usize {
        self.face_of[he(v, k % 4)]
    }
}

/// A strand traced through crossings, as the sequence of departing half-edges.
#[derive(Clone, Debug)]
pub(crate) struct Strand {
    pub departures: Vec<usize>,
    pub closed: bool,
}

pub(crate) enum Role {
    Keep(usize),
    Transit(usize),
}

impl PlanarMap {
    pub fn empty() -> Self {
        PlanarMap {
            pair: Vec::new(),
            crossings: 0,
            boundary: false,
            free_loops: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.crossings + usize::from(self.boundary)
    }

    pub fn boundary_vertex(&self) -> Option<usize> {
        self.boundary.then_some(self.crossings)
    }

    #[inline]
    pub fn is_crossing_he(&self, h: usize) -> bool {
        h < 4 * self.crossings
    }

    pub fn is_involution(&self) -> bool {
        self.pair.len() == 4 * self.vertex_count()
            && self
                .pair
                .iter()
                .enumerate()
                .all(|(h, &p)| p < self.pair.len() && p != h && self.pair[p] == h)
    }

    /// Next dart around the same face: cross the edge, then turn to the
    /// clockwise-adjacent slot at the far vertex.
    #[inline]
    pub fn next_in_face(&self, h: usize) -> usize {
        let t = self.pair[h];
        he(vertex(t), (slot(t) + 3) % 4)
    }

    pub fn faces(&self) -> Faces {
        let n = self.pair.len();
        let mut face_of = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut h = start;
            while face_of[h] == usize::MAX {
                face_of[h] = count;
                h = self.next_in_face(h);
            }
            count += 1;
        }
        Faces { face_of, count }
    }

    /// Connected component index per vertex, and the number of components.
    pub fn vertex_components(&self) -> (Vec<usize>, usize) {
        let nv = self.vertex_count();
        let mut comp = vec![usize::MAX; nv];
        let mut count = 0;
        let mut stack = Vec::new();
        for root in 0..nv {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = count;
            stack.push(root);
            while let Some(v) = stack.pop() {
                for s in 0..4 {
                    let w = vertex(self.pair[he(v, s)]);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Checks V - E + F = 2 on every connected component; on failure returns a
    /// half-edge on the offending component and its Euler characteristic.
    pub fn check_spherical(&self) -> std::result::Result<(), (usize, i64)> {
        let (comp, ncomp) = self.vertex_components();
        let faces = self.faces();
        let mut v = vec![0i64; ncomp];
        let mut e2 = vec![0i64; ncomp];
        let mut face_comp = vec![usize::MAX; faces.count];
        for (h, &f) in faces.face_of.iter().enumerate() {
            face_comp[f] = comp[vertex(h)];
            e2[comp[vertex(h)]] += 1;
        }
        for &c in &comp {
            v[c] += 1;
        }
        let mut f = vec![0i64; ncomp];
        for &c in &face_comp {
            f[c] += 1;
        }
        for c in 0..ncomp {
            let euler = v[c] - e2[c] / 2 + f[c];
            if euler != 2 {
                let h = (0..self.pair.len()).find(|&h| comp[vertex(h)] == c).unwrap_or(0);
                return Err((h, euler));
            }
        }
        Ok(())
    }

    /// Strands through crossings. Open strands (tangles only) start at the
    /// boundary and are listed first; closed strands follow in order of their
    /// smallest half-edge. Free loops are not included.
    pub fn strands(&self) -> Vec<Strand> {
        let n = self.pair.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        if let Some(b) = self.boundary_vertex() {
            for k in 0..4 {
                let start = he(b, k);
                if seen[start] {
                    continue;
                }
                let mut departures = Vec::new();
                let mut h = start;
                loop {
                    departures.push(h);
                    seen[h] = true;
                    let a = self.pair[h];
                    seen[a] = true;
                    if !self.is_crossing_he(a) {
                        break;
                    }
                    h = straight(a);
                }
                out.push(Strand {
                    departures,
                    closed: false,
                });
            }
        }
        for start in 0..4 * self.crossings {
            if seen[start] {
                continue;
            }
            let mut departures = Vec::new();
            let mut h = start;
            loop {
                departures.push(h);
                seen[h] = true;
                let a = self.pair[h];
                seen[a] = true;
                h = straight(a);
                if h == start {
                    break;
                }
            }
            out.push(Strand {
                departures,
                closed: true,
            });
        }
        out
    }

    /// Number of link components (closed strands plus free loops).
    pub fn closed_components(&self) -> usize {
        self.strands().iter().filter(|s| s.closed).count() + self.free_loops
    }

    /// Relabels half-edges by the bijection `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> PlanarMap {
        let mut pair = vec![0; self.pair.len()];
        for (h, &p) in self.pair.iter().enumerate() {
            pair[f(h)] = f(p);
        }
        PlanarMap { pair, ..self.clone() }
    }

    #[cfg(test)]
    /// Rotates the slots of vertex `v` so that new slot `s` is old slot `s + r`.
    pub fn rotate_vertex(&self, v: usize, r: usize) -> PlanarMap {
        self.relabel(|h| {
            if vertex(h) == v {
                he(v, (slot(h) + 4 - r % 4) % 4)
            } else {
                h
            }
        })
    }

    /// Whether the edge at `h` joins an over-slot to an under-slot.
    pub fn edge_alternates(&self, h: usize) -> bool {
        let p = self.pair[h];
        !self.is_crossing_he(h) || !self.is_crossing_he(p) || slot(h) % 2 != slot(p) % 2
    }
}

/// Rebuilds a pairing after cutting and regluing.
///
/// Every half-edge of the combined space either survives under a new index,
/// is a transit end glued to another transit end, or is dropped. Paths through
/// transit ends are contracted; transit cycles that never reach a surviving
/// half-edge become free loops.
pub(crate) fn splice(pair: &[usize], roles: &[Role], new_len: usize) -> (Vec<usize>, usize) {
    let mut new_pair = vec![usize::MAX; new_len];
    let mut visited = vec![false; pair.len()];
    for x in 0..pair.len() {
        let Role::Keep(nx) = roles[x] else { continue };
        visited[x] = true;
        let mut y = pair[x];
        loop {
            visited[y] = true;
            match roles[y] {
                Role::Keep(ny) => {
                    new_pair[nx] = ny;
                    break;
                }
                Role::Transit(g) => {
                    visited[g] = true;
                    y = pair[g];
                }
            }
        }
    }
    let mut loops = 0;
    for t in 0..pair.len() {
        if visited[t] || !matches!(roles[t], Role::Transit(_)) {
            continue;
        }
        let mut y = t;
        loop {
            visited[y] = true;
            let Role::Transit(g) = roles[y] else {
                unreachable!("transit cycle left the transit set")
            };
            visited[g] = true;
            y = pair[g];
            if y == t {
                break;
            }
        }
        loops += 1;
    }
    (new_pair, loops)
}
