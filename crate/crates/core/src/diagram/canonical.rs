use super::link::LinkDiagram;
use super::map::{he, slot, vertex, PlanarMap};
use super::tangle::TangleDiagram;

/// Isomorphism-invariant encoding of a diagram's map and over/under data.
///
/// Two diagrams have equal forms iff some relabeling of crossings and slots,
/// possibly combined with a reflection of the sphere, carries one onto the
/// other. Orientations are ignored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u32>);

/// Breadth-first code of the component reached from dart `start`, reading
/// slots in direction `dir` (`1` or `3`, i.e. counterclockwise or clockwise).
fn code_from(map: &PlanarMap, start: usize, dir: usize, out: &mut Vec<u32>) {
    let nv = map.vertex_count();
    let mut label = vec![u32::MAX; nv];
    let mut entry = vec![0usize; nv];
    let mut order = vec![vertex(start)];
    label[vertex(start)] = 0;
    entry[vertex(start)] = slot(start);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        out.push((entry[v] % 2) as u32);
        for k in 0..4 {
            let h = he(v, (entry[v] + dir * k) % 4);
            let p = map.pair[h];
            let w = vertex(p);
            if label[w] == u32::MAX {
                label[w] = order.len() as u32;
                entry[w] = slot(p);
                order.push(w);
            }
            // position of p counted from w's entry slot in the reading direction
            let rel = (0..4).find(|&r| (entry[w] + dir * r) % 4 == slot(p)).unwrap();
            out.push(label[w] * 4 + rel as u32);
        }
    }
}

fn minimal_code(map: &PlanarMap, starts: impl Iterator<Item = usize>, dirs: &[usize]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    let mut buf = Vec::new();
    for s in starts {
        for &d in dirs {
            buf.clear();
            code_from(map, s, d, &mut buf);
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
    }
    best.unwrap_or_default()
}

fn link_form(map: &PlanarMap) -> CanonicalForm {
    let (comp, n) = map.vertex_components();
    let mut parts: Vec<Vec<u32>> = (0..n)
        .map(|c| {
            let starts = (0..map.pair.len()).filter(|&h| comp[vertex(h)] == c);
            minimal_code(map, starts, &[1, 3])
        })
        .collect();
    parts.sort();
    let mut out = vec![map.free_loops as u32, n as u32];
    for p in parts {
        out.push(p.len() as u32);
        out.extend(p);
    }
    CanonicalForm(out)
}

impl LinkDiagram {
    pub fn canonical_form(&self) -> CanonicalForm {
        link_form(&self.map)
    }
}

impl TangleDiagram {
    /// Canonical form with the corners held fixed.
    pub fn canonical_form(&self) -> CanonicalForm {
        let map = &self.map;
        let b = self.boundary();
        let (comp, n) = map.vertex_components();
        // the component holding the boundary is read from NW; the others float
        let mut out = vec![map.free_loops as u32];
        out.extend(minimal_code(map, std::iter::once(he(b, 0)), &[1]));
        let mut parts: Vec<Vec<u32>> = (0..n)
            .filter(|&c| c != comp[b])
            .map(|c| {
                let starts = (0..map.pair.len()).filter(|&h| comp[vertex(h)] == c);
                minimal_code(map, starts, &[1])
            })
            .collect();
        parts.sort();
        for p in parts {
            out.push(p.len() as u32);
            out.extend(p);
        }
        CanonicalForm(out)
    }
}
