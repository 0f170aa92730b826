use std::collections::HashMap;

use super::link::LinkDiagram;
use super::map::PlanarMap;
use crate::error::Result;

/// Whether some face meets a crossing at two opposite corners.
pub(crate) fn has_nugatory_crossing(map: &PlanarMap) -> bool {
    let faces = map.faces();
    (0..map.crossings).any(|v| faces.corner(v, 0) == faces.corner(v, 2) || faces.corner(v, 1) == faces.corner(v, 3))
}

/// Whether two distinct edges both border the same two distinct faces.
pub(crate) fn has_two_edge_cut(map: &PlanarMap) -> bool {
    let faces = map.faces();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for h in 0..map.pair.len() {
        let p = map.pair[h];
        if h > p {
            continue;
        }
        let (f, g) = (faces.face_of[h], faces.face_of[p]);
        if f == g {
            continue;
        }
        let key = (f.min(g), f.max(g));
        if seen.insert(key, h).is_some() {
            return true;
        }
    }
    false
}

impl LinkDiagram {
    /// Every simple closed curve meeting the diagram in two edges, or in one
    /// crossing, has no crossings on one side.
    pub fn is_prime(&self) -> Result<bool> {
        self.require_connected_with_crossings()?;
        Ok(!has_nugatory_crossing(&self.map) && !has_two_edge_cut(&self.map))
    }
}
