//! Link and tangle diagrams as combinatorial maps.

mod canonical;
mod link;
pub(crate) mod map;
mod pd;
mod prime;
mod tangle;

pub use canonical::CanonicalForm;
pub use link::{Decomposition, LinkDiagram};
pub use pd::{parse_pd, parse_tangle};
pub use tangle::{add_belt, conway_sum, twist_fill, TangleDiagram, TangleSign};

use crate::error::Result;

pub fn numerator_closure(t: &TangleDiagram) -> LinkDiagram {
    t.numerator_closure()
}

pub fn denominator_closure(t: &TangleDiagram) -> LinkDiagram {
    t.denominator_closure()
}

pub fn is_prime(d: &LinkDiagram) -> Result<bool> {
    d.is_prime()
}

pub fn is_alternating(d: &LinkDiagram) -> bool {
    d.is_alternating()
}

pub fn tangle_sign(t: &TangleDiagram) -> TangleSign {
    t.sign()
}

pub fn is_strongly_alternating(t: &TangleDiagram) -> bool {
    t.is_strongly_alternating()
}

pub fn component_count(d: &LinkDiagram) -> usize {
    d.component_count()
}

pub fn mirror(d: &LinkDiagram) -> LinkDiagram {
    d.mirror()
}

pub fn emit_pd(d: &LinkDiagram) -> String {
    d.emit_pd()
}
