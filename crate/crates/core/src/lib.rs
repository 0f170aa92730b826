//! Knot and tangle diagrams with the combinatorics of twist regions, Conway
//! sums and state graphs, exact Jones polynomials, and closed-form hyperbolic
//! volume estimates for links built from tangles.

pub mod bounds;
pub mod diagram;
pub mod error;
pub mod generate;
pub mod jones;
pub mod poly;
pub mod states;
pub mod twist;

pub use diagram::{LinkDiagram, TangleDiagram, TangleSign};
pub use error::{Error, Result};
