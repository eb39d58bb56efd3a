//! Kauffman bracket and Jones polynomial tools for oriented local moves:
//! tangles, their closures, and divisibility certificates.

pub mod bracket;
pub mod diagram;
pub mod error;
mod graph;
pub mod laurent;
pub mod matchings;
pub mod moves;
pub mod random;
pub mod tangle;

pub use bracket::{auxiliary_f, kauffman_bracket};
pub use diagram::LinkDiagram;
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use matchings::Matching;
pub use moves::MoveSpec;
pub use tangle::Tangle;
