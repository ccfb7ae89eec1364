//! Finite commutative ring laboratory: exhaustive predicate checks on
//! ideals (cubes-difference factor absorbing and relatives), integer
//! ideal classification through residues, a small ring DSL, and an
//! audit suite over a fixed inventory of desk-scale rings.

pub mod audit;
pub mod error;
pub mod ideal;
pub mod intpoly;
pub mod parser;
pub mod predicates;
pub mod report;
pub mod ring;

pub use error::RingError;
pub use ideal::{enumerate_ideals, ideal_from_generators, zero_ideal, Ideal};
pub use parser::{elaborate, parse_element, parse_ideal, parse_ring};
pub use predicates::{Mode, Verdict, Witness};
pub use ring::{ElementId, FiniteRing, RingHom};
