//! Normal cube path automata and growth series for compact nonpositively
//! curved cube complexes, in exact arithmetic.
//!
//! Only `alloc` is required.
#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automaton;
pub mod complex;
pub mod error;
pub mod hyperplane;
pub mod linalg;
pub mod link;
pub mod poly;
pub mod rational;
pub mod series;
pub mod structure;
pub mod substitution;
pub mod unipoly;

pub use automaton::{Automaton, Convention, SymbolicMatrix};
pub use complex::{ComplexBuilder, Corner, CubeId, CubicalComplex, Diagonal, EdgeEnd, VertexId};
pub use error::{AutomatonError, ComplexError, SeriesError};
pub use hyperplane::HyperplanePartition;
pub use link::{EulerianReport, LinkComplex, NpcReport, SimplicialComplex};
pub use poly::{LaurentPolynomial, Monomial};
pub use rational::{RationalFunction, UnivariateRational};
pub use structure::{verify_structure, StructureReport};
pub use substitution::{Substitution, SubstitutionKind};
pub use unipoly::IntLaurent;
