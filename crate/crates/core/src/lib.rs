//! A workbench for the calculus of relations, ideals, and filters over
//! finite algebras: congruence lattices, superequivalences and
//! superuniformities with their closure operators, Mal'tsev and Day term
//! machinery, shifting-lemma constructions, and machine-checked
//! modularity certificates. Everything runs at desk scale: exhaustive or
//! brute-force checks on finite carriers, plus finite-support relations
//! over the integer line.

pub mod algebra;
pub mod congruence;
pub mod error;
pub mod filter;
pub mod fixtures;
pub mod ideal;
pub mod json;
pub mod shifting;
pub mod space;
pub mod suite;
pub mod superunif;
pub mod xi;
pub mod lattice;
pub mod relation;
pub mod report;
pub mod relation_algebra;
pub mod term;

pub use error::{Error, Result};
pub use relation::{Carrier, Relation};
