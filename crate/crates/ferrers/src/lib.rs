//! Ferrers-diagram rank-metric codes.
//!
//! The crate computes the dimension bound `nu_min` for codes supported on a
//! Ferrers diagram, decides irreducibility of diagram pairs in three
//! independent ways, realizes irreducible pairs as integer points of explicit
//! integral polytopes and builds maximum Ferrers-diagram codes over small
//! finite fields.
//!
//! Data-parallel loops go through [`exec`]. With the default `parallel`
//! feature they run on rayon; without it every loop is sequential.

pub mod codes;
pub mod diagram;
mod error;
pub mod exec;
pub mod gf;
pub mod irreducibility;
pub mod polytope;
pub mod young_digraph;

pub use diagram::{DiagramPair, FerrersDiagram, StandardForm};
pub use error::{Error, Result};
pub use exec::{Exec, RunOptions};
