//! Least adjacency eigenvalues of graphs whose complements are unicyclic.
//!
//! The crate bundles a small graph type with graph6 I/O and canonical forms,
//! constructors for the extremal families, a dense symmetric eigensolver,
//! exact integer characteristic polynomials with Sturm root isolation,
//! enumeration of unicyclic graphs, and checks that turn each extremal claim
//! about these graphs into a machine-readable [`verify::Verdict`].

pub mod graph;
pub mod families;
pub mod eigen;
pub mod charpoly;
pub mod enumerate;
pub mod verify;
pub mod util;
