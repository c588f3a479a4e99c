//! Exact spectral certification of maximum independent sets.
//!
//! The crate builds a handful of classical graph families from first
//! principles (the graph on 3×3 partitions of nine points, q-Kneser graphs,
//! the Witt graph on 77 blocks, Kneser graphs and line graphs of complete
//! graphs), certifies the ratio bound on their independence number with exact
//! rational arithmetic, and enumerates every maximum independent set by the
//! column-space method: a maximum set's characteristic vector lies in the
//! column space of a known incidence matrix, and a small null-space sweep
//! recovers all of them.

pub mod bits;
pub mod exact_linalg;
pub mod graph;
pub mod schemes;
pub mod constructions;
pub mod certifier;
pub mod certificate;
