//! Sandpile groups and sandpile torsor actions on ribbon graphs and regular matroids.

pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod lattice;
pub mod matroid;
pub mod moves;
pub mod ribbon;
pub mod rotor;
pub mod sandpile;
pub mod torsor;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Minor, Multigraph, SpanningTree};
pub use ribbon::{Dart, RibbonGraph, RibbonMinor};
pub use sandpile::{Divisor, SandpileClass};
