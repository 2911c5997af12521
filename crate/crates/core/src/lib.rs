//! Frugal colourings of graphs and multigraphs: constructive algorithms,
//! exact solvers for small instances, validators and instance generators.

pub mod colouring;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod graph;
pub mod validate;
pub mod planar;
pub mod outerplanar;
pub mod edge;
pub mod cyclic;
pub mod generators;
pub mod io;
pub mod cli;
