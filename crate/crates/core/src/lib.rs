//! Spectral radii of bipartite graphs with a prescribed number of edges.

pub mod exactpoly;
pub mod graphs;
pub mod quotient;
pub mod spectral;
pub mod extremal;
pub mod report;
pub mod cli;
