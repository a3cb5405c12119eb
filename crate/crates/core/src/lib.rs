//! Cycle spectra and constructive cycle surgery in cubic planar graphs and
//! their line graphs.
//!
//! The crate provides:
//!
//! * simple graphs, loop-free digraphs, line graphs, and the graph6 /
//!   planar_code codecs ([`graph`], [`codec`]);
//! * combinatorial (rotation-system) embeddings with face traversal and a
//!   quadratic planarity test that produces an embedding ([`embed`]);
//! * exhaustive connectivity predicates, including cyclic 4-edge-connectivity
//!   for cubic graphs ([`connectivity`]);
//! * an exact cycle-search engine: fixed-length cycles, spectra,
//!   circumference, Hamilton cycles through prescribed edges, and a
//!   brute-force witness search for the three-edge facial-cycle property
//!   ([`cycles`]);
//! * constructive procedures on line graphs of cubic graphs: acyclic spanning
//!   subdigraphs, triangle classification along Hamilton cycles, cycle
//!   shortening and extension ([`acyclic`], [`triangles`]);
//! * an end-to-end replay that certifies, for every vertex v of the line
//!   graph, a cycle of every admissible length avoiding v ([`pipeline`]);
//! * compiled-in polyhedral fixtures ([`fixtures`]).

pub mod acyclic;
pub mod codec;
pub mod connectivity;
pub mod cycles;
pub mod embed;
pub mod fixtures;
pub mod graph;
pub mod pipeline;
pub mod triangles;

pub use graph::{Digraph, Edge, Graph, GraphError, LineGraphMap, VertexMap};
