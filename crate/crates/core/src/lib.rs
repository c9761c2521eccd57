pub mod arborescence;
pub mod bijection;
pub mod cli;
pub mod codec;
pub mod corpus;
pub mod digraph;
pub mod error;
pub mod group;
pub mod matrix;
pub mod poly;
pub mod snf;
pub mod verify;

pub use digraph::{line_graph, DiGraph, EdgeId, LineGraphMap, VertexId};
pub use error::{Error, Result};
