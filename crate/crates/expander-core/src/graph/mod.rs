//! Canonical graph representations shared by all other modules.

mod bipartite;
pub mod io;
mod vertex_set;
mod weighted;

pub use bipartite::{BipartiteGraph, BiregularReport, DegreeViolation};
pub use io::{
    read_bipartite, read_graph_file, read_vertex_set, read_weighted, write_bipartite,
    write_weighted, GraphFile,
};
pub use vertex_set::{Side, VertexSet};
pub use weighted::WeightedGraph;
