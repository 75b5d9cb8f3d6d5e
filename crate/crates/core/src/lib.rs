//! Directed highway hierarchies with dynamically re-weighted queries.
//!
//! A [`Graph`] with static travel times is preprocessed once into a
//! [`HighwayHierarchy`]. Queries run a multi-level bidirectional search on it
//! where level changes are decided with the static neighbourhood radii while
//! queue keys use the current [`WeightOverlay`]. The [`oracle`] module holds
//! the exact Dijkstra searches used as reference.

pub mod dijkstra;
pub mod fixtures;
pub mod graph;
pub mod hierarchy;
pub mod oracle;
pub mod overlay;
pub mod query;
pub mod route;
pub mod synth;

pub use graph::{
    parse_graph, write_graph, ArcData, ArcId, ArcWeights, Direction, Graph, GraphError, NodeId,
    ParseError, Weight, INFINITY,
};
pub use hierarchy::{build_hierarchy, BypassPolicy, HierarchyParams, HighwayHierarchy};
pub use overlay::{WeightOverlay, WeightUpdateBatch};
pub use query::{query, query_naive, QueryEngine};
pub use route::{QueryOutcome, QueryResult, SearchStats};
