//! Exact Steiner distances on small undirected graphs, structural
//! characterizations of the Steiner k-diameter for `k ≥ n - 3`, and a
//! harness that audits the characterizations against the exact values.

pub mod characterize;
pub mod connectivity;
pub mod edge_list;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod steiner;
pub mod verify;

pub use characterize::{ClassificationOutcome, Interpretation, KOffset, Reading, Rule};
pub use connectivity::ConnectivityProfile;
pub use error::{Error, Result};
pub use graph::{ComponentView, Graph, VertexSet};
pub use graph6::{parse_graph6, to_graph6};
pub use steiner::{Distance, Engine, EccentricityProfile, SteinerConfig, SteinerResult};
