//! Locally linear graphs: exact checkers, hamiltonicity with certificates,
//! the suitable-edge identification construction, and an isomorph-free
//! enumerator for connected locally linear graphs of small order.
//!
//! A graph is locally linear when the neighborhood of every vertex induces a
//! path. The crate decides that property and its relatives, verifies the
//! extremal order and size bounds for nonhamiltonian members of the class by
//! exhaustive search, and builds infinite families from small witnesses.

pub mod canon;
pub mod construct;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod hamilton;
pub mod local;
pub mod search;
pub mod verify;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use error::{Graph6Error, GraphError, SizeLimitError};
pub use graph::{named, Edge, Graph, MAX_VERTICES};
pub use graph6::{emit_graph6, parse_graph6};
