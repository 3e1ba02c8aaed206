//! Efficient dominating sets in regular graphs.
//!
//! The crate pairs a polynomial candidate-elimination procedure
//! ([`reduction`]) with an exact exact-cover solver ([`oracle`]) and a harness
//! ([`harness`]) that runs both over generated corpora, checks the provably
//! sound steps of the procedure, and records every place where its verdict
//! and the exact answer part ways.

pub mod eds;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod reduction;
pub mod registry;
pub mod vertex_set;

pub use eds::{eds_size_bound, is_dominating, verify_eds, EdsCertificate};
pub use error::{EdsError, Result};
pub use format::{encode_edge_list, encode_graph6, parse_edge_list, parse_graph6};
pub use graph::Graph;
pub use reduction::{decide_eds, decide_with_order, fact1_droppable, probe, reduce_to_fixpoint, Decision, Verdict};
pub use vertex_set::VertexSet;
