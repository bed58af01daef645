//! Topology extraction through a virtual network embedding oracle.
//!
//! A host substrate is hidden behind a yes/no oracle that decides whether a
//! guest graph can be embedded. The dictionary attack rebuilds the host using
//! as few requests as possible.

pub mod attack;
pub mod blocks;
pub mod catalog;
pub mod dictfile;
pub mod dictionary;
pub mod dot;
pub mod edgelist;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod iso;
pub mod motif;
pub mod oracle;
pub mod par;

pub use embed::{default_epsilon, find_embedding, is_embeddable, validate_embedding, EmbedConfig, Embedding};
pub use error::{Result, VnxError};
pub use graph::{CapGraph, Edge, NodeId, Weight};
pub use oracle::{HonestOracle, Oracle, Phase, ReplayOracle, RequestLog};
