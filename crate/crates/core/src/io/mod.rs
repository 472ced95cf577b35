//! Text formats and instance bundles.

mod bundle;
mod format;

pub use bundle::{bundle_chain, BundleKind, InstanceBundle, Payload, ProvenanceStep};
pub use format::{
    parse_graph, parse_multigraph, parse_simple_graph, parse_tour, parse_tour_or_word, parse_vertex_set, parse_witness,
    parse_word, serialize_multi, serialize_simple, serialize_tour, serialize_vertex_set, serialize_witness,
    serialize_word, ParsedGraph,
};
