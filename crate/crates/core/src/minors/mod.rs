//! Clique minors of ring blowups.

mod catalogue;
mod certificate;
mod model;
mod ring;
mod search;
mod simple;
mod sums;

pub use catalogue::{plane_catalogue, random_plane_graph, simple_ring_catalogue, PlaneSample};
pub use certificate::{
    certify_simple_ring_blowup, check_certificate, check_complication_free, decompose,
    every_edge_in_k4, parse_certificate, serialize_certificate, supergraph_edges, z_graph,
    z_reduct, CertNode, SplitKind, Step, Verdict,
};
pub use model::{check_clique_model, check_model, verify_model, MinorModel};
pub use ring::{find_complications, triangulate, Complication, SimpleRing};
pub use search::{hadwiger, has_minor, MinorSearch, DEFAULT_BUDGET};
pub use simple::{check_simple_ring_blowup, make_simple};
pub use sums::{blowup, clique_sum, CliqueSum};
