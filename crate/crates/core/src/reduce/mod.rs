//! Reduction of perfect-matching counting to ring blowups, and weight stripping.

mod blowup;
mod drawing;
mod geometry;
mod strip;
mod svg;

pub use blowup::{
    build_ring_blowup, build_ring_blowup_seeded, check_ring_blowup, verify_ring_blowup,
    vertex_bound, GadgetRecord, RingBlowup, RingBlowupBuild, StrandCrossing,
};
pub use drawing::{
    crossing_minimizing_order, draw_on_circle, draw_on_circle_seeded, enumerate_crossings,
    ChordDrawing, CrossingInventory, CrossingRecord, MAX_PLACEMENT_ATTEMPTS,
};
pub use geometry::Point;
pub use strip::{
    evaluation_instance, integer_weight_gadget, strip_weights, strip_weights_with, CountOracle,
    ExactOracle, ExternalOracle, MatchingPolynomial, StripReport, WeightGadget,
};
pub use svg::ring_blowup_svg;
