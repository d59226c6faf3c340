//! Exact perfect-matching counting and the machinery around ring blowups.
//!
//! * [`count`]: exact counters (frontier dynamic programming and the Pfaffian method).
//! * [`gadgets`]: the sign-crossing matchgate and drawn graphs it is spliced into.
//! * [`reduce`]: circle drawings, the ring-blowup construction and weight stripping.
//! * [`minors`]: clique minors, clique-sums and certificates for simple rings.

pub mod count;
pub mod error;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod minors;
pub mod reduce;

pub use error::{Error, Result};
pub use graph::{Rational, WeightedGraph};
