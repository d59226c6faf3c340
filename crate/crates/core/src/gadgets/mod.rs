//! The sign-crossing matchgate and drawings it is inserted into.

mod drawn;
mod search;
mod signature;
mod signed;

pub use drawn::{
    insert_gadget, Crossing, CrossingId, CrossingSite, DrawnEdge, DrawnGraph, EdgeId, Insertion,
};
pub use search::{find_sign_crossing_gadget, has_outer_order, GadgetSearch, SignCrossingGadget};
pub use signature::{compute_signature, is_consistent, GadgetSignature, Stub};
pub use signed::signed_count;
