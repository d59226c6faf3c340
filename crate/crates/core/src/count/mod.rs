//! Perfect-matching counters.

mod enumerate;
mod exact;
mod fkt;
mod planar;

pub use enumerate::{count_pm_naive, for_each_perfect_matching};
pub use exact::count_pm_exact;
pub use fkt::{count_pm_fkt, pfaffian, pfaffian_orient, PfaffianOrientation};
pub use planar::{is_planar, planar_embed, PlanarEmbedding};

pub(crate) use planar::{biconnected_blocks, extend_embedding, rotation_from_faces};
