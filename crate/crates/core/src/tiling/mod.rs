//! Contractibility through the universal cover: the lifted radial walk is
//! closed exactly when the walk is contractible. Only the relevant region
//! of the tiling is ever built, one mirror operation per newly crossed line.

mod lifted;
mod region;
mod small;

pub use lifted::{EdgeIdx, LiftedGraph, VertexId};
pub use region::{capacity_for, trace_quad, LineTags, Quad, RelevantRegion};
pub use small::{special_small, SmallSurface};

use crate::error::Result;
use crate::reduction::{RadialGraph, RadialWalk};

/// Builds the relevant region of the lift of `walk`.
pub fn build_region<'a>(walk: &RadialWalk, radial: &'a RadialGraph) -> Result<RelevantRegion<'a>> {
    RelevantRegion::build(radial, walk)
}

/// Whether the lift of a closed radial walk is closed. Requires `r ≥ 6`.
pub fn lift_is_closed(walk: &RadialWalk, radial: &RadialGraph) -> Result<bool> {
    Ok(build_region(walk, radial)?.is_closed())
}
