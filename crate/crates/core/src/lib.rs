//! Contractibility and free homotopy of closed walks on combinatorial
//! surfaces, decided in time linear in the walk after linear preprocessing.

pub mod cyclic;
pub mod error;
pub mod gen;
pub mod oracle;
pub mod pipeline;
pub mod reduction;
pub mod surface_model;
pub mod tiling;

pub use error::{Error, Result};
pub use surface_model::{load_embedding, CellularEmbedding, Dart, DualEmbedding, FaceStep, SurfaceClass};
pub use pipeline::Surface;
