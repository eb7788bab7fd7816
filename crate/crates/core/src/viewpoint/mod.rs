//! Camera-to-scene viewpoint alignment: render binary silhouettes of a mesh
//! under a pinhole camera, score them against reference masks with binary
//! cross-entropy, and refine a coarse 6-DoF pose by swarm search.

mod align;
mod bce;
mod camera;
mod mask;
mod raster;

pub use align::{align_viewpoint, viewpoint_loss, PoseDelta, ViewpointRef};
pub use bce::bce_mask_loss;
pub use camera::CameraIntrinsics;
pub use mask::SilhouetteMask;
pub use raster::render_silhouette;

use alloc::string::String;

/// Errors from viewpoint operations.
#[derive(Debug, Clone, PartialEq)]
pub enum ViewpointError {
    /// Mask dimensions disagree.
    DimensionMismatch {
        expected: (u32, u32),
        got: (u32, u32),
    },
    /// A configuration invariant does not hold.
    InvalidConfig { message: String },
    /// No reference masks supplied.
    NoReferences,
}

impl core::fmt::Display for ViewpointError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::DimensionMismatch { expected, got } => write!(
                f,
                "mask dimensions {}x{} do not match expected {}x{}",
                got.0, got.1, expected.0, expected.1
            ),
            Self::InvalidConfig { message } => write!(f, "invalid configuration: {message}"),
            Self::NoReferences => write!(f, "at least one reference mask is required"),
        }
    }
}

impl core::error::Error for ViewpointError {}
