//! The episode simulator: PD-controlled joint motion during the control
//! stage, impulse transfer at the hit, and planar sliding under Coulomb
//! friction afterwards.

mod episode;
mod pd;
mod slide;
mod types;

pub use episode::{simulate_episode, simulate_episode_hooked, EeSpeedHook};
pub use pd::{robot_loss, simulate_pd};
pub use slide::{apply_impulse, hit_impulse, simulate_slide, step_slide};
pub use types::{
    FrictionDirection, HitSpec, JointState, JointTrajectory, ObjectModel, ObjectPhysics, PDParams,
    PlanarPose, Scenario, SlideConfig, SlideState,
};

use alloc::string::String;

use crate::geometry::GeometryError;

/// Errors from simulation and loss evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum DynamicsError {
    /// Integration produced a non-finite state at the given 0-based step.
    NonFiniteState { step: usize },
    /// Inconsistent joint counts between related inputs.
    JointCountMismatch { expected: usize, got: usize },
    /// Step/sample counts disagree.
    LengthMismatch { expected: usize, got: usize },
    /// An invariant on the input data does not hold.
    InvalidInput { message: String },
    /// Propagated geometry failure.
    Geometry(GeometryError),
}

impl core::fmt::Display for DynamicsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::NonFiniteState { step } => {
                write!(f, "simulation diverged to a non-finite state at step {step}")
            }
            Self::JointCountMismatch { expected, got } => {
                write!(f, "joint count mismatch: expected {expected}, got {got}")
            }
            Self::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected} steps, got {got}")
            }
            Self::InvalidInput { message } => write!(f, "invalid input: {message}"),
            Self::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DynamicsError {}

impl From<GeometryError> for DynamicsError {
    fn from(e: GeometryError) -> Self {
        Self::Geometry(e)
    }
}
