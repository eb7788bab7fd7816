//! Gradient-free identification: a deterministic particle-swarm optimizer
//! and the objective bindings for object physics and robot controller gains.

mod bounds;
mod ident;
mod pso;

pub use bounds::ParamBounds;
pub use ident::{
    identify_object, identify_robot, robot_episode_loss, sensitivity, ObjectEpisode,
    ObjectIdentProblem, RobotEpisode, Sensitivity,
};
pub use pso::{pso_minimize, Executor, OptResult, Sequential, SwarmConfig};

use alloc::string::String;

use crate::dynamics::DynamicsError;
use crate::geometry::GeometryError;
use crate::viewpoint::ViewpointError;

/// Errors from optimization.
#[derive(Debug, Clone, PartialEq)]
pub enum OptimizeError {
    /// Bounds dimensionality does not match the objective's parameter arity.
    ArityMismatch { expected: usize, got: usize },
    /// Every particle of the first iteration scored non-finite.
    AllNonFinite,
    /// A configuration invariant does not hold.
    InvalidConfig { message: String },
    /// No episodes (or other required inputs) were supplied.
    EmptyInput,
    Dynamics(DynamicsError),
    Geometry(GeometryError),
    Viewpoint(ViewpointError),
}

impl core::fmt::Display for OptimizeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ArityMismatch { expected, got } => {
                write!(f, "bounds have {got} dimensions, objective expects {expected}")
            }
            Self::AllNonFinite => write!(
                f,
                "objective returned a non-finite loss for every particle of the first iteration"
            ),
            Self::InvalidConfig { message } => write!(f, "invalid configuration: {message}"),
            Self::EmptyInput => write!(f, "at least one episode is required"),
            Self::Dynamics(e) => write!(f, "{e}"),
            Self::Geometry(e) => write!(f, "{e}"),
            Self::Viewpoint(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for OptimizeError {}

impl From<ViewpointError> for OptimizeError {
    fn from(e: ViewpointError) -> Self {
        Self::Viewpoint(e)
    }
}

impl From<DynamicsError> for OptimizeError {
    fn from(e: DynamicsError) -> Self {
        Self::Dynamics(e)
    }
}

impl From<GeometryError> for OptimizeError {
    fn from(e: GeometryError) -> Self {
        Self::Geometry(e)
    }
}
