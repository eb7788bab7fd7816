//! Rigid-transform algebra, mesh and point-cloud handling, mass properties,
//! and the ADD/ADD-S pose-distance metrics.

mod cloud;
mod mass;
mod mesh;
mod metric;
mod pose;
pub mod shapes;
mod trajectory;

pub use cloud::{sample_surface, PointCloud};
pub(crate) use cloud::uniform_f64;
pub use mass::{mass_properties, MassProperties};
pub use mesh::{parse_obj, TriMesh};
pub use metric::{add_metric, adds_metric, trajectory_loss, BRUTE_FORCE_LIMIT};
pub use pose::{Pose, Quat};
pub use trajectory::PoseTrajectory;

use alloc::string::String;

/// Errors from geometry operations.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Malformed OBJ input; `line` is 1-based.
    ObjParse { line: usize, message: String },
    /// A face references a vertex index outside the vertex list; `line` is
    /// 1-based and `index` is the raw 1-based index from the file.
    FaceIndexOutOfRange {
        line: usize,
        index: i64,
        vertex_count: usize,
    },
    /// Mesh has no vertices or no (non-degenerate) faces.
    EmptyMesh,
    /// Surface sampling or mass properties on a mesh with zero total area.
    ZeroAreaMesh,
    /// Mass properties require every edge to be shared by exactly two faces.
    NotWatertight,
    /// Mass properties of a surface enclosing no volume.
    ZeroVolume,
    /// A metric was evaluated over an empty point cloud.
    EmptyCloud,
    /// `sample_surface` called with a zero sample count.
    ZeroSamples,
    /// Trajectory constructed with no samples.
    EmptyTrajectory,
    /// Trajectory timestamps must be strictly increasing; `index` is the
    /// offending sample.
    NonIncreasingTime { index: usize },
    /// Two trajectories disagree in sample count or timestamps.
    TrajectoryMismatch { message: String },
}

impl core::fmt::Display for GeometryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::ObjParse { line, message } => write!(f, "OBJ parse error at line {line}: {message}"),
            Self::FaceIndexOutOfRange {
                line,
                index,
                vertex_count,
            } => write!(
                f,
                "OBJ face index {index} out of range at line {line} (mesh has {vertex_count} vertices)"
            ),
            Self::EmptyMesh => write!(f, "mesh has no vertices or no non-degenerate faces"),
            Self::ZeroAreaMesh => write!(f, "mesh surface area is zero"),
            Self::NotWatertight => {
                write!(f, "mesh is not watertight (an edge is not shared by exactly two faces)")
            }
            Self::ZeroVolume => write!(f, "mesh encloses no volume"),
            Self::EmptyCloud => write!(f, "point cloud is empty"),
            Self::ZeroSamples => write!(f, "surface sampling requires at least one sample"),
            Self::EmptyTrajectory => write!(f, "trajectory must contain at least one sample"),
            Self::NonIncreasingTime { index } => {
                write!(f, "trajectory timestamps must be strictly increasing (sample {index})")
            }
            Self::TrajectoryMismatch { message } => write!(f, "trajectory mismatch: {message}"),
        }
    }
}

impl core::error::Error for GeometryError {}
