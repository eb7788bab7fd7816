//! Domain types for the control-hit-slide episode.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::DynamicsError;
use crate::geometry::{mass_properties, GeometryError, MassProperties, Pose, TriMesh};
use crate::math::Vec2;

/// Identified rigid physics of the object: Coulomb friction coefficient,
/// mass, and the planar offset of the center of mass from the mesh centroid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectPhysics {
    pub friction: f64,
    pub mass: f64,
    /// Center-of-mass offset from the mesh centroid, object body frame,
    /// table plane.
    pub com_offset: Vec2,
}

impl ObjectPhysics {
    pub fn new(friction: f64, mass: f64, com_offset: Vec2) -> Result<Self, DynamicsError> {
        if !(friction >= 0.0) || !friction.is_finite() {
            return Err(invalid(format!("friction must be ≥ 0, got {friction}")));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(invalid(format!("mass must be > 0, got {mass}")));
        }
        if !com_offset.is_finite() {
            return Err(invalid(String::from("com_offset must be finite")));
        }
        Ok(Self {
            friction,
            mass,
            com_offset,
        })
    }

    /// The center-of-mass offset must stay inside the mesh footprint.
    pub fn validate_against(&self, model: &ObjectModel) -> Result<(), DynamicsError> {
        let com = model.planar_centroid() + self.com_offset;
        if com.x < model.bbox_min.x
            || com.x > model.bbox_max.x
            || com.y < model.bbox_min.y
            || com.y > model.bbox_max.y
        {
            return Err(invalid(format!(
                "center of mass ({}, {}) lies outside the mesh footprint",
                com.x, com.y
            )));
        }
        Ok(())
    }
}

/// Mesh-derived constants needed by the slide model: mass properties plus the
/// planar footprint used to sanity-check center-of-mass offsets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectModel {
    pub props: MassProperties,
    pub bbox_min: Vec2,
    pub bbox_max: Vec2,
}

impl ObjectModel {
    pub fn from_mesh(mesh: &TriMesh) -> Result<Self, GeometryError> {
        let props = mass_properties(mesh)?;
        let (lo, hi) = mesh.bounding_box();
        Ok(Self {
            props,
            bbox_min: Vec2::new(lo.x, lo.y),
            bbox_max: Vec2::new(hi.x, hi.y),
        })
    }

    pub fn planar_centroid(&self) -> Vec2 {
        Vec2::new(self.props.centroid.x, self.props.centroid.y)
    }
}

/// Per-joint PD controller parameters with reflected inertia.
#[derive(Debug, Clone, PartialEq)]
pub struct PDParams {
    pub kp: Vec<f64>,
    pub kd: Vec<f64>,
    pub inertia: Vec<f64>,
}

impl PDParams {
    pub fn new(kp: Vec<f64>, kd: Vec<f64>, inertia: Vec<f64>) -> Result<Self, DynamicsError> {
        if kp.len() != kd.len() || kp.len() != inertia.len() {
            return Err(DynamicsError::JointCountMismatch {
                expected: kp.len(),
                got: kd.len().max(inertia.len()),
            });
        }
        if kp.is_empty() {
            return Err(invalid(String::from("PD parameters need at least one joint")));
        }
        for (name, v) in [("kp", &kp), ("inertia", &inertia)] {
            if v.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
                return Err(invalid(format!("all {name} entries must be > 0")));
            }
        }
        // kd may be zero: an undamped joint is a legitimate (if bouncy) model.
        if kd.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
            return Err(invalid(String::from("all kd entries must be ≥ 0")));
        }
        Ok(Self { kp, kd, inertia })
    }

    pub fn joint_count(&self) -> usize {
        self.kp.len()
    }
}

/// Joint positions and velocities at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    pub positions: Vec<f64>,
    pub velocities: Vec<f64>,
}

impl JointState {
    pub fn zeros(joints: usize) -> Self {
        Self {
            positions: alloc::vec![0.0; joints],
            velocities: alloc::vec![0.0; joints],
        }
    }

    pub fn joint_count(&self) -> usize {
        self.positions.len()
    }
}

/// One timestamped joint-space sample.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSample {
    pub time: f64,
    pub positions: Vec<f64>,
    pub velocities: Vec<f64>,
}

/// Ordered joint-space trajectory with a consistent joint count.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTrajectory {
    samples: Vec<JointSample>,
}

impl JointTrajectory {
    pub fn new(samples: Vec<JointSample>) -> Result<Self, DynamicsError> {
        if samples.is_empty() {
            return Err(DynamicsError::Geometry(GeometryError::EmptyTrajectory));
        }
        let joints = samples[0].positions.len();
        for (i, s) in samples.iter().enumerate() {
            if s.positions.len() != joints || s.velocities.len() != joints {
                return Err(DynamicsError::JointCountMismatch {
                    expected: joints,
                    got: s.positions.len().min(s.velocities.len()),
                });
            }
            if i > 0 && !(s.time > samples[i - 1].time) {
                return Err(DynamicsError::Geometry(GeometryError::NonIncreasingTime {
                    index: i,
                }));
            }
        }
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn joint_count(&self) -> usize {
        self.samples[0].positions.len()
    }

    pub fn samples(&self) -> &[JointSample] {
        &self.samples
    }
}

/// The hit: where the end effector strikes (object body frame), the world
/// direction of the blow, and the effective mass/speed behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HitSpec {
    /// Contact point in the object body frame, table plane.
    pub contact_point: Vec2,
    /// Unit hitting direction in the world frame.
    pub direction: Vec2,
    /// End-effector speed along `direction` at contact, m/s.
    pub ee_speed: f64,
    /// Effective mass of the end effector at the contact, kg.
    pub ee_effective_mass: f64,
}

impl HitSpec {
    pub fn validate(&self) -> Result<(), DynamicsError> {
        if (self.direction.norm() - 1.0).abs() > 1e-9 {
            return Err(invalid(format!(
                "hit direction must be unit length, got norm {}",
                self.direction.norm()
            )));
        }
        if !(self.ee_speed >= 0.0) {
            return Err(invalid(format!("ee_speed must be ≥ 0, got {}", self.ee_speed)));
        }
        if !(self.ee_effective_mass > 0.0) {
            return Err(invalid(format!(
                "ee_effective_mass must be > 0, got {}",
                self.ee_effective_mass
            )));
        }
        Ok(())
    }
}

/// Planar rigid state of the sliding object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlideState {
    pub position: Vec2,
    /// Yaw wrapped to (−π, π].
    pub yaw: f64,
    pub velocity: Vec2,
    pub omega: f64,
}

impl SlideState {
    pub fn at_rest(position: Vec2, yaw: f64) -> Self {
        Self {
            position,
            yaw: wrap_angle(yaw),
            velocity: Vec2::ZERO,
            omega: 0.0,
        }
    }

    pub fn is_resting(&self) -> bool {
        self.velocity == Vec2::ZERO && self.omega == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.position.is_finite()
            && self.yaw.is_finite()
            && self.velocity.is_finite()
            && self.omega.is_finite()
    }
}

/// Wrap an angle to (−π, π].
pub fn wrap_angle(a: f64) -> f64 {
    use core::f64::consts::{PI, TAU};
    let w = a - TAU * crate::math::floor((a + PI) / TAU);
    if w <= -PI {
        w + TAU
    } else {
        w
    }
}

/// Which direction Coulomb deceleration acts along.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrictionDirection {
    /// Oppose the current velocity direction (default; exact Coulomb).
    Velocity,
    /// Always along the hit axis `e`, the literal reading of the slide model.
    HitAxis,
}

/// Tunables of the slide integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlideConfig {
    pub friction_dir: FrictionDirection,
    /// Speeds below this are snapped to rest (and spin is zeroed with them).
    pub rest_threshold: f64,
    /// Restitution of the hit impulse, 0 = fully plastic.
    pub restitution: f64,
}

impl Default for SlideConfig {
    fn default() -> Self {
        Self {
            friction_dir: FrictionDirection::Velocity,
            rest_threshold: 1e-3,
            restitution: 0.0,
        }
    }
}

/// Planar pose of the object on the table.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlanarPose {
    pub x: f64,
    pub y: f64,
    pub yaw: f64,
}

impl PlanarPose {
    pub fn lift(&self, z: f64) -> Pose {
        Pose::from_planar(self.x, self.y, self.yaw, z)
    }
}

/// Full description of one control-hit-slide episode.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Per-step joint targets (K × J), rad.
    pub controls: Vec<Vec<f64>>,
    /// Simulation and control timestep, s.
    pub dt: f64,
    /// Step index at which the impulse fires (≤ K).
    pub hit_step: usize,
    pub hit: HitSpec,
    /// Object pose at episode start.
    pub initial_pose: PlanarPose,
    /// Robot joint state at episode start.
    pub joint_init: JointState,
    /// Gravitational acceleration, m/s².
    pub gravity: f64,
    /// Episode length cap, s.
    pub max_duration: f64,
    pub slide: SlideConfig,
}

impl Scenario {
    pub fn control_steps(&self) -> usize {
        self.controls.len()
    }

    pub fn joint_count(&self) -> usize {
        self.controls.first().map_or(0, Vec::len)
    }

    pub fn hit_time(&self) -> f64 {
        self.hit_step as f64 * self.dt
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(invalid(format!("dt must be > 0, got {}", self.dt)));
        }
        if self.controls.is_empty() {
            return Err(invalid(String::from("scenario needs at least one control step")));
        }
        let joints = self.joint_count();
        if self.controls.iter().any(|u| u.len() != joints) {
            return Err(invalid(String::from("control steps have inconsistent joint counts")));
        }
        if self.joint_init.positions.len() != joints || self.joint_init.velocities.len() != joints {
            return Err(DynamicsError::JointCountMismatch {
                expected: joints,
                got: self.joint_init.positions.len(),
            });
        }
        if self.hit_step > self.controls.len() {
            return Err(invalid(format!(
                "hit_step {} exceeds control step count {}",
                self.hit_step,
                self.controls.len()
            )));
        }
        if !(self.gravity > 0.0) {
            return Err(invalid(format!("gravity must be > 0, got {}", self.gravity)));
        }
        if !(self.max_duration >= self.hit_time()) {
            return Err(invalid(format!(
                "max_duration {} ends before the hit at {}",
                self.max_duration,
                self.hit_time()
            )));
        }
        if !(self.slide.rest_threshold >= 0.0) {
            return Err(invalid(String::from("rest_threshold must be ≥ 0")));
        }
        if !(self.slide.restitution >= 0.0) {
            return Err(invalid(String::from("restitution must be ≥ 0")));
        }
        self.hit.validate()
    }
}

fn invalid(message: String) -> DynamicsError {
    DynamicsError::InvalidInput { message }
}
