//! Objective bindings: identify object physics from pose trajectories and
//! PD controller parameters from joint trajectories.

use alloc::vec::Vec;

use super::{pso_minimize, Executor, OptResult, OptimizeError, ParamBounds, SwarmConfig};
use crate::dynamics::{
    robot_loss, simulate_episode_hooked, simulate_pd, JointState, JointTrajectory, ObjectModel,
    ObjectPhysics, PDParams, Scenario,
};
use crate::geometry::{trajectory_loss, PointCloud, PoseTrajectory};
use crate::math::Vec2;

/// One recorded object interaction: the scenario that produced it and the
/// observed object pose trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectEpisode {
    pub scenario: Scenario,
    pub real: PoseTrajectory,
}

/// The object-identification objective: replay each episode's controls under
/// candidate physics and sum the per-episode trajectory losses.
pub struct ObjectIdentProblem<'a> {
    pub episodes: &'a [ObjectEpisode],
    pub model: &'a ObjectModel,
    pub points: &'a PointCloud,
    pub pd: &'a PDParams,
}

impl ObjectIdentProblem<'_> {
    /// Parameter order of the search vector.
    pub const ARITY: usize = 4; // friction, mass, com_x, com_y

    pub fn physics_from(x: &[f64]) -> Result<ObjectPhysics, OptimizeError> {
        Ok(ObjectPhysics::new(x[0], x[1], Vec2::new(x[2], x[3]))?)
    }

    /// Summed loss over all episodes at the given physics.
    pub fn loss(&self, physics: &ObjectPhysics) -> Result<f64, OptimizeError> {
        let mut total = 0.0;
        for ep in self.episodes {
            let (_, sim) = simulate_episode_hooked(&ep.scenario, self.pd, physics, self.model, None)?;
            let times: Vec<f64> = ep.real.times().collect();
            let sim = sim.resample_nearest(&times)?;
            total += trajectory_loss(&ep.real, &sim, self.points)?;
        }
        Ok(total)
    }

    /// Loss as a plain objective; failures inside the search box count as +∞.
    pub fn loss_at(&self, x: &[f64]) -> f64 {
        match Self::physics_from(x) {
            Ok(physics) => self.loss(&physics).unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    }
}

/// Identify `(friction, mass, com_x, com_y)` by swarm search over `bounds`.
///
/// Multiple episodes are aggregated by an unweighted sum of their losses.
pub fn identify_object(
    episodes: &[ObjectEpisode],
    model: &ObjectModel,
    points: &PointCloud,
    pd: &PDParams,
    bounds: &ParamBounds,
    config: &SwarmConfig,
    executor: &dyn Executor,
) -> Result<(ObjectPhysics, OptResult), OptimizeError> {
    if episodes.is_empty() {
        return Err(OptimizeError::EmptyInput);
    }
    bounds.expect_arity(ObjectIdentProblem::ARITY)?;
    for ep in episodes {
        ep.scenario.validate()?;
    }

    let problem = ObjectIdentProblem {
        episodes,
        model,
        points,
        pd,
    };
    let result = pso_minimize(|x| problem.loss_at(x), bounds, config, executor)?;
    let physics = ObjectIdentProblem::physics_from(&result.best)?;
    Ok((physics, result))
}

/// One recorded control-stage episode for robot identification.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotEpisode {
    /// Per-step joint targets (K × J), rad.
    pub controls: Vec<Vec<f64>>,
    pub dt: f64,
    pub initial: JointState,
    pub real: JointTrajectory,
}

impl RobotEpisode {
    fn validate(&self) -> Result<(), OptimizeError> {
        if self.controls.is_empty() {
            return Err(OptimizeError::EmptyInput);
        }
        let joints = self.controls[0].len();
        if self.real.joint_count() != joints || self.initial.joint_count() != joints {
            return Err(OptimizeError::Dynamics(
                crate::dynamics::DynamicsError::JointCountMismatch {
                    expected: joints,
                    got: self.real.joint_count(),
                },
            ));
        }
        if self.real.len() != self.controls.len() {
            return Err(OptimizeError::Dynamics(
                crate::dynamics::DynamicsError::LengthMismatch {
                    expected: self.controls.len(),
                    got: self.real.len(),
                },
            ));
        }
        Ok(())
    }

    /// Single-joint view: controls column and recorded positions.
    fn joint_view(&self, j: usize) -> (Vec<Vec<f64>>, JointState, Vec<f64>) {
        let controls = self.controls.iter().map(|u| alloc::vec![u[j]]).collect();
        let initial = JointState {
            positions: alloc::vec![self.initial.positions[j]],
            velocities: alloc::vec![self.initial.velocities[j]],
        };
        let real = self.real.samples().iter().map(|s| s.positions[j]).collect();
        (controls, initial, real)
    }
}

/// Identify per-joint `(kp, kd, inertia)` by swarm search.
///
/// The decoupled PD model makes joints independent, so each joint runs its
/// own swarm over the shared 3-dimensional `bounds`; episode losses are
/// summed. The returned [`OptResult`] aggregates the per-joint runs: `best`
/// concatenates `[kp, kd, inertia]` per joint and `history` is the sum of the
/// per-joint mean-absolute-error histories (still non-increasing). Report
/// Eq.-style joint losses via [`robot_loss`] at the returned parameters.
pub fn identify_robot(
    episodes: &[RobotEpisode],
    bounds: &ParamBounds,
    config: &SwarmConfig,
    executor: &dyn Executor,
) -> Result<(PDParams, OptResult), OptimizeError> {
    if episodes.is_empty() {
        return Err(OptimizeError::EmptyInput);
    }
    bounds.expect_arity(3)?;
    let joints = episodes[0].controls[0].len();
    for ep in episodes {
        ep.validate()?;
        if ep.controls[0].len() != joints {
            return Err(OptimizeError::Dynamics(
                crate::dynamics::DynamicsError::JointCountMismatch {
                    expected: joints,
                    got: ep.controls[0].len(),
                },
            ));
        }
    }

    // Per-joint single-axis data, shared across candidate evaluations.
    let mut kp = Vec::with_capacity(joints);
    let mut kd = Vec::with_capacity(joints);
    let mut inertia = Vec::with_capacity(joints);
    let mut history: Vec<f64> = alloc::vec![0.0; config.iterations];
    let mut evaluations = 0;
    let mut best = Vec::with_capacity(3 * joints);
    let mut best_loss = 0.0;

    for j in 0..joints {
        let views: Vec<(Vec<Vec<f64>>, JointState, Vec<f64>, f64)> = episodes
            .iter()
            .map(|ep| {
                let (controls, initial, real) = ep.joint_view(j);
                (controls, initial, real, ep.dt)
            })
            .collect();

        let objective = |x: &[f64]| -> f64 {
            let params = match PDParams::new(
                alloc::vec![x[0]],
                alloc::vec![x[1]],
                alloc::vec![x[2]],
            ) {
                Ok(p) => p,
                Err(_) => return f64::INFINITY,
            };
            let mut total = 0.0;
            for (controls, initial, real, dt) in &views {
                let sim = match simulate_pd(&params, controls, initial, *dt) {
                    Ok(t) => t,
                    Err(_) => return f64::INFINITY,
                };
                let mut sum = 0.0;
                for (s, r) in sim.samples().iter().zip(real.iter()) {
                    sum += (s.positions[0] - r).abs();
                }
                total += sum / real.len() as f64;
            }
            total
        };

        let result = pso_minimize(objective, bounds, config, executor)?;
        kp.push(result.best[0]);
        kd.push(result.best[1]);
        inertia.push(result.best[2]);
        best.extend_from_slice(&result.best);
        best_loss += result.best_loss;
        evaluations += result.evaluations;
        for (h, r) in history.iter_mut().zip(result.history.iter()) {
            *h += r;
        }
    }

    let params = PDParams::new(kp, kd, inertia)?;
    Ok((
        params,
        OptResult {
            best,
            best_loss,
            history,
            evaluations,
        },
    ))
}

/// Evaluate Eq.-style robot loss of identified parameters on an episode.
pub fn robot_episode_loss(params: &PDParams, ep: &RobotEpisode) -> Result<f64, OptimizeError> {
    Ok(robot_loss(params, &ep.controls, &ep.initial, ep.dt, &ep.real)?)
}

/// Loss curvature along one parameter dimension around an optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sensitivity {
    /// Parameter value the probe was centered on.
    pub value: f64,
    /// Second finite difference of the loss along this dimension.
    pub curvature: f64,
    /// Probe step actually used.
    pub step: f64,
}

/// Per-dimension loss curvature via second finite differences, probing
/// `rel_step` of each dimension's range (shifted inwards at the bounds).
/// Degenerate dimensions report zero curvature.
pub fn sensitivity<F>(objective: F, at: &[f64], bounds: &ParamBounds, rel_step: f64) -> Vec<Sensitivity>
where
    F: Fn(&[f64]) -> f64,
{
    let mut out = Vec::with_capacity(at.len());
    for d in 0..at.len() {
        let h = rel_step * bounds.range(d);
        if h == 0.0 {
            out.push(Sensitivity {
                value: at[d],
                curvature: 0.0,
                step: 0.0,
            });
            continue;
        }
        let (lo, hi) = (bounds.lower(d), bounds.upper(d));
        // Center the 3-point stencil, shifting it inside the box if needed.
        let center = at[d].clamp(lo + h, hi - h).clamp(lo, hi);
        let mut probe = at.to_vec();
        probe[d] = center - h;
        let f0 = objective(&probe);
        probe[d] = center;
        let f1 = objective(&probe);
        probe[d] = center + h;
        let f2 = objective(&probe);
        out.push(Sensitivity {
            value: at[d],
            curvature: (f0 - 2.0 * f1 + f2) / (h * h),
            step: h,
        });
    }
    out
}
