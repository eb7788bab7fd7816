//! Per-joint decoupled PD control: `inertia·q̈ = kp·(u − q) − kd·q̇`,
//! integrated with semi-implicit Euler at the control rate.

use alloc::vec::Vec;

use super::types::JointSample;
use super::{DynamicsError, JointState, JointTrajectory, PDParams};
use crate::math;

/// Roll the PD dynamics forward, one sample per control step.
///
/// Sample `k` (0-based) carries time `(k+1)·dt`: the state after applying
/// control `k`.
pub fn simulate_pd(
    params: &PDParams,
    controls: &[Vec<f64>],
    initial: &JointState,
    dt: f64,
) -> Result<JointTrajectory, DynamicsError> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(DynamicsError::InvalidInput {
            message: alloc::format!("dt must be > 0, got {dt}"),
        });
    }
    let joints = params.joint_count();
    if initial.joint_count() != joints || initial.velocities.len() != joints {
        return Err(DynamicsError::JointCountMismatch {
            expected: joints,
            got: initial.joint_count(),
        });
    }

    let mut q = initial.positions.clone();
    let mut v = initial.velocities.clone();
    let mut samples = Vec::with_capacity(controls.len());

    for (step, u) in controls.iter().enumerate() {
        if u.len() != joints {
            return Err(DynamicsError::JointCountMismatch {
                expected: joints,
                got: u.len(),
            });
        }
        for j in 0..joints {
            let accel = (params.kp[j] * (u[j] - q[j]) - params.kd[j] * v[j]) / params.inertia[j];
            v[j] += dt * accel;
            q[j] += dt * v[j];
            if !q[j].is_finite() || !v[j].is_finite() {
                return Err(DynamicsError::NonFiniteState { step });
            }
        }
        samples.push(JointSample {
            time: (step + 1) as f64 * dt,
            positions: q.clone(),
            velocities: v.clone(),
        });
    }
    JointTrajectory::new(samples)
}

/// Mean joint-position error between the PD rollout and a recorded
/// trajectory: `(1/K) Σ_i ‖q_sim,i − q_real,i‖₂`, radians.
pub fn robot_loss(
    params: &PDParams,
    controls: &[Vec<f64>],
    initial: &JointState,
    dt: f64,
    real: &JointTrajectory,
) -> Result<f64, DynamicsError> {
    if real.len() != controls.len() {
        return Err(DynamicsError::LengthMismatch {
            expected: controls.len(),
            got: real.len(),
        });
    }
    if real.joint_count() != params.joint_count() {
        return Err(DynamicsError::JointCountMismatch {
            expected: params.joint_count(),
            got: real.joint_count(),
        });
    }
    let sim = simulate_pd(params, controls, initial, dt)?;
    let mut sum = 0.0;
    for (a, b) in sim.samples().iter().zip(real.samples().iter()) {
        let mut norm2 = 0.0;
        for (qa, qb) in a.positions.iter().zip(b.positions.iter()) {
            let d = qa - qb;
            norm2 += d * d;
        }
        sum += math::sqrt(norm2);
    }
    Ok(sum / real.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn params(kp: f64, kd: f64, inertia: f64) -> PDParams {
        PDParams::new(vec![kp], vec![kd], vec![inertia]).unwrap()
    }

    #[test]
    fn equilibrium_stays_put() {
        let p = params(100.0, 10.0, 1.0);
        let init = JointState {
            positions: vec![0.7],
            velocities: vec![0.0],
        };
        let controls = vec![vec![0.7]; 200];
        let traj = simulate_pd(&p, &controls, &init, 1e-3).unwrap();
        for s in traj.samples() {
            assert!((s.positions[0] - 0.7).abs() < 1e-12);
            assert!(s.velocities[0].abs() < 1e-12);
        }
    }

    #[test]
    fn loss_of_identical_rollout_is_zero() {
        let p = params(80.0, 12.0, 0.9);
        let init = JointState::zeros(1);
        let controls: Vec<Vec<f64>> = (0..100).map(|i| vec![0.01 * i as f64]).collect();
        let real = simulate_pd(&p, &controls, &init, 1e-3).unwrap();
        let loss = robot_loss(&p, &controls, &init, 1e-3, &real).unwrap();
        assert!(loss < 1e-12);
    }

    #[test]
    fn constant_offset_gives_constant_loss() {
        let p = params(80.0, 12.0, 0.9);
        let init = JointState::zeros(1);
        let controls = vec![vec![0.5]; 50];
        let base = simulate_pd(&p, &controls, &init, 1e-3).unwrap();
        let shifted = JointTrajectory::new(
            base.samples()
                .iter()
                .map(|s| JointSample {
                    time: s.time,
                    positions: vec![s.positions[0] + 0.1],
                    velocities: s.velocities.clone(),
                })
                .collect(),
        )
        .unwrap();
        let loss = robot_loss(&p, &controls, &init, 1e-3, &shifted).unwrap();
        assert!((loss - 0.1).abs() < 1e-12);
    }

    #[test]
    fn length_mismatch_rejected() {
        let p = params(80.0, 12.0, 0.9);
        let init = JointState::zeros(1);
        let controls = vec![vec![0.5]; 50];
        let real = simulate_pd(&p, &controls[..40], &init, 1e-3).unwrap();
        assert!(matches!(
            robot_loss(&p, &controls, &init, 1e-3, &real),
            Err(DynamicsError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn divergence_reports_step() {
        // Unstable for dt too large relative to stiffness.
        let p = params(1e12, 0.0, 1e-6); // wildly unstable at dt = 1
        let init = JointState::zeros(1);
        let controls = vec![vec![1.0]; 10_000];
        match simulate_pd(&p, &controls, &init, 1.0) {
            Err(DynamicsError::NonFiniteState { .. }) => {}
            other => panic!("expected divergence, got {other:?}"),
        }
    }
}
