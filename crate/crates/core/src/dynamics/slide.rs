//! Impulse transfer at the hit and planar sliding under Coulomb friction.
//!
//! Translation decelerates at `μ·g` (along the velocity by default, along the
//! hit axis in the literal model variant); rotation is driven by the torque of
//! the friction force about the lever arm from the hit point to the center of
//! mass. Integration is semi-implicit Euler with the velocity clamped at its
//! zero crossing, so a step never drags the object backwards.

use alloc::vec::Vec;

use super::types::{FrictionDirection, SlideConfig};
use super::{DynamicsError, HitSpec, ObjectModel, ObjectPhysics, SlideState};
use crate::geometry::PoseTrajectory;
use crate::math::Vec2;

/// Lever arm from the hit point to the center of mass, object body frame.
fn lever_arm_body(hit: &HitSpec, physics: &ObjectPhysics, model: &ObjectModel) -> Vec2 {
    model.planar_centroid() + physics.com_offset - hit.contact_point
}

/// Yaw inertia about the (possibly offset) center of mass, kg·m².
fn yaw_inertia(physics: &ObjectPhysics, model: &ObjectModel) -> f64 {
    physics.mass * model.props.yaw_unit_inertia_about(physics.com_offset)
}

/// Impulse imparted by the hit, world frame, N·s.
///
/// Standard single-point rigid collision along the hit direction:
/// `λ = (1+ρ)·v / (1/m_ee + 1/m + (r×ê)²/I_z)`, where `r` is the lever arm
/// rotated into the world at the object's yaw and `ρ` the restitution.
pub fn hit_impulse(
    hit: &HitSpec,
    physics: &ObjectPhysics,
    model: &ObjectModel,
    object_yaw: f64,
    restitution: f64,
) -> Vec2 {
    let r_world = lever_arm_body(hit, physics, model).rotated(object_yaw);
    let r_cross_e = r_world.cross(hit.direction);
    let denom = 1.0 / hit.ee_effective_mass
        + 1.0 / physics.mass
        + r_cross_e * r_cross_e / yaw_inertia(physics, model);
    let lambda = (1.0 + restitution) * hit.ee_speed / denom;
    hit.direction.scale(lambda)
}

/// Kick the slide state with an impulse applied at the hit point:
/// `Δv = J/m`, `Δω = (r × J)/I_z`.
pub fn apply_impulse(
    state: &SlideState,
    impulse: Vec2,
    hit: &HitSpec,
    physics: &ObjectPhysics,
    model: &ObjectModel,
) -> SlideState {
    let r_world = lever_arm_body(hit, physics, model).rotated(state.yaw);
    SlideState {
        position: state.position,
        yaw: state.yaw,
        velocity: state.velocity + impulse.scale(1.0 / physics.mass),
        omega: state.omega + r_world.cross(impulse) / yaw_inertia(physics, model),
    }
}

/// Outcome of one slide step: the new state, plus how much of `dt` actually
/// elapsed (shorter when the velocity hits zero inside the step).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlideStep {
    pub state: SlideState,
    pub elapsed: f64,
}

/// One semi-implicit Euler step of the slide equations.
///
/// `hit_axis` is the lever arm in the body frame (rotated by the current yaw
/// each step) and `e` the world hit direction used when
/// `friction_dir = HitAxis`.
pub fn step_slide(
    state: &SlideState,
    physics: &ObjectPhysics,
    model: &ObjectModel,
    lever_body: Vec2,
    e: Vec2,
    gravity: f64,
    dt: f64,
    config: &SlideConfig,
) -> SlideStep {
    if state.is_resting() {
        return SlideStep {
            state: *state,
            elapsed: dt,
        };
    }

    let decel = physics.friction * gravity;
    let speed = state.velocity.norm();

    if speed == 0.0 {
        // Pure spin: kinetic friction needs sliding, so no force and no
        // torque; the residual rotation coasts (or is snapped to rest below).
        let mut omega = state.omega;
        if speed < config.rest_threshold {
            omega = 0.0;
        }
        return SlideStep {
            state: SlideState {
                position: state.position,
                yaw: super::types::wrap_angle(state.yaw + omega * dt),
                velocity: Vec2::ZERO,
                omega,
            },
            elapsed: dt,
        };
    }

    // Velocity update with the zero crossing clamped; `force_dir` is the
    // sliding direction the friction force opposes.
    let mut elapsed = dt;
    let mut velocity;
    let force_dir;
    match config.friction_dir {
        FrictionDirection::Velocity => {
            force_dir = state.velocity.scale(1.0 / speed);
            let new_speed = speed - decel * dt;
            if new_speed <= 0.0 && decel > 0.0 {
                elapsed = speed / decel;
                velocity = Vec2::ZERO;
            } else {
                velocity = state.velocity.scale(new_speed / speed);
            }
        }
        FrictionDirection::HitAxis => {
            let along = state.velocity.dot(e);
            if along == 0.0 || decel == 0.0 {
                force_dir = Vec2::ZERO;
                velocity = state.velocity;
            } else {
                let sign = along.signum();
                force_dir = e.scale(sign);
                let new_along = along - decel * dt * sign;
                velocity = if new_along * along <= 0.0 {
                    state.velocity - e.scale(along)
                } else {
                    state.velocity - e.scale(decel * dt * sign)
                };
            }
        }
    }

    // Rotation: torque of the friction force about the center of mass, with
    // the lever arm frozen in the body frame and carried by the current yaw.
    let force = force_dir.scale(-physics.friction * physics.mass * gravity);
    let r_world = lever_body.rotated(state.yaw);
    let mut omega = state.omega + elapsed * r_world.cross(force) / yaw_inertia(physics, model);

    // Position advances with the updated velocity; on a clamped step the
    // object covers the exact stopping distance v²/(2·μ·g) along its track.
    let position = if elapsed < dt {
        state.position + force_dir.scale(speed * elapsed * 0.5)
    } else {
        state.position + velocity.scale(dt)
    };
    let yaw = super::types::wrap_angle(state.yaw + omega * elapsed);

    if velocity.norm() < config.rest_threshold {
        velocity = Vec2::ZERO;
        omega = 0.0;
    }

    SlideStep {
        state: SlideState {
            position,
            yaw,
            velocity,
            omega,
        },
        elapsed,
    }
}

/// Simulate the full slide: impulse, kick, then integrate to rest or the
/// duration cap. Emits one pose per step on a local clock starting at 0
/// (the hit instant); the final sample lands on the exact stopping time when
/// the velocity zero-crosses inside a step.
///
/// Poses are lifted to rigid transforms with z fixed at `table_z`.
pub fn simulate_slide(
    initial: &SlideState,
    physics: &ObjectPhysics,
    model: &ObjectModel,
    hit: &HitSpec,
    gravity: f64,
    dt: f64,
    max_duration: f64,
    config: &SlideConfig,
    table_z: f64,
) -> Result<PoseTrajectory, DynamicsError> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(DynamicsError::InvalidInput {
            message: alloc::format!("dt must be > 0, got {dt}"),
        });
    }
    hit.validate()?;
    physics.validate_against(model)?;

    let impulse = hit_impulse(hit, physics, model, initial.yaw, config.restitution);
    let mut state = apply_impulse(initial, impulse, hit, physics, model);
    let lever_body = lever_arm_body(hit, physics, model);

    let lift = |s: &SlideState| {
        super::PlanarPose {
            x: s.position.x,
            y: s.position.y,
            yaw: s.yaw,
        }
        .lift(table_z)
    };

    let mut samples = Vec::new();
    samples.push((0.0, lift(&state)));

    let mut step = 0usize;
    let mut t = 0.0;
    while t < max_duration && !state.is_resting() {
        let dt_step = dt.min(max_duration - t);
        let out = step_slide(&state, physics, model, lever_body, hit.direction, gravity, dt_step, config);
        state = out.state;
        t += out.elapsed;
        step += 1;
        if !state.is_finite() {
            return Err(DynamicsError::NonFiniteState { step });
        }
        samples.push((t, lift(&state)));
    }

    Ok(PoseTrajectory::new(samples)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes::box_mesh;
    use crate::math::Vec3;

    fn unit_cube_model() -> ObjectModel {
        ObjectModel::from_mesh(&box_mesh(Vec3::new(1.0, 1.0, 1.0))).unwrap()
    }

    fn physics(friction: f64, mass: f64) -> ObjectPhysics {
        ObjectPhysics::new(friction, mass, Vec2::ZERO).unwrap()
    }

    fn central_hit(speed: f64) -> HitSpec {
        HitSpec {
            contact_point: Vec2::ZERO,
            direction: Vec2::new(1.0, 0.0),
            ee_speed: speed,
            ee_effective_mass: 1.0,
        }
    }

    #[test]
    fn zero_speed_hit_gives_zero_impulse() {
        let model = unit_cube_model();
        let j = hit_impulse(&central_hit(0.0), &physics(0.3, 1.0), &model, 0.0, 0.0);
        assert_eq!(j, Vec2::ZERO);
    }

    #[test]
    fn central_two_body_impulse_closed_form() {
        // Equal 1 kg masses, 1 m/s, plastic: λ = 1/(1/1 + 1/1) = 0.5 N·s.
        let model = unit_cube_model();
        let j = hit_impulse(&central_hit(1.0), &physics(0.3, 1.0), &model, 0.0, 0.0);
        assert!((j.x - 0.5).abs() < 1e-12);
        assert_eq!(j.y, 0.0);
    }

    #[test]
    fn off_center_impulse_is_smaller() {
        let model = unit_cube_model();
        let phys = physics(0.3, 1.0);
        let central = hit_impulse(&central_hit(1.0), &phys, &model, 0.0, 0.0).norm();
        let off = HitSpec {
            contact_point: Vec2::new(0.0, 0.3),
            ..central_hit(1.0)
        };
        let off_mag = hit_impulse(&off, &phys, &model, 0.0, 0.0).norm();
        assert!(off_mag < central, "{off_mag} !< {central}");
    }

    #[test]
    fn impulse_through_com_leaves_omega_unchanged() {
        let model = unit_cube_model();
        let phys = physics(0.3, 1.0);
        let state = SlideState::at_rest(Vec2::ZERO, 0.7);
        let kicked = apply_impulse(&state, Vec2::new(0.4, 0.0), &central_hit(1.0), &phys, &model);
        assert_eq!(kicked.omega, 0.0);
    }

    #[test]
    fn momentum_division_by_mass() {
        let model = unit_cube_model();
        let phys = physics(0.3, 2.0);
        let state = SlideState::at_rest(Vec2::ZERO, 0.0);
        let kicked = apply_impulse(&state, Vec2::new(1.0, 0.0), &central_hit(1.0), &phys, &model);
        assert!((kicked.velocity.x - 0.5).abs() < 1e-15);
        assert_eq!(kicked.velocity.y, 0.0);
    }

    #[test]
    fn planar_cross_product_spin() {
        // J = (1,0) at lever r = (0,0.1) with I_z = 0.02: Δω = r×J/I_z = −5.
        let model = unit_cube_model();
        // Unit cube at mass m: I_z = m/6. Pick m so I_z = 0.02 → m = 0.12.
        let phys = physics(0.3, 0.12);
        let hit = HitSpec {
            contact_point: Vec2::new(0.0, -0.1),
            ..central_hit(1.0)
        };
        let state = SlideState::at_rest(Vec2::ZERO, 0.0);
        let kicked = apply_impulse(&state, Vec2::new(1.0, 0.0), &hit, &phys, &model);
        assert!((kicked.omega + 5.0).abs() < 1e-9, "omega = {}", kicked.omega);
    }

    #[test]
    fn frictionless_step_preserves_velocity() {
        let model = unit_cube_model();
        let phys = physics(0.0, 1.0);
        let state = SlideState {
            position: Vec2::ZERO,
            yaw: 0.0,
            velocity: Vec2::new(0.4, -0.2),
            omega: 0.0,
        };
        let out = step_slide(
            &state,
            &phys,
            &model,
            Vec2::ZERO,
            Vec2::new(1.0, 0.0),
            9.81,
            0.01,
            &SlideConfig {
                rest_threshold: 0.0,
                ..SlideConfig::default()
            },
        );
        assert_eq!(out.state.velocity, state.velocity);
        assert!((out.state.position.x - 0.004).abs() < 1e-15);
        assert!((out.state.position.y + 0.002).abs() < 1e-15);
    }

    #[test]
    fn single_step_velocity_decrement() {
        // v = 1 − μ·g·dt = 1 − 0.3·9.81·0.001 = 0.997057.
        let model = unit_cube_model();
        let phys = physics(0.3, 1.0);
        let state = SlideState {
            position: Vec2::ZERO,
            yaw: 0.0,
            velocity: Vec2::new(1.0, 0.0),
            omega: 0.0,
        };
        for dir in [FrictionDirection::Velocity, FrictionDirection::HitAxis] {
            let out = step_slide(
                &state,
                &phys,
                &model,
                Vec2::ZERO,
                Vec2::new(1.0, 0.0),
                9.81,
                0.001,
                &SlideConfig {
                    friction_dir: dir,
                    rest_threshold: 0.0,
                    restitution: 0.0,
                },
            );
            assert!(
                (out.state.velocity.x - 0.997057).abs() < 1e-12,
                "{:?}: {}",
                dir,
                out.state.velocity.x
            );
        }
    }

    #[test]
    fn rest_state_is_a_fixed_point() {
        let model = unit_cube_model();
        let phys = physics(0.5, 1.0);
        let state = SlideState::at_rest(Vec2::new(0.3, 0.1), 0.2);
        let out = step_slide(
            &state,
            &phys,
            &model,
            Vec2::new(0.1, 0.0),
            Vec2::new(1.0, 0.0),
            9.81,
            0.01,
            &SlideConfig::default(),
        );
        assert_eq!(out.state, state);
    }

    #[test]
    fn zero_speed_hit_slide_is_static() {
        let model = unit_cube_model();
        let phys = physics(0.3, 1.0);
        let initial = SlideState::at_rest(Vec2::new(0.1, -0.2), 0.4);
        let traj = simulate_slide(
            &initial,
            &phys,
            &model,
            &central_hit(0.0),
            9.81,
            1e-3,
            0.5,
            &SlideConfig::default(),
            0.0,
        )
        .unwrap();
        assert_eq!(traj.len(), 1);
        let (_, pose) = traj.first();
        assert!((pose.translation.x - 0.1).abs() < 1e-15);
    }
}
