//! Whole-episode rollout: control stage, hit, slide stage, one shared clock.

use alloc::vec::Vec;

use super::slide::simulate_slide;
use super::{
    DynamicsError, JointTrajectory, ObjectModel, ObjectPhysics, PDParams, Scenario, SlideState,
};
use crate::geometry::{PoseTrajectory, TriMesh};
use crate::math::Vec2;

/// Optional override of the hit speed from the simulated robot motion, for
/// callers that can map joint state to an end-effector speed (a forward
/// kinematics model). Receives the control-stage trajectory and the hit step.
pub type EeSpeedHook<'a> = &'a dyn Fn(&JointTrajectory, usize) -> f64;

/// Simulate one control-hit-slide episode.
///
/// Returns the joint trajectory of the control stage (one sample per control
/// step) and the object pose trajectory on the same clock: static until the
/// hit fires at `hit_step`, sliding afterwards until rest or `max_duration`.
/// The object pose is emitted once per timestep.
pub fn simulate_episode(
    scenario: &Scenario,
    pd: &PDParams,
    physics: &ObjectPhysics,
    mesh: &TriMesh,
) -> Result<(JointTrajectory, PoseTrajectory), DynamicsError> {
    let model = ObjectModel::from_mesh(mesh)?;
    simulate_episode_hooked(scenario, pd, physics, &model, None)
}

/// [`simulate_episode`] against a precomputed [`ObjectModel`], optionally
/// overriding the hit speed via `ee_hook`. By default the scenario's
/// [`HitSpec`](super::HitSpec) is taken verbatim.
pub fn simulate_episode_hooked(
    scenario: &Scenario,
    pd: &PDParams,
    physics: &ObjectPhysics,
    model: &ObjectModel,
    ee_hook: Option<EeSpeedHook<'_>>,
) -> Result<(JointTrajectory, PoseTrajectory), DynamicsError> {
    scenario.validate()?;
    physics.validate_against(model)?;
    if pd.joint_count() != scenario.joint_count() {
        return Err(DynamicsError::JointCountMismatch {
            expected: scenario.joint_count(),
            got: pd.joint_count(),
        });
    }

    let joints =
        super::pd::simulate_pd(pd, &scenario.controls, &scenario.joint_init, scenario.dt)?;

    let mut hit = scenario.hit;
    if let Some(hook) = ee_hook {
        hit.ee_speed = hook(&joints, scenario.hit_step);
        hit.validate()?;
    }

    let initial = SlideState::at_rest(
        Vec2::new(scenario.initial_pose.x, scenario.initial_pose.y),
        scenario.initial_pose.yaw,
    );
    let t_hit = scenario.hit_time();
    let slide = simulate_slide(
        &initial,
        physics,
        model,
        &hit,
        scenario.gravity,
        scenario.dt,
        scenario.max_duration - t_hit,
        &scenario.slide,
        TABLE_Z,
    )?;

    // Static poses on the step grid up to the hit, then the slide shifted
    // onto the episode clock (the slide's first sample covers t_hit itself).
    let static_pose = scenario.initial_pose.lift(TABLE_Z);
    let mut samples = Vec::with_capacity(scenario.hit_step + slide.len());
    for k in 0..scenario.hit_step {
        samples.push((k as f64 * scenario.dt, static_pose));
    }
    for &(t, pose) in slide.samples() {
        samples.push((t_hit + t, pose));
    }
    let object = PoseTrajectory::new(samples)?;

    Ok((joints, object))
}

/// Table height of the planar model; poses are lifted with z fixed here.
pub const TABLE_Z: f64 = 0.0;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{HitSpec, JointState, PlanarPose, SlideConfig};
    use crate::geometry::shapes::box_mesh;
    use crate::math::Vec3;
    use alloc::vec;

    fn scenario(hit_speed: f64) -> Scenario {
        Scenario {
            controls: vec![vec![0.0, 0.0]; 50],
            dt: 1e-3,
            hit_step: 20,
            hit: HitSpec {
                contact_point: Vec2::ZERO,
                direction: Vec2::new(1.0, 0.0),
                ee_speed: hit_speed,
                ee_effective_mass: 1.0,
            },
            initial_pose: PlanarPose {
                x: 0.05,
                y: -0.02,
                yaw: 0.3,
            },
            joint_init: JointState::zeros(2),
            gravity: 9.81,
            max_duration: 1.0,
            slide: SlideConfig::default(),
        }
    }

    fn pd() -> PDParams {
        PDParams::new(vec![80.0, 60.0], vec![10.0, 8.0], vec![1.0, 0.8]).unwrap()
    }

    fn physics() -> ObjectPhysics {
        ObjectPhysics::new(0.4, 0.8, Vec2::ZERO).unwrap()
    }

    fn mesh() -> crate::geometry::TriMesh {
        box_mesh(Vec3::new(0.1, 0.1, 0.1))
    }

    #[test]
    fn static_episode_stays_static() {
        // Targets equal the initial joint pose and the hit carries no speed.
        let sc = scenario(0.0);
        let (joints, object) = simulate_episode(&sc, &pd(), &physics(), &mesh()).unwrap();
        assert_eq!(joints.len(), 50);
        for s in joints.samples() {
            assert!(s.positions.iter().all(|q| q.abs() < 1e-12));
        }
        let first = object.first().1;
        for (_, pose) in object.samples() {
            assert!(pose.translation_distance_to(&first) < 1e-15);
            assert!(pose.rotation_angle_to(&first) < 1e-12);
        }
    }

    #[test]
    fn episode_is_deterministic() {
        let sc = scenario(0.8);
        let a = simulate_episode(&sc, &pd(), &physics(), &mesh()).unwrap();
        let b = simulate_episode(&sc, &pd(), &physics(), &mesh()).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn object_clock_covers_hit_and_slide() {
        let sc = scenario(0.8);
        let (_, object) = simulate_episode(&sc, &pd(), &physics(), &mesh()).unwrap();
        // Static prefix then motion from the hit onwards.
        let t_hit = sc.hit_time();
        let first = object.first().1;
        let mut moved_before_hit = false;
        let mut moved_after = false;
        for &(t, pose) in object.samples() {
            let moved = pose.translation_distance_to(&first) > 1e-12;
            if t <= t_hit + 0.5 * sc.dt && moved {
                moved_before_hit = true;
            }
            if moved {
                moved_after = true;
            }
        }
        assert!(!moved_before_hit, "object moved before the hit");
        assert!(moved_after, "object never moved");
    }

    #[test]
    fn ee_hook_overrides_hit_speed() {
        let sc = scenario(0.8);
        let model = ObjectModel::from_mesh(&mesh()).unwrap();
        let hook = |_: &JointTrajectory, _: usize| 0.0;
        let (_, object) =
            simulate_episode_hooked(&sc, &pd(), &physics(), &model, Some(&hook)).unwrap();
        let first = object.first().1;
        for (_, pose) in object.samples() {
            assert!(pose.translation_distance_to(&first) < 1e-15);
        }
    }

    #[test]
    fn self_replay_has_zero_trajectory_loss() {
        use crate::geometry::{sample_surface, trajectory_loss};
        let sc = scenario(0.8);
        let m = mesh();
        let (_, object) = simulate_episode(&sc, &pd(), &physics(), &m).unwrap();
        let cloud = sample_surface(&m, 64, 3).unwrap();
        let loss = trajectory_loss(&object, &object, &cloud).unwrap();
        assert_eq!(loss, 0.0);
    }
}
