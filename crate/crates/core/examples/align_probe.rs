// Scratch probe of alignment convergence (not part of the deliverable tests).
use twin_ident_core::geometry::{shapes::l_prism, Pose, Quat};
use twin_ident_core::optimize::{ParamBounds, Sequential, SwarmConfig};
use twin_ident_core::viewpoint::{
    align_viewpoint, render_silhouette, viewpoint_loss, CameraIntrinsics, PoseDelta, ViewpointRef,
};
use twin_ident_core::Vec3;

fn main() {
    let mesh = l_prism(0.2, 0.16, 0.06, 0.08);
    let coarse = Pose::new(
        Quat::from_rotation_vector(Vec3::new(0.45, -0.35, 0.3)),
        Vec3::new(0.01, -0.02, 0.55),
    );
    let cam = CameraIntrinsics {
        fx: 450.0,
        fy: 450.0,
        cx: 160.0,
        cy: 120.0,
        width: 320,
        height: 240,
    };
    let reference = render_silhouette(&mesh, &coarse, &cam).unwrap();
    let refs = vec![ViewpointRef::single(reference, cam)];
    let floor = viewpoint_loss(&refs, &mesh, &coarse).unwrap();
    println!("loss at truth (clamp floor): {floor:.9}");

    // Landscape slices.
    for scale in [1e-4, 3e-4, 1e-3, 3e-3, 1e-2] {
        let d = PoseDelta {
            rotation: Vec3::new(scale, 0.0, 0.0),
            translation: Vec3::ZERO,
        };
        let l = viewpoint_loss(&refs, &mesh, &d.perturb(&coarse)).unwrap();
        let d2 = PoseDelta {
            rotation: Vec3::ZERO,
            translation: Vec3::new(scale * 0.1, 0.0, 0.0),
        };
        let l2 = viewpoint_loss(&refs, &mesh, &d2.perturb(&coarse)).unwrap();
        println!("rot {scale:.0e}: {:+.3e}   trans {:.0e}: {:+.3e}", l - floor, scale * 0.1, l2 - floor);
    }

    let bounds = ParamBounds::new(vec![
        (-0.05, 0.05),
        (-0.05, 0.05),
        (-0.05, 0.05),
        (-0.01, 0.01),
        (-0.01, 0.01),
        (-0.01, 0.01),
    ])
    .unwrap();
    for (particles, iters, clamp) in [
        (32usize, 300usize, 0.5f64),
        (32, 300, 0.2),
        (64, 300, 0.2),
        (32, 600, 0.2),
        (64, 600, 0.1),
    ] {
        for seed in [2u64, 7] {
            let config = SwarmConfig {
                particles,
                iterations: iters,
                velocity_clamp: clamp,
                seed,
                ..SwarmConfig::default()
            };
            let t0 = std::time::Instant::now();
            let (_, result) =
                align_viewpoint(&refs, &mesh, &coarse, &bounds, &config, &Sequential).unwrap();
            let delta = PoseDelta::from_slice(&result.best);
            let (rot, trans) = delta.magnitude();
            println!(
                "n {particles:2} iters {iters:3} clamp {clamp}: seed {seed}: rot {rot:.2e} trans {trans:.2e} loss-floor {:+.3e}  ({:.1?})",
                result.best_loss - floor,
                t0.elapsed()
            );
        }
    }
}
