//! Refine a coarse camera pose by silhouette matching.


use super::{bce_mask_loss, render_silhouette, CameraIntrinsics, SilhouetteMask, ViewpointError};
use crate::geometry::{Pose, Quat, TriMesh};
use crate::math::Vec3;
use crate::optimize::{pso_minimize, Executor, OptResult, OptimizeError, ParamBounds, SwarmConfig};

/// 6-DoF perturbation: axis-angle rotation (rad) and translation (m),
/// applied on the left of a base pose (a camera-frame nudge).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseDelta {
    pub rotation: Vec3,
    pub translation: Vec3,
}

impl PoseDelta {
    pub const DIMS: usize = 6;

    pub fn from_slice(x: &[f64]) -> Self {
        Self {
            rotation: Vec3::new(x[0], x[1], x[2]),
            translation: Vec3::new(x[3], x[4], x[5]),
        }
    }

    pub fn to_pose(&self) -> Pose {
        Pose::new(Quat::from_rotation_vector(self.rotation), self.translation)
    }

    /// Compose onto a base pose: `delta ∘ base`.
    pub fn perturb(&self, base: &Pose) -> Pose {
        self.to_pose().compose(base)
    }

    /// Rotation angle (rad) and translation norm (m) of the perturbation.
    pub fn magnitude(&self) -> (f64, f64) {
        (self.rotation.norm(), self.translation.norm())
    }
}

/// One reference observation: a segmentation mask, the camera that captured
/// it, and that camera's pose relative to the primary camera frame
/// (`Pose::IDENTITY` for the single-camera case).
#[derive(Debug, Clone, PartialEq)]
pub struct ViewpointRef {
    pub mask: SilhouetteMask,
    pub camera: CameraIntrinsics,
    pub view_offset: Pose,
}

impl ViewpointRef {
    pub fn single(mask: SilhouetteMask, camera: CameraIntrinsics) -> Self {
        Self {
            mask,
            camera,
            view_offset: Pose::IDENTITY,
        }
    }
}

/// Refine `coarse` by minimizing the mean BCE mask loss across references
/// over a [`PoseDelta`] search box (6 dimensions). Returns the refined pose
/// and the optimization trace.
pub fn align_viewpoint(
    references: &[ViewpointRef],
    mesh: &TriMesh,
    coarse: &Pose,
    bounds: &ParamBounds,
    config: &SwarmConfig,
    executor: &dyn Executor,
) -> Result<(Pose, OptResult), OptimizeError> {
    if references.is_empty() {
        return Err(OptimizeError::Viewpoint(ViewpointError::NoReferences));
    }
    bounds.expect_arity(PoseDelta::DIMS)?;
    for r in references {
        r.camera.validate().map_err(OptimizeError::Viewpoint)?;
        if (r.mask.width(), r.mask.height()) != (r.camera.width, r.camera.height) {
            return Err(OptimizeError::Viewpoint(ViewpointError::DimensionMismatch {
                expected: (r.camera.width, r.camera.height),
                got: (r.mask.width(), r.mask.height()),
            }));
        }
    }

    let objective = |x: &[f64]| -> f64 {
        let fine = PoseDelta::from_slice(x).perturb(coarse);
        let mut sum = 0.0;
        for r in references {
            let posed = r.view_offset.compose(&fine);
            let rendered = match render_silhouette(mesh, &posed, &r.camera) {
                Ok(m) => m,
                Err(_) => return f64::INFINITY,
            };
            sum += match bce_mask_loss(&r.mask, &rendered) {
                Ok(l) => l,
                Err(_) => return f64::INFINITY,
            };
        }
        sum / references.len() as f64
    };

    let result = pso_minimize(objective, bounds, config, executor)?;
    let fine = PoseDelta::from_slice(&result.best).perturb(coarse);
    Ok((fine, result))
}

/// Mean BCE loss of a pose against all references (the alignment objective
/// at a fixed point); used for reporting.
pub fn viewpoint_loss(
    references: &[ViewpointRef],
    mesh: &TriMesh,
    pose: &Pose,
) -> Result<f64, OptimizeError> {
    if references.is_empty() {
        return Err(OptimizeError::Viewpoint(ViewpointError::NoReferences));
    }
    let mut sum = 0.0;
    for r in references {
        let posed = r.view_offset.compose(pose);
        let rendered =
            render_silhouette(mesh, &posed, &r.camera).map_err(OptimizeError::Viewpoint)?;
        sum += bce_mask_loss(&r.mask, &rendered).map_err(OptimizeError::Viewpoint)?;
    }
    Ok(sum / references.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes::l_prism;
    use crate::optimize::Sequential;
    use alloc::vec;

    fn camera() -> CameraIntrinsics {
        CameraIntrinsics {
            fx: 280.0,
            fy: 280.0,
            cx: 160.0,
            cy: 120.0,
            width: 320,
            height: 240,
        }
    }

    #[test]
    fn zero_perturbation_reference_is_a_fixed_point() {
        let mesh = l_prism(0.2, 0.16, 0.06, 0.08);
        let coarse = Pose::from_translation(Vec3::new(0.0, 0.0, 0.6));
        let cam = camera();
        let reference = render_silhouette(&mesh, &coarse, &cam).unwrap();
        let refs = vec![ViewpointRef::single(reference, cam)];
        let bounds = ParamBounds::new(vec![
            (-0.05, 0.05),
            (-0.05, 0.05),
            (-0.05, 0.05),
            (-0.01, 0.01),
            (-0.01, 0.01),
            (-0.01, 0.01),
        ])
        .unwrap();
        let config = SwarmConfig {
            iterations: 60,
            seed: 2,
            ..SwarmConfig::default()
        };
        let (fine, result) =
            align_viewpoint(&refs, &mesh, &coarse, &bounds, &config, &Sequential).unwrap();
        let delta = PoseDelta::from_slice(&result.best);
        let (rot, trans) = delta.magnitude();
        assert!(
            rot + trans < 1e-3,
            "recovered delta should be ~0, got rot {rot} trans {trans}"
        );
        assert!(fine.rotation_angle_to(&coarse) < 1e-3);
    }

    #[test]
    fn reference_pose_minimizes_its_own_loss() {
        // No sampled perturbation may beat the rendering pose itself.
        let mesh = l_prism(0.2, 0.16, 0.06, 0.08);
        let base = Pose::from_translation(Vec3::new(0.02, -0.01, 0.55));
        let cam = camera();
        let reference = render_silhouette(&mesh, &base, &cam).unwrap();
        let refs = vec![ViewpointRef::single(reference, cam)];
        let base_loss = viewpoint_loss(&refs, &mesh, &base).unwrap();
        let mut worse = 0;
        for i in 0..40 {
            let t = i as f64;
            let delta = PoseDelta {
                rotation: Vec3::new(0.03 * crate::math::sin(1.3 * t), 0.03 * crate::math::cos(0.7 * t), 0.02 * crate::math::sin(2.1 * t + 0.5)),
                translation: Vec3::new(0.01 * crate::math::sin(0.9 * t + 1.0), 0.01 * crate::math::cos(1.7 * t), 0.01 * crate::math::sin(0.4 * t)),
            };
            let loss = viewpoint_loss(&refs, &mesh, &delta.perturb(&base)).unwrap();
            if loss < base_loss - 1e-9 {
                worse += 1;
            }
        }
        assert_eq!(worse, 0, "{worse} perturbations scored below the reference pose");
    }

    #[test]
    fn empty_reference_list_rejected() {
        let mesh = l_prism(0.2, 0.16, 0.06, 0.08);
        let bounds = ParamBounds::new(vec![(-0.1, 0.1); 6]).unwrap();
        let out = align_viewpoint(
            &[],
            &mesh,
            &Pose::IDENTITY,
            &bounds,
            &SwarmConfig::default(),
            &Sequential,
        );
        assert!(matches!(
            out,
            Err(OptimizeError::Viewpoint(ViewpointError::NoReferences))
        ));
    }
}
