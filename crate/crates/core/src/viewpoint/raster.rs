//! Software silhouette rasterizer: the union of projected triangles sampled
//! on a 4×4 subpixel grid. No depth buffer — a silhouette only needs
//! coverage, not ordering.

use alloc::vec::Vec;

use super::{CameraIntrinsics, SilhouetteMask, ViewpointError};
use crate::geometry::{Pose, TriMesh};
use crate::math::Vec3;

/// Subsamples per pixel axis (4×4 = 16 coverage levels).
pub const SUPERSAMPLE: u32 = 4;

/// Geometry closer than this to the camera plane is clipped away, meters.
pub const NEAR_PLANE: f64 = 1e-3;

/// Render the mesh posed in the camera frame to a coverage mask.
///
/// `object_pose` maps object coordinates into the camera frame. An object
/// entirely behind the camera yields an all-zero mask. Rendering is
/// deterministic: identical inputs produce bitwise-identical masks.
pub fn render_silhouette(
    mesh: &TriMesh,
    object_pose: &Pose,
    camera: &CameraIntrinsics,
) -> Result<SilhouetteMask, ViewpointError> {
    camera.validate()?;
    let w = camera.width as usize;
    let h = camera.height as usize;
    let mut bits: Vec<u16> = alloc::vec![0u16; w * h];

    for face in 0..mesh.faces().len() {
        let tri = mesh.triangle(face);
        let cam = [
            object_pose.apply(tri[0]),
            object_pose.apply(tri[1]),
            object_pose.apply(tri[2]),
        ];
        let clipped = clip_near(&cam);
        if clipped.len() < 3 {
            continue;
        }
        // Project the clipped polygon and fan-triangulate it.
        let projected: Vec<(f64, f64)> = clipped
            .iter()
            .map(|p| {
                (
                    camera.fx * p.x / p.z + camera.cx,
                    camera.fy * p.y / p.z + camera.cy,
                )
            })
            .collect();
        for k in 1..projected.len() - 1 {
            rasterize_triangle(
                &mut bits,
                camera.width,
                camera.height,
                projected[0],
                projected[k],
                projected[k + 1],
            );
        }
    }

    let coverage = bits
        .iter()
        .map(|b| b.count_ones() as f64 / (SUPERSAMPLE * SUPERSAMPLE) as f64)
        .collect();
    SilhouetteMask::new(camera.width, camera.height, coverage)
}

/// Sutherland-Hodgman clip of a triangle against `z >= NEAR_PLANE`;
/// returns 0, 3, or 4 vertices.
fn clip_near(tri: &[Vec3; 3]) -> Vec<Vec3> {
    let mut out = Vec::with_capacity(4);
    for i in 0..3 {
        let cur = tri[i];
        let next = tri[(i + 1) % 3];
        let cur_in = cur.z >= NEAR_PLANE;
        let next_in = next.z >= NEAR_PLANE;
        if cur_in {
            out.push(cur);
        }
        if cur_in != next_in {
            let t = (NEAR_PLANE - cur.z) / (next.z - cur.z);
            out.push(cur + (next - cur).scale(t));
        }
    }
    out
}

/// OR the subsample bits covered by one screen-space triangle into `bits`.
fn rasterize_triangle(
    bits: &mut [u16],
    width: u32,
    height: u32,
    a: (f64, f64),
    b: (f64, f64),
    c: (f64, f64),
) {
    let area = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    if area == 0.0 {
        return;
    }

    let min_x = a.0.min(b.0).min(c.0).max(0.0) as u32;
    let max_x = (a.0.max(b.0).max(c.0).min(width as f64 - 1.0).max(0.0)) as u32;
    let min_y = a.1.min(b.1).min(c.1).max(0.0) as u32;
    let max_y = (a.1.max(b.1).max(c.1).min(height as f64 - 1.0).max(0.0)) as u32;
    if a.0.max(b.0).max(c.0) < 0.0 || a.1.max(b.1).max(c.1) < 0.0 {
        return;
    }

    let ss = SUPERSAMPLE as usize;
    let full: u16 = u16::MAX; // all 16 subsample bits
    let edge = |p: (f64, f64), q: (f64, f64), x: f64, y: f64| {
        (q.0 - p.0) * (y - p.1) - (q.1 - p.1) * (x - p.0)
    };

    for py in min_y..=max_y {
        for px in min_x..=max_x {
            let idx = (py as usize) * (width as usize) + px as usize;
            if bits[idx] == full {
                continue;
            }
            let mut acc = bits[idx];
            for sy in 0..ss {
                for sx in 0..ss {
                    let bit = 1u16 << (sy * ss + sx);
                    if acc & bit != 0 {
                        continue;
                    }
                    let x = px as f64 + (sx as f64 + 0.5) / ss as f64;
                    let y = py as f64 + (sy as f64 + 0.5) / ss as f64;
                    let e0 = edge(a, b, x, y);
                    let e1 = edge(b, c, x, y);
                    let e2 = edge(c, a, x, y);
                    let inside = if area > 0.0 {
                        e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0
                    } else {
                        e0 <= 0.0 && e1 <= 0.0 && e2 <= 0.0
                    };
                    if inside {
                        acc |= bit;
                    }
                }
            }
            bits[idx] = acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::shapes::box_mesh;
    use crate::geometry::TriMesh;
    use alloc::vec;

    fn camera() -> CameraIntrinsics {
        CameraIntrinsics {
            fx: 100.0,
            fy: 100.0,
            cx: 160.0,
            cy: 120.0,
            width: 320,
            height: 240,
        }
    }

    fn unit_square() -> TriMesh {
        TriMesh::new(
            vec![
                Vec3::new(-0.5, -0.5, 0.0),
                Vec3::new(0.5, -0.5, 0.0),
                Vec3::new(0.5, 0.5, 0.0),
                Vec3::new(-0.5, 0.5, 0.0),
            ],
            vec![[0, 1, 2], [0, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn square_covers_projected_area() {
        // A unit square at distance z covers (f/z)² pixels.
        let cam = camera();
        for z in [1.0, 2.0, 4.0] {
            let pose = Pose::from_translation(Vec3::new(0.0, 0.0, z));
            let mask = render_silhouette(&unit_square(), &pose, &cam).unwrap();
            let expect = (cam.fx / z) * (cam.fx / z);
            let got = mask.area();
            assert!(
                (got - expect).abs() / expect < 0.02,
                "z = {z}: area {got} vs {expect}"
            );
        }
    }

    #[test]
    fn empty_region_has_zero_coverage() {
        let pose = Pose::from_translation(Vec3::new(0.0, 0.0, 2.0));
        let mask = render_silhouette(&unit_square(), &pose, &camera()).unwrap();
        // Silhouette spans 50 px around the principal point; corners stay empty.
        assert_eq!(mask.get(0, 0), 0.0);
        assert_eq!(mask.get(319, 239), 0.0);
        assert_eq!(mask.get(10, 200), 0.0);
    }

    #[test]
    fn one_pixel_translation_shifts_centroid_by_one_pixel() {
        let cam = camera();
        let z = 2.0;
        let step = z / cam.fx; // world offset worth one pixel
        let a = render_silhouette(
            &unit_square(),
            &Pose::from_translation(Vec3::new(0.0, 0.0, z)),
            &cam,
        )
        .unwrap();
        let b = render_silhouette(
            &unit_square(),
            &Pose::from_translation(Vec3::new(step, 0.0, z)),
            &cam,
        )
        .unwrap();
        let (ax, ay) = a.centroid().unwrap();
        let (bx, by) = b.centroid().unwrap();
        assert!((bx - ax - 1.0).abs() < 0.1, "shift {}", bx - ax);
        assert!((by - ay).abs() < 0.1);
    }

    #[test]
    fn behind_camera_renders_empty() {
        let pose = Pose::from_translation(Vec3::new(0.0, 0.0, -2.0));
        let mask = render_silhouette(&unit_square(), &pose, &camera()).unwrap();
        assert_eq!(mask.area(), 0.0);
    }

    #[test]
    fn straddling_near_plane_is_clipped_not_rejected() {
        // Box poking through the camera plane: renders something finite.
        let mesh = box_mesh(Vec3::new(0.2, 0.2, 4.0));
        let pose = Pose::from_translation(Vec3::new(0.0, 0.0, 1.0));
        let mask = render_silhouette(&mesh, &pose, &camera()).unwrap();
        assert!(mask.area() > 0.0);
        assert!(mask.coverage().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn rendering_is_deterministic() {
        let mesh = box_mesh(Vec3::new(0.3, 0.2, 0.1));
        let pose = Pose::from_planar(0.05, -0.03, 0.6, 1.5);
        let a = render_silhouette(&mesh, &pose, &camera()).unwrap();
        let b = render_silhouette(&mesh, &pose, &camera()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coverage_monotone_under_mesh_union() {
        // Adding triangles never decreases any pixel's coverage.
        let full = box_mesh(Vec3::new(0.3, 0.2, 0.15));
        let half = TriMesh::new(
            full.vertices().to_vec(),
            full.faces()[..6].to_vec(),
        )
        .unwrap();
        let pose = Pose::from_planar(0.0, 0.0, 0.4, 1.2);
        let cam = camera();
        let a = render_silhouette(&half, &pose, &cam).unwrap();
        let b = render_silhouette(&full, &pose, &cam).unwrap();
        for (pa, pb) in a.coverage().iter().zip(b.coverage().iter()) {
            assert!(pb >= pa);
        }
    }
}
