//! Procedural primitive meshes for tests and synthetic data.

use alloc::vec::Vec;

use super::TriMesh;
use crate::math::{Vec2, Vec3};

/// Axis-aligned box centered at the origin with the given extents
/// (full side lengths), outward-wound and watertight.
pub fn box_mesh(extents: Vec3) -> TriMesh {
    let h = extents.scale(0.5);
    let v = |sx: f64, sy: f64, sz: f64| Vec3::new(sx * h.x, sy * h.y, sz * h.z);
    let vertices = alloc::vec![
        v(-1.0, -1.0, -1.0),
        v(1.0, -1.0, -1.0),
        v(1.0, 1.0, -1.0),
        v(-1.0, 1.0, -1.0),
        v(-1.0, -1.0, 1.0),
        v(1.0, -1.0, 1.0),
        v(1.0, 1.0, 1.0),
        v(-1.0, 1.0, 1.0),
    ];
    let faces = alloc::vec![
        [0, 2, 1],
        [0, 3, 2], // bottom (-z)
        [4, 5, 6],
        [4, 6, 7], // top (+z)
        [0, 1, 5],
        [0, 5, 4], // -y
        [1, 2, 6],
        [1, 6, 5], // +x
        [2, 3, 7],
        [2, 7, 6], // +y
        [3, 0, 4],
        [3, 4, 7], // -x
    ];
    TriMesh::new(vertices, faces).expect("box mesh is valid")
}

/// Extrude a simple polygon along +z into a closed prism.
///
/// `polygon` lists the cross-section vertices counter-clockwise; `cap_tris`
/// triangulates that polygon (indices into `polygon`). The prism spans
/// `z ∈ [-depth/2, depth/2]`.
pub fn extrude_polygon(polygon: &[Vec2], cap_tris: &[[usize; 3]], depth: f64) -> TriMesh {
    let n = polygon.len();
    let hz = 0.5 * depth;
    let mut vertices = Vec::with_capacity(2 * n);
    for p in polygon {
        vertices.push(Vec3::new(p.x, p.y, -hz));
    }
    for p in polygon {
        vertices.push(Vec3::new(p.x, p.y, hz));
    }

    let mut faces = Vec::with_capacity(2 * cap_tris.len() + 2 * n);
    for &[a, b, c] in cap_tris {
        faces.push([a, c, b]); // bottom cap faces -z
        faces.push([n + a, n + b, n + c]); // top cap faces +z
    }
    for i in 0..n {
        let j = (i + 1) % n;
        faces.push([i, j, n + j]);
        faces.push([i, n + j, n + i]);
    }
    TriMesh::new(vertices, faces).expect("extruded polygon is valid")
}

/// L-shaped prism: a `width × height` plate with a rectangular corner notch
/// removed, extruded by `depth`. Deliberately asymmetric; used where a
/// symmetric silhouette would leave a pose ambiguous.
pub fn l_prism(width: f64, height: f64, arm: f64, depth: f64) -> TriMesh {
    let (w, h, t) = (0.5 * width, 0.5 * height, arm);
    let polygon = [
        Vec2::new(-w, -h),
        Vec2::new(w, -h),
        Vec2::new(w, -h + t),
        Vec2::new(-w + t, -h + t),
        Vec2::new(-w + t, h),
        Vec2::new(-w, h),
    ];
    let cap = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5]];
    extrude_polygon(&polygon, &cap, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_is_watertight_with_expected_area() {
        let m = box_mesh(Vec3::new(2.0, 1.0, 0.5));
        assert!(m.is_watertight());
        let area = 2.0 * (2.0 * 1.0 + 2.0 * 0.5 + 1.0 * 0.5);
        assert!((m.surface_area() - area).abs() < 1e-12);
    }

    #[test]
    fn l_prism_is_watertight() {
        let m = l_prism(0.2, 0.16, 0.06, 0.08);
        assert!(m.is_watertight());
        assert_eq!(m.vertices().len(), 12);
        assert_eq!(m.faces().len(), 20);
    }
}
