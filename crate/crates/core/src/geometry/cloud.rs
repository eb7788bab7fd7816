//! Point clouds and area-weighted surface sampling.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{GeometryError, TriMesh};
use crate::math::{self, Vec3};

/// Unordered set of 3-D points, meters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointCloud {
    pub points: Vec<Vec3>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec3>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn centroid(&self) -> Vec3 {
        let mut c = Vec3::ZERO;
        for p in &self.points {
            c = c + *p;
        }
        c.scale(1.0 / self.points.len() as f64)
    }
}

/// Uniform f64 in [0, 1) from the top 53 bits of the generator.
#[inline]
pub(crate) fn uniform_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Draw `n` points on the mesh surface, area-weighted and uniform within each
/// triangle. Deterministic: the same `(mesh, n, seed)` produce a bitwise
/// identical cloud.
pub fn sample_surface(mesh: &TriMesh, n: usize, seed: u64) -> Result<PointCloud, GeometryError> {
    if n == 0 {
        return Err(GeometryError::ZeroSamples);
    }

    let mut cumulative = Vec::with_capacity(mesh.faces().len());
    let mut total = 0.0;
    for face in 0..mesh.faces().len() {
        let [a, b, c] = mesh.triangle(face);
        total += 0.5 * (b - a).cross(c - a).norm();
        cumulative.push(total);
    }
    if total <= 0.0 {
        return Err(GeometryError::ZeroAreaMesh);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let target = uniform_f64(&mut rng) * total;
        let face = match cumulative.binary_search_by(|area| area.partial_cmp(&target).unwrap()) {
            Ok(i) | Err(i) => i.min(cumulative.len() - 1),
        };
        let [a, b, c] = mesh.triangle(face);

        // Square-root warp gives uniform density over the triangle.
        let su = math::sqrt(uniform_f64(&mut rng));
        let v = uniform_f64(&mut rng);
        let (w0, w1, w2) = (1.0 - su, su * (1.0 - v), su * v);
        points.push(a.scale(w0) + b.scale(w1) + c.scale(w2));
    }
    Ok(PointCloud::new(points))
}
