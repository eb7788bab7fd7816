//! ADD and ADD-S pose-distance metrics over model point clouds.
//!
//! ADD averages per-point displacement between two poses of the same model;
//! ADD-S replaces the fixed correspondence with the nearest neighbor, which
//! forgives object symmetries. Both are pure and thread-safe.

use alloc::vec::Vec;

use super::{GeometryError, PointCloud, Pose, PoseTrajectory};
use crate::math::{self, Vec3};

/// Clouds at or below this size use the O(N²) nearest-neighbor scan; larger
/// clouds go through a k-d tree. Both paths compute identical distances, so
/// the result is bitwise independent of the route.
pub const BRUTE_FORCE_LIMIT: usize = 256;

/// Squared distance with a fixed evaluation order shared by every metric
/// path; keeping the order fixed is what makes the k-d route exact.
#[inline]
fn dist2(a: Vec3, b: Vec3) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    (dx * dx + dy * dy) + dz * dz
}

/// Average distance between corresponding model points under two poses:
/// `mean_x ‖T·x − T̂·x‖`. Symmetric in its pose arguments.
pub fn add_metric(t: &Pose, that: &Pose, points: &PointCloud) -> Result<f64, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyCloud);
    }
    let mut sum = 0.0;
    for &p in &points.points {
        sum += math::sqrt(dist2(t.apply(p), that.apply(p)));
    }
    Ok(sum / points.len() as f64)
}

/// Symmetric variant: `mean_x min_y ‖T·x − T̂·y‖`. Never exceeds
/// [`add_metric`] on the same inputs.
pub fn adds_metric(t: &Pose, that: &Pose, points: &PointCloud) -> Result<f64, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyCloud);
    }
    let src: Vec<Vec3> = points.points.iter().map(|&p| t.apply(p)).collect();
    let dst: Vec<Vec3> = points.points.iter().map(|&p| that.apply(p)).collect();

    let mut sum = 0.0;
    if points.len() <= BRUTE_FORCE_LIMIT {
        for &q in &src {
            let mut best = f64::INFINITY;
            for &y in &dst {
                let d2 = dist2(q, y);
                if d2 < best {
                    best = d2;
                }
            }
            sum += math::sqrt(best);
        }
    } else {
        let tree = KdTree::build(dst);
        for &q in &src {
            sum += math::sqrt(tree.nearest_dist2(q));
        }
    }
    Ok(sum / points.len() as f64)
}

/// Per-trajectory objective: `(1/K) Σ_i [ADD(T_i, T̂_i) + ADD-S(T_i, T̂_i)]`.
///
/// Both trajectories must share a clock (equal sample counts, timestamps
/// within 1e-6 s).
pub fn trajectory_loss(
    real: &PoseTrajectory,
    sim: &PoseTrajectory,
    points: &PointCloud,
) -> Result<f64, GeometryError> {
    real.same_clock(sim, 1e-6)?;
    let mut sum = 0.0;
    for ((_, t), (_, that)) in real.samples().iter().zip(sim.samples().iter()) {
        sum += add_metric(t, that, points)? + adds_metric(t, that, points)?;
    }
    Ok(sum / real.len() as f64)
}

/// Exact nearest-neighbor k-d tree over 3-D points.
struct KdTree {
    nodes: Vec<KdNode>,
    root: i32,
}

struct KdNode {
    point: Vec3,
    axis: u8,
    left: i32,
    right: i32,
}

#[inline]
fn coord(p: Vec3, axis: u8) -> f64 {
    match axis {
        0 => p.x,
        1 => p.y,
        _ => p.z,
    }
}

impl KdTree {
    fn build(mut points: Vec<Vec3>) -> Self {
        let mut nodes = Vec::with_capacity(points.len());
        let root = Self::build_rec(&mut points, 0, &mut nodes);
        Self { nodes, root }
    }

    fn build_rec(points: &mut [Vec3], depth: usize, nodes: &mut Vec<KdNode>) -> i32 {
        if points.is_empty() {
            return -1;
        }
        let axis = (depth % 3) as u8;
        let mid = points.len() / 2;
        points.select_nth_unstable_by(mid, |a, b| coord(*a, axis).total_cmp(&coord(*b, axis)));
        let id = nodes.len() as i32;
        nodes.push(KdNode {
            point: points[mid],
            axis,
            left: -1,
            right: -1,
        });
        let (lo, rest) = points.split_at_mut(mid);
        let left = Self::build_rec(lo, depth + 1, nodes);
        let right = Self::build_rec(&mut rest[1..], depth + 1, nodes);
        nodes[id as usize].left = left;
        nodes[id as usize].right = right;
        id
    }

    fn nearest_dist2(&self, q: Vec3) -> f64 {
        let mut best = f64::INFINITY;
        self.search(self.root, q, &mut best);
        best
    }

    fn search(&self, id: i32, q: Vec3, best: &mut f64) {
        if id < 0 {
            return;
        }
        let node = &self.nodes[id as usize];
        let d2 = dist2(q, node.point);
        if d2 < *best {
            *best = d2;
        }
        let diff = coord(q, node.axis) - coord(node.point, node.axis);
        let (near, far) = if diff < 0.0 {
            (node.left, node.right)
        } else {
            (node.right, node.left)
        };
        self.search(near, q, best);
        // Everything on the far side is at least diff² away, so an equal or
        // larger bound cannot improve the minimum.
        if diff * diff < *best {
            self.search(far, q, best);
        }
    }
}
