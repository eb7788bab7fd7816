//! Unit quaternions and rigid transforms.

use crate::math::{self, Vec3};

/// Unit quaternion in (w, x, y, z) order.
///
/// Every constructor and product renormalizes and canonicalizes the sign so
/// that `w >= 0` (ties broken on the first nonzero component), which keeps
/// serialization stable: a rotation has exactly one representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const IDENTITY: Self = Self {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Build from raw components, normalizing and canonicalizing.
    ///
    /// Panics if the norm is not strictly positive (a zero quaternion does
    /// not represent a rotation).
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = math::sqrt(w * w + x * x + y * y + z * z);
        assert!(n > 0.0 && n.is_finite(), "quaternion norm must be positive and finite");
        let q = Self {
            w: w / n,
            x: x / n,
            y: y / n,
            z: z / n,
        };
        q.canonicalized()
    }

    /// Rotation of `angle` radians about `axis` (need not be unit length).
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Self {
        let n = axis.norm();
        if n == 0.0 {
            return Self::IDENTITY;
        }
        let half = 0.5 * angle;
        let s = math::sin(half) / n;
        Self::new(math::cos(half), axis.x * s, axis.y * s, axis.z * s)
    }

    /// Rotation encoded as an axis-angle vector (direction = axis, length = angle).
    pub fn from_rotation_vector(v: Vec3) -> Self {
        Self::from_axis_angle(v, v.norm())
    }

    /// Planar rotation about +z.
    pub fn from_yaw(yaw: f64) -> Self {
        Self::from_axis_angle(Vec3::new(0.0, 0.0, 1.0), yaw)
    }

    fn canonicalized(self) -> Self {
        let neg = self.w < 0.0
            || (self.w == 0.0
                && (self.x < 0.0
                    || (self.x == 0.0 && (self.y < 0.0 || (self.y == 0.0 && self.z < 0.0)))));
        if neg {
            Self {
                w: -self.w,
                x: -self.x,
                y: -self.y,
                z: -self.z,
            }
        } else {
            self
        }
    }

    pub fn norm(self) -> f64 {
        math::sqrt(self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z)
    }

    /// Hamilton product; the result rotates by `rhs` first, then `self`.
    pub fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.w * rhs.w - self.x * rhs.x - self.y * rhs.y - self.z * rhs.z,
            self.w * rhs.x + self.x * rhs.w + self.y * rhs.z - self.z * rhs.y,
            self.w * rhs.y - self.x * rhs.z + self.y * rhs.w + self.z * rhs.x,
            self.w * rhs.z + self.x * rhs.y - self.y * rhs.x + self.z * rhs.w,
        )
    }

    pub fn conjugate(self) -> Self {
        Self {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
        .canonicalized()
    }

    /// Rotate a vector.
    pub fn rotate(self, v: Vec3) -> Vec3 {
        // v' = v + 2w (u × v) + 2 u × (u × v), u = vector part
        let u = Vec3::new(self.x, self.y, self.z);
        let t = u.cross(v).scale(2.0);
        v + t.scale(self.w) + u.cross(t)
    }

    /// Angle of the relative rotation between two quaternions, in [0, π].
    pub fn angle_to(self, other: Self) -> f64 {
        let d = (self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z).abs();
        2.0 * math::acos(d.min(1.0))
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Rigid transform: rotation followed by translation, `p' = R p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub rotation: Quat,
    pub translation: Vec3,
}

impl Pose {
    pub const IDENTITY: Self = Self {
        rotation: Quat::IDENTITY,
        translation: Vec3::ZERO,
    };

    pub fn new(rotation: Quat, translation: Vec3) -> Self {
        Self {
            rotation,
            translation,
        }
    }

    pub fn from_translation(t: Vec3) -> Self {
        Self::new(Quat::IDENTITY, t)
    }

    /// Lift a planar pose (x, y, yaw) to a full rigid transform at height `z`.
    pub fn from_planar(x: f64, y: f64, yaw: f64, z: f64) -> Self {
        Self::new(Quat::from_yaw(yaw), Vec3::new(x, y, z))
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Pose) -> Pose {
        Pose {
            rotation: self.rotation.mul(other.rotation),
            translation: self.rotation.rotate(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Pose {
        let inv_rot = self.rotation.conjugate();
        Pose {
            rotation: inv_rot,
            translation: -inv_rot.rotate(self.translation),
        }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        self.rotation.rotate(p) + self.translation
    }

    /// Rotation-angle difference to another pose, radians.
    pub fn rotation_angle_to(&self, other: &Pose) -> f64 {
        self.rotation.angle_to(other.rotation)
    }

    /// Translation distance to another pose, meters.
    pub fn translation_distance_to(&self, other: &Pose) -> f64 {
        (self.translation - other.translation).norm()
    }

    pub fn is_finite(&self) -> bool {
        self.rotation.is_finite() && self.translation.is_finite()
    }
}
