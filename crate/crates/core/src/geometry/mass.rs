//! Mass properties of closed triangle meshes by signed-tetrahedron
//! decomposition (divergence theorem), exact for polyhedra up to rounding.

use super::{GeometryError, TriMesh};
use crate::math::{Mat3, Vec2, Vec3};

/// Volume, centroid, and inertia per unit mass of a watertight mesh.
///
/// `unit_inertia` is the inertia tensor about the centroid at unit mass
/// (units m²); multiply by an identified mass to get the physical tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProperties {
    pub volume: f64,
    pub centroid: Vec3,
    pub unit_inertia: Mat3,
}

impl MassProperties {
    /// Yaw (z-axis) inertia per unit mass about a vertical axis through the
    /// centroid displaced by `offset` in the table plane (parallel-axis
    /// correction). Used when the identified center of mass departs from the
    /// geometric centroid.
    pub fn yaw_unit_inertia_about(&self, offset: Vec2) -> f64 {
        self.unit_inertia.m[2][2] + offset.norm_squared()
    }
}

/// Compute volume, centroid, and unit inertia of a watertight mesh.
///
/// Uses the per-triangle polynomial surface integrals of Eberly's
/// "Polyhedral Mass Properties" formulation; errors if the mesh is not
/// watertight or encloses no volume. An inward-wound surface (negative
/// signed volume) is treated as flipped.
pub fn mass_properties(mesh: &TriMesh) -> Result<MassProperties, GeometryError> {
    if !mesh.is_watertight() {
        return Err(GeometryError::NotWatertight);
    }

    let mut vol = 0.0;
    let mut first = Vec3::ZERO; // ∫x, ∫y, ∫z
    let mut diag = Vec3::ZERO; // ∫x², ∫y², ∫z²
    let mut mixed = Vec3::ZERO; // ∫xy, ∫yz, ∫zx

    for face in 0..mesh.faces().len() {
        let [w0, w1, w2] = mesh.triangle(face);

        let tmp0 = w0 + w1;
        let tmp1 = comp_mul(w0, w0);
        let tmp2 = tmp1 + comp_mul(w1, tmp0);
        let f1 = tmp0 + w2;
        let f2 = tmp2 + comp_mul(w2, f1);
        let f3 = comp_mul(w0, tmp1) + comp_mul(w1, tmp2) + comp_mul(w2, f2);
        let g0 = f2 + comp_mul(w0, f1 + w0);
        let g1 = f2 + comp_mul(w1, f1 + w1);
        let g2 = f2 + comp_mul(w2, f1 + w2);

        let d = (w1 - w0).cross(w2 - w0);

        vol += d.x * f1.x;
        first = first + comp_mul(d, f2);
        diag = diag + comp_mul(d, f3);
        mixed = mixed
            + Vec3::new(
                d.x * (w0.y * g0.x + w1.y * g1.x + w2.y * g2.x),
                d.y * (w0.z * g0.y + w1.z * g1.y + w2.z * g2.y),
                d.z * (w0.x * g0.z + w1.x * g1.z + w2.x * g2.z),
            );
    }

    vol /= 6.0;
    first = first.scale(1.0 / 24.0);
    diag = diag.scale(1.0 / 60.0);
    mixed = mixed.scale(1.0 / 120.0);

    if vol < 0.0 {
        vol = -vol;
        first = -first;
        diag = -diag;
        mixed = -mixed;
    }
    let (lo, hi) = mesh.bounding_box();
    if vol <= 1e-12 * {
        let d = hi - lo;
        (d.x * d.y * d.z).abs().max(f64::MIN_POSITIVE)
    } {
        return Err(GeometryError::ZeroVolume);
    }

    let mass = vol; // unit density
    let c = first.scale(1.0 / mass);

    // Inertia about the origin, then shifted to the centroid.
    let ixx = diag.y + diag.z - mass * (c.y * c.y + c.z * c.z);
    let iyy = diag.z + diag.x - mass * (c.z * c.z + c.x * c.x);
    let izz = diag.x + diag.y - mass * (c.x * c.x + c.y * c.y);
    let ixy = -(mixed.x - mass * c.x * c.y);
    let iyz = -(mixed.y - mass * c.y * c.z);
    let izx = -(mixed.z - mass * c.z * c.x);

    let unit_inertia = Mat3 {
        m: [
            [ixx / mass, ixy / mass, izx / mass],
            [ixy / mass, iyy / mass, iyz / mass],
            [izx / mass, iyz / mass, izz / mass],
        ],
    };

    Ok(MassProperties {
        volume: vol,
        centroid: c,
        unit_inertia,
    })
}

#[inline]
fn comp_mul(a: Vec3, b: Vec3) -> Vec3 {
    Vec3::new(a.x * b.x, a.y * b.y, a.z * b.z)
}
