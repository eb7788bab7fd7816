//! Pinhole camera intrinsics.

use alloc::format;

use super::ViewpointError;

/// Calibrated pinhole camera: focal lengths and principal point in pixels.
///
/// Camera frame: +z forward (in front of the camera), +x right, +y down;
/// a point `(X, Y, Z)` projects to pixel `(fx·X/Z + cx, fy·Y/Z + cy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: u32,
    pub height: u32,
}

impl CameraIntrinsics {
    pub fn validate(&self) -> Result<(), ViewpointError> {
        let bad = |message| ViewpointError::InvalidConfig { message };
        if !(self.fx > 0.0) || !(self.fy > 0.0) {
            return Err(bad(format!("focal lengths must be > 0, got ({}, {})", self.fx, self.fy)));
        }
        if !(self.cx >= 0.0) || self.cx >= self.width as f64 {
            return Err(bad(format!("cx = {} outside [0, {})", self.cx, self.width)));
        }
        if !(self.cy >= 0.0) || self.cy >= self.height as f64 {
            return Err(bad(format!("cy = {} outside [0, {})", self.cy, self.height)));
        }
        if self.width == 0 || self.height == 0 {
            return Err(bad(format!("image dimensions must be positive")));
        }
        Ok(())
    }

    /// Intrinsics rescaled to a different resolution (same field of view).
    pub fn scaled_to(&self, width: u32, height: u32) -> Self {
        let sx = width as f64 / self.width as f64;
        let sy = height as f64 / self.height as f64;
        Self {
            fx: self.fx * sx,
            fy: self.fy * sy,
            cx: self.cx * sx,
            cy: self.cy * sy,
            width,
            height,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_catches_bad_principal_point() {
        let cam = CameraIntrinsics {
            fx: 300.0,
            fy: 300.0,
            cx: 400.0,
            cy: 120.0,
            width: 320,
            height: 240,
        };
        assert!(cam.validate().is_err());
    }

    #[test]
    fn rescaling_preserves_field_of_view() {
        let cam = CameraIntrinsics {
            fx: 300.0,
            fy: 280.0,
            cx: 160.0,
            cy: 120.0,
            width: 320,
            height: 240,
        };
        let s = cam.scaled_to(640, 480);
        assert_eq!(s.fx, 600.0);
        assert_eq!(s.cy, 240.0);
        // Half-width over focal length is the FOV tangent.
        let fov = |c: &CameraIntrinsics| c.width as f64 / (2.0 * c.fx);
        assert!((fov(&cam) - fov(&s)).abs() < 1e-12);
    }
}
