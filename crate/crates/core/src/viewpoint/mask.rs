//! Silhouette coverage masks.

use alloc::vec::Vec;

use super::ViewpointError;

/// Per-pixel coverage in [0, 1], row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SilhouetteMask {
    width: u32,
    height: u32,
    coverage: Vec<f64>,
}

impl SilhouetteMask {
    /// Build from row-major coverage values; values are clamped to [0, 1].
    pub fn new(width: u32, height: u32, mut coverage: Vec<f64>) -> Result<Self, ViewpointError> {
        if coverage.len() != (width as usize) * (height as usize) {
            return Err(ViewpointError::InvalidConfig {
                message: alloc::format!(
                    "coverage length {} does not match {width}x{height}",
                    coverage.len()
                ),
            });
        }
        for v in &mut coverage {
            *v = v.clamp(0.0, 1.0);
        }
        Ok(Self {
            width,
            height,
            coverage,
        })
    }

    pub fn zeros(width: u32, height: u32) -> Self {
        Self {
            width,
            height,
            coverage: alloc::vec![0.0; (width as usize) * (height as usize)],
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn coverage(&self) -> &[f64] {
        &self.coverage
    }

    pub fn get(&self, x: u32, y: u32) -> f64 {
        self.coverage[(y as usize) * (self.width as usize) + x as usize]
    }

    #[cfg(test)]
    fn set(&mut self, x: u32, y: u32, v: f64) {
        self.coverage[(y as usize) * (self.width as usize) + x as usize] = v;
    }

    /// Total covered area in pixels.
    pub fn area(&self) -> f64 {
        self.coverage.iter().sum()
    }

    /// Coverage-weighted centroid in pixel coordinates, or `None` for an
    /// all-zero mask.
    pub fn centroid(&self) -> Option<(f64, f64)> {
        let mut sum = 0.0;
        let mut cx = 0.0;
        let mut cy = 0.0;
        for y in 0..self.height {
            for x in 0..self.width {
                let v = self.get(x, y);
                sum += v;
                cx += v * (x as f64 + 0.5);
                cy += v * (y as f64 + 0.5);
            }
        }
        if sum > 0.0 {
            Some((cx / sum, cy / sum))
        } else {
            None
        }
    }

    pub fn same_dims(&self, other: &Self) -> Result<(), ViewpointError> {
        if self.width != other.width || self.height != other.height {
            return Err(ViewpointError::DimensionMismatch {
                expected: (self.width, self.height),
                got: (other.width, other.height),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn values_clamped_on_construction() {
        let m = SilhouetteMask::new(2, 1, vec![-0.5, 1.5]).unwrap();
        assert_eq!(m.coverage(), &[0.0, 1.0]);
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(SilhouetteMask::new(2, 2, vec![0.0; 3]).is_err());
    }

    #[test]
    fn centroid_of_single_pixel() {
        let mut m = SilhouetteMask::zeros(4, 4);
        m.set(2, 1, 1.0);
        let (cx, cy) = m.centroid().unwrap();
        assert_eq!((cx, cy), (2.5, 1.5));
        assert_eq!(SilhouetteMask::zeros(4, 4).centroid(), None);
    }
}
