//! Box bounds of the search domain.

use alloc::format;
use alloc::vec::Vec;

use super::OptimizeError;

/// Per-dimension `[lower, upper]` bounds in the parameter's native units.
///
/// A degenerate dimension (`lower == upper`) pins the parameter to a single
/// value; `lower > upper` is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamBounds {
    dims: Vec<(f64, f64)>,
}

impl ParamBounds {
    pub fn new(dims: Vec<(f64, f64)>) -> Result<Self, OptimizeError> {
        if dims.is_empty() {
            return Err(OptimizeError::InvalidConfig {
                message: format!("bounds need at least one dimension"),
            });
        }
        for (i, &(lo, hi)) in dims.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(OptimizeError::InvalidConfig {
                    message: format!("dimension {i}: invalid bounds [{lo}, {hi}]"),
                });
            }
        }
        Ok(Self { dims })
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[(f64, f64)] {
        &self.dims
    }

    pub fn lower(&self, d: usize) -> f64 {
        self.dims[d].0
    }

    pub fn upper(&self, d: usize) -> f64 {
        self.dims[d].1
    }

    pub fn range(&self, d: usize) -> f64 {
        self.dims[d].1 - self.dims[d].0
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dims.len()
            && x.iter()
                .zip(self.dims.iter())
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    pub fn expect_arity(&self, expected: usize) -> Result<(), OptimizeError> {
        if self.len() != expected {
            return Err(OptimizeError::ArityMismatch {
                expected,
                got: self.len(),
            });
        }
        Ok(())
    }

    /// Fold a coordinate back into `[lo, hi]` by reflection, as if the walls
    /// were mirrors. Returns the folded value and whether the velocity
    /// direction flips (the fold landed on a descending segment of the
    /// triangle wave).
    pub fn reflect(&self, d: usize, x: f64) -> (f64, bool) {
        let (lo, hi) = self.dims[d];
        let range = hi - lo;
        if range == 0.0 {
            return (lo, false);
        }
        if x >= lo && x <= hi {
            return (x, false);
        }
        // Triangle-wave fold with period 2·range.
        let t = rem_euclid(x - lo, 2.0 * range);
        if t <= range {
            (lo + t, false)
        } else {
            (hi - (t - range), true)
        }
    }
}

/// `a mod b` with a non-negative result; `b > 0`.
#[inline]
fn rem_euclid(a: f64, b: f64) -> f64 {
    let r = a % b;
    if r < 0.0 {
        r + b
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_inverted_bounds() {
        assert!(ParamBounds::new(vec![(1.0, 0.0)]).is_err());
        assert!(ParamBounds::new(vec![]).is_err());
        assert!(ParamBounds::new(vec![(0.0, 0.0)]).is_ok());
    }

    #[test]
    fn reflection_folds_back_inside() {
        let b = ParamBounds::new(vec![(0.0, 1.0)]).unwrap();
        let (x, flipped) = b.reflect(0, 1.25);
        assert!((x - 0.75).abs() < 1e-12);
        assert!(flipped);
        let (x, flipped) = b.reflect(0, -0.25);
        assert!((x - 0.25).abs() < 1e-12);
        assert!(flipped);
        let (x, flipped) = b.reflect(0, 0.5);
        assert_eq!(x, 0.5);
        assert!(!flipped);
        // Two reflections land back travelling the original direction.
        let (x, flipped) = b.reflect(0, 2.3);
        assert!((x - 0.3).abs() < 1e-12);
        assert!(!flipped);
        // Far excursions stay inside.
        for &v in &[17.3, -9.8, 103.0] {
            let (x, _) = b.reflect(0, v);
            assert!((0.0..=1.0).contains(&x), "{v} folded to {x}");
        }
    }

    #[test]
    fn degenerate_dimension_pins_value() {
        let b = ParamBounds::new(vec![(0.7, 0.7)]).unwrap();
        assert_eq!(b.reflect(0, 12.0).0, 0.7);
    }
}
