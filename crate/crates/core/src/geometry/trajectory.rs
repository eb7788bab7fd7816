//! Timestamped pose sequences.

use alloc::format;
use alloc::vec::Vec;

use super::{GeometryError, Pose};

/// Ordered sequence of (time, pose) samples with strictly increasing
/// timestamps; always holds at least one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct PoseTrajectory {
    samples: Vec<(f64, Pose)>,
}

impl PoseTrajectory {
    pub fn new(samples: Vec<(f64, Pose)>) -> Result<Self, GeometryError> {
        if samples.is_empty() {
            return Err(GeometryError::EmptyTrajectory);
        }
        for (i, w) in samples.windows(2).enumerate() {
            if !(w[1].0 > w[0].0) {
                return Err(GeometryError::NonIncreasingTime { index: i + 1 });
            }
        }
        Ok(Self { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[(f64, Pose)] {
        &self.samples
    }

    pub fn first(&self) -> &(f64, Pose) {
        &self.samples[0]
    }

    pub fn last(&self) -> &(f64, Pose) {
        self.samples.last().unwrap()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.0)
    }

    /// Pick, for each query time, the sample with the nearest timestamp
    /// (earlier sample wins ties). Query times must be strictly increasing.
    pub fn resample_nearest(&self, times: &[f64]) -> Result<Self, GeometryError> {
        if times.is_empty() {
            return Err(GeometryError::EmptyTrajectory);
        }
        let mut out = Vec::with_capacity(times.len());
        for (i, &t) in times.iter().enumerate() {
            if i > 0 && !(t > times[i - 1]) {
                return Err(GeometryError::NonIncreasingTime { index: i });
            }
            let idx = match self
                .samples
                .binary_search_by(|s| s.0.partial_cmp(&t).unwrap())
            {
                Ok(j) => j,
                Err(j) => {
                    if j == 0 {
                        0
                    } else if j == self.samples.len() {
                        j - 1
                    } else {
                        let before = t - self.samples[j - 1].0;
                        let after = self.samples[j].0 - t;
                        if after < before {
                            j
                        } else {
                            j - 1
                        }
                    }
                }
            };
            out.push((t, self.samples[idx].1));
        }
        Self::new(out)
    }

    /// Check that two trajectories share a clock: equal length, timestamps
    /// within `tol` seconds.
    pub fn same_clock(&self, other: &Self, tol: f64) -> Result<(), GeometryError> {
        if self.len() != other.len() {
            return Err(GeometryError::TrajectoryMismatch {
                message: format!("sample counts differ: {} vs {}", self.len(), other.len()),
            });
        }
        for (i, (a, b)) in self.samples.iter().zip(other.samples.iter()).enumerate() {
            if (a.0 - b.0).abs() > tol {
                return Err(GeometryError::TrajectoryMismatch {
                    message: format!("timestamps differ at sample {i}: {} vs {}", a.0, b.0),
                });
            }
        }
        Ok(())
    }
}
