//! Global-best particle-swarm minimization.
//!
//! Deterministic by construction: all random draws happen on a single seeded
//! stream in a fixed order, objective evaluations are pure, and best-updates
//! are applied in particle-index order after each evaluation batch. The
//! [`Executor`] only decides *where* evaluations run, never their order of
//! appearance, so thread counts cannot change results.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::{OptimizeError, ParamBounds};
use crate::geometry::uniform_f64;

/// Swarm hyperparameters. The defaults are the standard constriction values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwarmConfig {
    pub particles: usize,
    pub iterations: usize,
    /// Inertia weight w.
    pub inertia: f64,
    /// Cognitive coefficient c1 (pull towards the particle's own best).
    pub cognitive: f64,
    /// Social coefficient c2 (pull towards the global best).
    pub social: f64,
    /// Velocity clamp as a fraction of each dimension's range.
    pub velocity_clamp: f64,
    pub seed: u64,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            particles: 32,
            iterations: 150,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            velocity_clamp: 0.5,
            seed: 0,
        }
    }
}

impl SwarmConfig {
    pub fn validate(&self) -> Result<(), OptimizeError> {
        let bad = |message: alloc::string::String| OptimizeError::InvalidConfig { message };
        if self.particles < 2 {
            return Err(bad(alloc::format!("particle count must be ≥ 2, got {}", self.particles)));
        }
        if self.iterations < 1 {
            return Err(bad(alloc::format!("iteration count must be ≥ 1")));
        }
        if !(0.0..=1.0).contains(&self.inertia) {
            return Err(bad(alloc::format!("inertia must be in [0, 1], got {}", self.inertia)));
        }
        if !(self.cognitive > 0.0) || !(self.social > 0.0) {
            return Err(bad(alloc::format!("cognitive and social coefficients must be > 0")));
        }
        if !(self.velocity_clamp > 0.0) {
            return Err(bad(alloc::format!("velocity clamp must be > 0")));
        }
        Ok(())
    }
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    /// Best parameter vector found.
    pub best: Vec<f64>,
    /// Loss at `best`; equals the last entry of `history`.
    pub best_loss: f64,
    /// Global-best loss after each iteration (non-increasing).
    pub history: Vec<f64>,
    /// Total objective evaluations performed.
    pub evaluations: usize,
}

/// Strategy for running a batch of independent objective evaluations.
///
/// `map` must return `f(0), f(1), …, f(n-1)` in index order; implementations
/// may compute them in any order or in parallel since `f` is pure.
pub trait Executor: Sync {
    fn map(&self, n: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64>;
}

/// Single-threaded executor; the `no_std` default.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map(&self, n: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
        (0..n).map(f).collect()
    }
}

/// Minimize `objective` over `bounds` with global-best PSO.
///
/// Non-finite losses are treated as +∞; if every particle of the first
/// iteration is non-finite the run aborts with
/// [`OptimizeError::AllNonFinite`]. Positions are initialized by seeded
/// Latin-hypercube sampling and kept inside the bounds by reflection.
pub fn pso_minimize<F>(
    objective: F,
    bounds: &ParamBounds,
    config: &SwarmConfig,
    executor: &dyn Executor,
) -> Result<OptResult, OptimizeError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate()?;
    let dims = bounds.len();
    let n = config.particles;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    // Latin hypercube: one stratum per particle and dimension.
    let mut positions = alloc::vec![alloc::vec![0.0f64; dims]; n];
    for d in 0..dims {
        let mut strata: Vec<usize> = (0..n).collect();
        // Fisher-Yates on the seeded stream.
        for i in (1..n).rev() {
            let j = (uniform_f64(&mut rng) * (i + 1) as f64) as usize;
            strata.swap(i, j.min(i));
        }
        let (lo, hi) = (bounds.lower(d), bounds.upper(d));
        let width = (hi - lo) / n as f64;
        for (p, pos) in positions.iter_mut().enumerate() {
            pos[d] = lo + (strata[p] as f64 + uniform_f64(&mut rng)) * width;
        }
    }
    let mut velocities = alloc::vec![alloc::vec![0.0f64; dims]; n];
    let vmax: Vec<f64> = (0..dims)
        .map(|d| config.velocity_clamp * bounds.range(d))
        .collect();

    let sanitize = |loss: f64| if loss.is_finite() { loss } else { f64::INFINITY };
    let eval = |positions: &[Vec<f64>]| -> Vec<f64> {
        executor
            .map(positions.len(), &|i| objective(&positions[i]))
            .into_iter()
            .map(sanitize)
            .collect()
    };

    let mut losses = eval(&positions);
    let mut evaluations = n;
    if losses.iter().all(|l| l.is_infinite()) {
        return Err(OptimizeError::AllNonFinite);
    }

    let mut pbest = positions.clone();
    let mut pbest_loss = losses.clone();
    let mut gbest_idx = 0;
    for i in 1..n {
        if pbest_loss[i] < pbest_loss[gbest_idx] {
            gbest_idx = i;
        }
    }
    let mut gbest = pbest[gbest_idx].clone();
    let mut gbest_loss = pbest_loss[gbest_idx];

    let mut history = Vec::with_capacity(config.iterations);
    history.push(gbest_loss);

    for _ in 1..config.iterations {
        for (p, pos) in positions.iter_mut().enumerate() {
            for d in 0..dims {
                let r1 = uniform_f64(&mut rng);
                let r2 = uniform_f64(&mut rng);
                let v = config.inertia * velocities[p][d]
                    + config.cognitive * r1 * (pbest[p][d] - pos[d])
                    + config.social * r2 * (gbest[d] - pos[d]);
                let v = v.clamp(-vmax[d], vmax[d]);
                let (x, flipped) = bounds.reflect(d, pos[d] + v);
                velocities[p][d] = if flipped { -v } else { v };
                pos[d] = x;
            }
        }

        losses = eval(&positions);
        evaluations += n;

        for p in 0..n {
            if losses[p] < pbest_loss[p] {
                pbest_loss[p] = losses[p];
                pbest[p].clone_from(&positions[p]);
            }
            if losses[p] < gbest_loss {
                gbest_loss = losses[p];
                gbest.clone_from(&positions[p]);
            }
        }
        history.push(gbest_loss);
    }

    debug_assert!(history.windows(2).all(|w| w[1] <= w[0]));
    Ok(OptResult {
        best: gbest,
        best_loss: gbest_loss,
        history,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn sphere_converges() {
        let bounds = ParamBounds::new(vec![(-5.0, 5.0); 3]).unwrap();
        let config = SwarmConfig {
            iterations: 200,
            ..SwarmConfig::default()
        };
        let out = pso_minimize(sphere, &bounds, &config, &Sequential).unwrap();
        assert!(out.best_loss < 1e-6, "best loss {}", out.best_loss);
        assert_eq!(out.evaluations, 200 * 32);
    }

    #[test]
    fn history_is_non_increasing() {
        let bounds = ParamBounds::new(vec![(-5.0, 5.0); 4]).unwrap();
        for seed in 0..5 {
            let config = SwarmConfig {
                seed,
                iterations: 60,
                ..SwarmConfig::default()
            };
            let out = pso_minimize(sphere, &bounds, &config, &Sequential).unwrap();
            assert!(out.history.windows(2).all(|w| w[1] <= w[0]));
            assert_eq!(*out.history.last().unwrap(), out.best_loss);
        }
    }

    #[test]
    fn minimum_at_bound_edge_is_reached() {
        // Minimum of (x − 7)² over [−5, 5] sits at the upper bound.
        let bounds = ParamBounds::new(vec![(-5.0, 5.0)]).unwrap();
        let config = SwarmConfig {
            iterations: 200,
            ..SwarmConfig::default()
        };
        let out = pso_minimize(|x| (x[0] - 7.0) * (x[0] - 7.0), &bounds, &config, &Sequential)
            .unwrap();
        assert!((out.best[0] - 5.0).abs() < 1e-4, "best {}", out.best[0]);
    }

    #[test]
    fn same_seed_same_result() {
        let bounds = ParamBounds::new(vec![(-2.0, 3.0); 2]).unwrap();
        let config = SwarmConfig {
            seed: 11,
            iterations: 50,
            ..SwarmConfig::default()
        };
        let a = pso_minimize(sphere, &bounds, &config, &Sequential).unwrap();
        let b = pso_minimize(sphere, &bounds, &config, &Sequential).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn particles_stay_in_bounds() {
        // Objective asserts the invariant on every evaluation.
        let bounds = ParamBounds::new(vec![(-1.0, 2.0), (0.5, 0.5), (3.0, 9.0)]).unwrap();
        let b2 = bounds.clone();
        let config = SwarmConfig {
            iterations: 80,
            ..SwarmConfig::default()
        };
        pso_minimize(
            move |x| {
                assert!(b2.contains(x), "particle escaped: {x:?}");
                sphere(x)
            },
            &bounds,
            &config,
            &Sequential,
        )
        .unwrap();
    }

    #[test]
    fn all_non_finite_first_iteration_errors() {
        let bounds = ParamBounds::new(vec![(-1.0, 1.0)]).unwrap();
        let out = pso_minimize(|_| f64::NAN, &bounds, &SwarmConfig::default(), &Sequential);
        assert_eq!(out.unwrap_err(), OptimizeError::AllNonFinite);
    }

    #[test]
    fn partial_non_finite_is_tolerated() {
        // NaN on half the domain must not poison the run.
        let bounds = ParamBounds::new(vec![(-1.0, 1.0)]).unwrap();
        let out = pso_minimize(
            |x| if x[0] < 0.0 { f64::NAN } else { x[0] * x[0] },
            &bounds,
            &SwarmConfig::default(),
            &Sequential,
        )
        .unwrap();
        assert!(out.best_loss < 1e-6);
    }
}
