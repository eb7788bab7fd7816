//! Simulator-in-the-loop identification of rigid-body physics from
//! robot-object interaction trajectories.
//!
//! The crate is organized around the stages of a "control, hit, slide"
//! interaction episode:
//!
//! - [`geometry`] — rigid transforms, triangle meshes, surface point clouds,
//!   mass properties, and the ADD/ADD-S pose-distance metrics that score how
//!   well a simulated trajectory matches a recorded one.
//! - [`dynamics`] — the episode simulator: PD-controlled joint motion, impulse
//!   transfer at the hit, and planar sliding under Coulomb friction.
//! - [`optimize`] — a deterministic, seedable particle-swarm optimizer plus
//!   the objective bindings that identify object physics and controller gains
//!   against recorded data.
//! - [`viewpoint`] — silhouette rasterization under a pinhole camera and
//!   binary-cross-entropy mask matching for camera pose refinement.
//!
//! The crate is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature and enable `libm` to build without the standard library. All
//! operations are pure functions of their inputs: identical inputs and seeds
//! produce bitwise-identical outputs regardless of thread count.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("twin-ident-core requires either the `std` or the `libm` feature");

pub(crate) mod math;

pub mod dynamics;
pub mod geometry;
pub mod optimize;
pub mod viewpoint;

pub use math::{Mat3, Vec2, Vec3};
