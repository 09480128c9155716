//! Planar ring central configurations.
//!
//! N equal masses on a circle of radius R around a central mass M rotate
//! rigidly at a rate Ω fixed by the ring's self-gravity. This crate computes
//! the ring sums behind every coefficient of that problem, the rotation rate
//! and its linearisation, collinear and noncollinear libration points, nested
//! two-ring (2N+1) configurations, and checks all of it by direct integration.
//!
//! Conventions: all forces are accelerations (per unit test mass); a test
//! particle sits at polar radius R + x and angle φ in the frame rotating with
//! the ring, whose particles occupy angles 2πk/N.

pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod libration;
pub mod ring_model;
pub mod ring_sums;
pub mod roots;
pub mod summation;
pub mod two_ring;

pub use error::{Error, Result};
pub use ring_model::{ForceSample, RingSystem, TestParticleState};
