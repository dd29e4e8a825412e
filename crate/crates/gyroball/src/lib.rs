//! Gyrogroup and gyrovector-space operations in the open ball.
//!
//! Two models of hyperbolic geometry live on the same ball: a
//! velocity-composition model whose geodesics are straight chords, and a
//! conformal model whose geodesics are circular arcs meeting the boundary
//! at right angles. This crate implements both, the doubling isomorphism
//! between them, the geometric constructions they support (gyrolines,
//! gyromidpoints, gyroparallelograms, boundary endpoints), and barycentric
//! coordinate machinery, all validated by identity-based property suites.

pub mod ball;
pub mod barycentric;
pub mod einstein;
pub mod error;
pub mod geometry;
pub mod gyration;
pub mod identities;
pub mod isomorphism;
pub mod mobius;
pub mod model;
pub mod scene;

pub use ball::{sample_ball, BallParams, BallPoint, TolerancePolicy};
pub use error::{GyroError, Result};
pub use gyration::GyrationMap;
pub use model::{GyroModel, ModelKind};
