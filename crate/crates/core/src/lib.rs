//! Bisectors, shadow boundaries and radial projections of centrally
//! symmetric convex bodies in low-dimensional normed spaces.
//!
//! A centrally symmetric convex body `K` in `E^n` induces a norm (its gauge
//! function), and every boundary point `x` splits the unit sphere into three
//! parts: the radial projection of the bisector of `-x` and `x`, and the two
//! open regions strictly closer to one of the endpoints.  This crate
//! evaluates gauges and support functions for a small family of bodies,
//! classifies directions against the bisector, computes the shadow boundary
//! and the chord-midpoint locus, maps bisector points into the unit ball
//! (the bounded representation), and runs mesh-based topology probes over
//! the whole sphere.
//!
//! All numeric kernels are generic over the scalar type via [`Real`];
//! concrete aliases for `f64` are exported at the crate root.

pub mod bisector;
pub mod body;
pub mod error;
pub mod linalg;
pub mod ortho;
mod real;
pub mod shadow;
pub mod topology;
pub mod verify;

pub use bisector::{
    BisectorPoint, RayClassification, RayLabel, ScanParams, SolutionInterval,
};
pub use body::{BodySpec, ConvexBody, Tolerances, ValidationReport};
pub use error::Error;
pub use real::Real;
pub use shadow::{BoundedRepresentation, Chord, GridParams};
pub use topology::LabeledMesh;

/// Convex body oracle over `f64`.
pub type Body64 = ConvexBody<f64>;
/// Convex body oracle over `f32`.
pub type Body32 = ConvexBody<f32>;
/// Labeled sphere mesh over `f64`.
pub type Mesh64 = LabeledMesh<f64>;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
