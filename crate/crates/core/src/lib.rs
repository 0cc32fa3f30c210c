//! Orthogonal polynomials on triangles with the cubic bubble weight, intersections of their
//! degree-`n` complement spaces over adjacent triangles and triangle patches, and the
//! constants governing the patch projection onto lower-degree piecewise polynomials.
//!
//! Every algebraic routine is generic over [`Scalar`]: use [`Rational`] for exact verification
//! and `f64` for sweeps.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod intersection;
pub mod jacobi;
pub mod linalg;
pub mod orthobasis;
pub mod polynomial;
pub mod projection;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Mode, Rational, Scalar};
