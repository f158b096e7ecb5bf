//! Polarities with respect to a simplex of a projective space.
//!
//! Four constructions send a generic point to a hyperplane and back:
//! the frame polarity (dual frames), the harmonic polarity (ruler
//! constructions), the last polarity of the product of the faces (algebraic),
//! and the convex polarity (barycenters and Santaló points). They agree for
//! every generic point; the crate computes each one independently so the
//! agreement can be checked exactly.

pub mod algebraic;
pub mod convex;
pub mod error;
pub mod frame;
pub mod harmonic;
pub mod linalg;
pub mod polars;
pub mod projective;
pub mod sampling;
pub mod scalar;

pub use convex::ConvexPolytope;
pub use error::{Error, Result};
pub use projective::{AffineChart, Homogeneous, LineValue, ProjHyperplane, ProjPoint, Simplex};
pub use scalar::{Rational, Scalar};
