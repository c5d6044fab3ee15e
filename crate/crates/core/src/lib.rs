//! Sampling trajectory and manifold sets for bandlimited fields.
//!
//! The crate decides whether unions of uniform line or hyperplane sets
//! determine every field with a given convex spectral support, computes path
//! and manifold densities, builds minimum-density designs and reconstructs
//! finite trigonometric fields exactly from their samples.

pub mod design;
pub mod error;
pub mod field;
pub mod geometry;
pub mod lattice;
pub mod nyquist;
pub mod trajectory;
pub(crate) mod linalg;

pub use error::{Error, Result};
pub use geometry::{ConvexBody, Direction, Halfspace};
pub use trajectory::{TrajectorySet, Window};
pub use nyquist::{NyquistVerdict, Status};
pub use field::AtomField;
