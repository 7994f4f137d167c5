//! Exact-arithmetic laboratory for twisted endoscopy of `GL_N` over a p-adic
//! field: truncated local-field arithmetic, the outer involution θ, Cayley
//! transforms, Moy–Prasad filtrations on the standard apartment, affine-root
//! alcove data, and the θ-twisted conjugacy descent.
//!
//! Everything is computed exactly to a tracked precision. Any result that
//! cannot be decided at the available precision is reported as
//! [`Error::PrecisionExhausted`], never silently as `false`.

pub mod building;
pub mod cayley;
pub mod error;
pub mod fp;
pub mod lattice;
pub mod local_field;
pub mod matrix;
pub mod rational;
pub mod sampling;
pub mod suites;
pub mod twisted;

pub use error::{Error, Result};
pub use local_field::{ExtensionKind, LocalField, PadicScalar, ResidueElem};
pub use matrix::PadicMatrix;
pub use rational::Q;
