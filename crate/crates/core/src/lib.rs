//! Exact linear algebra for multiply symplectic Grassmannians.
//!
//! The crate computes tangent-space dimensions of the locus of `k`-planes that
//! are isotropic for several symplectic forms at once, decides when a pencil
//! of two forms degenerates on a point, checks that criterion against the
//! tangent computation by exhaustive enumeration over small prime fields, and
//! evaluates the rank-two Brill-Noether expected-dimension formulas.

pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod numerology;
pub mod rng;
pub mod scan;
pub mod symplectic;
pub mod tangent;

pub use error::{Error, Result};
pub use field::{FieldScalar, FieldSpec};
pub use matrix::{BinaryForm, Matrix, Poly};
pub use numerology::{BNParams, RhoVariant};
pub use scan::{ScanConfig, ScanSummary};
pub use symplectic::{FormSpace, Subspace, SymplecticForm};
pub use tangent::{PointContext, TangentReport};
