//! Numerical toolkit for the polynomial Bohnenblust-Hille inequality on two
//! variables: exact-or-float homogeneous polynomial arithmetic, certified
//! sup norms on the square and the complex disk, the known extreme-point
//! families and extremal polynomial catalog, power-trick lower bounds on the
//! asymptotic constants, and grid certification of the scalar inequalities
//! behind the complex-to-real reduction.

pub mod bounds;
pub mod error;
pub mod extremals;
pub mod norms;
pub mod optimize;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use error::BhError;
pub use extremals::{catalog, CatalogEntry, CatalogId, ComplexQuad};
pub use norms::{CertifiedMax, CertifiedMax1, CertifiedMax2, MaxMethod};
pub use poly::{Edge, HomPoly2, UniPoly};
pub use scalar::{ArithMode, Scalar};
