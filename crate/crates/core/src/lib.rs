//! Computational shadow of the vector-bundle proof of Poncelet's closure
//! theorem.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: exact rational and complex floating scalars, tolerances,
//!   rank and kernels.
//! * [`projective`]: points, lines, conics, duality, transforms and the
//!   canonical frame in which the tangent line at parameter `(u:v)` is
//!   literally `(u², uv, v²)`.
//! * [`forms`]: binary forms (sections, divisors of tangency parameters) and
//!   ternary forms (plane curves), root finding and pseudo-division by the
//!   point quadric `x0 u² + x1 uv + x2 v²`.
//! * [`schwarzenberger`]: the banded matrix `M`, section vanishing tests,
//!   zero loci (complete gons) and determinant curves of pencils.
//! * [`closure`]: the tangent-chord iteration oracle, Darboux completion and
//!   the porism pencil with its incidence certificate.

pub mod closure;
pub mod error;
pub mod forms;
pub mod numeric;
pub mod projective;
pub mod schwarzenberger;

pub use error::{Error, Result};
pub use numeric::{Backend, Exact, Float, Scalar, Tolerance};
