//! Tridiagonal pencils `zJ - H` with `J` real symmetric and `H` Hermitian:
//! three-term recurrences, m-functions and resolvents, and reconstruction of
//! the trailing part of `H` from two eigenvalues and eigenvector tails.

pub mod cli;
pub mod dense;
pub mod error;
pub mod giep;
pub mod io;
pub mod oracle;
pub mod pencil;
pub mod recurrence;
pub mod resolvent;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use giep::{solve, GiepInstance, ReconstructionResult};
pub use pencil::{HermitianTridiagonal, Pencil, RealPolynomial, SymmetricTridiagonal};
