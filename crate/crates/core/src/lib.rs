//! Condition numbers of analytic Toeplitz matrices.
//!
//! Builds `T_r = b_r(Mₙ)` through the functional calculus of the nilpotent
//! Jordan block, checks `max(rⁿ, 1 − rⁿ) ≤ rⁿ‖T_r⁻¹‖ ≤ 1`, constructs the
//! Kronecker-extremal model operators of finite Blaschke products and
//! searches for large `‖T⁻¹‖` among analytic Toeplitz contractions.

pub mod blaschke;
pub mod bounds;
pub mod error;
pub mod linalg;
pub mod model;
pub mod search;
pub mod toeplitz;

pub use error::{Error, Result};
pub use linalg::{ComplexScalar, DenseMatrix};
pub use num_complex::Complex64;
