//! Certified two-sided bounds for `acos` built from the generalized Carlson
//! inequality family, with a monotonicity classifier for the family and a
//! verification harness backed by an MPFR oracle.

// `!(a > b)` is used on purpose so that NaN counts as a failed comparison.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod classifier;
pub mod error;
pub mod family;
pub mod oracle;
pub mod scalar;
pub mod verifier;

pub use error::{Error, Result};
pub use family::{EvalPoint, Params, Precision};
pub use scalar::{Hp, Real};

pub type Params64 = Params<f64>;
pub type Params32 = Params<f32>;
pub type ParamsHp = Params<Hp>;
