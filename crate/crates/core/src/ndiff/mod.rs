//! The algebra of difference operators in `n`, extended by `σ = (−1)ⁿ`.

pub mod op;
pub mod signed;

pub use op::{integer_poles, integer_zeros, DiffOp, Irregularity};
pub use signed::{signed_det, signed_solve, SignedRatFunc};
