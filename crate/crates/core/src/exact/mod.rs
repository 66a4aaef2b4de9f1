//! Exact scalar, polynomial and rational-function arithmetic.

pub mod linalg;
mod modgcd;
pub mod poly;
pub mod rat;
pub mod ratfunc;
pub mod roots;

pub use poly::{pochhammer_poly, Poly};
pub use rat::{fmt_rat, parse_rat, pochhammer, rat, rint, Rat};
pub use ratfunc::RatFunc;
pub use roots::integer_roots;
