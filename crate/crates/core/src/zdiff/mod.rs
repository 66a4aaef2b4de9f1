//! Differential operators in `z` and the free algebra feeding both evaluation maps.

pub mod free;
pub mod op;

pub use free::{FreeElem, Letter, Word};
pub use op::DiffOpZ;
