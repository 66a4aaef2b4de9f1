pub mod bispectral;
pub mod cli;
pub mod darboux;
pub mod error;
pub mod example;
pub mod exact;
pub mod jacobi;
pub mod json;
pub mod ndiff;
pub mod params;
pub mod series;
pub mod zdiff;

pub use error::{Error, Result};
pub use params::ParamSet;
