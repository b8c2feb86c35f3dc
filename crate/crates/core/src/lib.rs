pub mod analytic;
pub mod cli;
pub mod config;
pub mod couplings;
pub mod emit;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod magnon;
pub mod presets;
pub mod scattering;
pub mod scenario;
pub mod units;
pub mod validate;

pub use error::{Error, Result};
