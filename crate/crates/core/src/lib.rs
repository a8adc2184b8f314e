//! High-precision Stieltjes constants.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod finite_diff;
pub mod mp;
pub mod norlund_rice;
pub mod quadrature;
pub mod saddle;
pub mod zeta;

pub use error::{Error, Result};
