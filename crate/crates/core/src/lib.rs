//! Spectral-bound constants of the Coulomb-Dirac operator, rigorous
//! interval certification of the underlying inequalities, and numerical
//! checks on discretized partial-wave channels.

pub mod certify;
pub mod constants;
pub mod error;
pub mod special;
pub mod spectral;
pub mod symbols;

pub use error::{Error, Result};
