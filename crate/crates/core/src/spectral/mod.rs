//! Discretized partial-wave channels: transforms, radial Dirac matrices,
//! Rayleigh quotients, Furry-picture counts and the virtual-level test.

pub mod angular;
pub mod bessel;
pub mod channel;
pub mod grid;
pub mod laplacian;
pub mod furry;
pub mod linalg;
pub mod potential;
pub mod rayleigh;
pub mod transforms;

pub use channel::{channel_operator, RadialOperatorMatrix};
pub use grid::{RadialGrid, Scheme};
