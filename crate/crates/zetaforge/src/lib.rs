//! Twisted Selberg zeta functions for Schottky-type and cusped ping-pong
//! Fuchsian groups, computed by two independent routes:
//!
//! * truncated Euler products over hyperbolic conjugacy classes, and
//! * Fredholm determinants of discretized twisted transfer operators,
//!
//! together with the Lerch-transcendent machinery that continues the
//! operator family beyond its half-plane of convergence.

pub mod catalog;
pub mod lerch;
pub mod linalg;
pub mod moebius;
pub mod representation;
pub mod resonance;
pub mod spec_io;
pub mod symbolic;
pub mod transfer;
pub mod zeta;

pub use num_complex::Complex64;
