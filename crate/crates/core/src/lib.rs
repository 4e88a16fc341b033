//! Numerical toolkit for averaged GL(3) x GL(2) shifted convolution sums.
//!
//! The crate is organised bottom-up:
//!
//! - [`arith`]: exact residues, Kloosterman/Ramanujan sums and sieves.
//! - [`coeff`]: Ramanujan `tau(n)` via NTT squaring of `eta^3`, coefficient
//!   tables, their on-disk cache and the coefficient-oracle trait.
//! - [`transforms`]: log-gamma, Bessel functions, smooth weights, Mellin
//!   transforms and the Mellin-Barnes Voronoi kernels.
//! - [`circle`]: Jutila's interval approximation, its exact L² defect and the
//!   Poisson h-sum check.
//! - [`voronoi`]: both sides of the GL(2), GL(3) and `d_3` Voronoi identities.
//! - [`lab`]: direct shifted convolution sums and cancellation experiments.

pub mod arith;
pub mod circle;
pub mod coeff;
pub mod config;
pub mod error;
pub mod lab;
pub mod transforms;
pub mod voronoi;

pub use error::{Error, Result};
