//! Special functions, smooth weights and the Voronoi integral transforms.

pub mod bessel;
pub mod constants;
pub mod contour;
pub mod cutoff;
pub mod gamma;
pub mod gl2;
pub mod jet;
pub mod mellin;
pub mod quad;
pub mod spectral;
pub mod weight;

pub use bessel::bessel_j;
pub use constants::{constants, euler_gamma, stieltjes_gamma1};
pub use contour::{omega_pm, phi_pm, KernelGrid, KernelLine, Transform, TransformPair};
pub use cutoff::{dual_cutoff, dual_cutoff_real, CutoffKind, CutoffParams};
pub use quad::{adaptive, adaptive_complex, adaptive_complex_panels, GaussLegendre};
pub use gamma::log_gamma_complex;
pub use gl2::{psi_pm, Gl2Kernel};
pub use mellin::{mellin, mellin_log_moment, mellin_unit, LogGridMellin};
pub use spectral::{ContourProfile, Gl3Params, SpectralParams};
pub use weight::{smoothstep, Shape, SmoothWeight};
