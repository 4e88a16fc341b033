//! Spectral data of the automorphic forms and contour descriptions.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Luo-Rudnick-Sarnak: `|Re mu_j| <= 1/2 - 1/10`.
pub const LRS_BOUND: f64 = 0.5 - 0.1;

/// Langlands parameters `mu_1 + mu_2 + mu_3 = 0` of an `SL(3, Z)` form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gl3Params {
    mu: [Complex64; 3],
}

impl Gl3Params {
    pub fn new(mu: [Complex64; 3]) -> Result<Self> {
        let sum = mu[0] + mu[1] + mu[2];
        if sum.norm() > 1e-12 {
            return Err(Error::InvalidArgument(format!("mu_1 + mu_2 + mu_3 = {sum}, expected 0")));
        }
        if let Some(m) = mu.iter().find(|m| m.re.abs() > LRS_BOUND + 1e-15) {
            return Err(Error::InvalidArgument(format!("|Re mu| = {} exceeds 1/2 - 1/10", m.re.abs())));
        }
        Ok(Self { mu })
    }

    /// From the type `(nu_1, nu_2)`: `mu = (-nu1 - 2 nu2 + 1, -nu1 + nu2, 2 nu1 + nu2 - 1)`.
    pub fn from_type(nu1: Complex64, nu2: Complex64) -> Result<Self> {
        Self::new([-nu1 - nu2 * 2.0 + 1.0, -nu1 + nu2, nu1 * 2.0 + nu2 - 1.0])
    }

    /// The parameters of the `d_3` (minimal Eisenstein) case.
    pub fn zero() -> Self {
        Self { mu: [Complex64::new(0.0, 0.0); 3] }
    }

    pub fn mu(&self) -> [Complex64; 3] {
        self.mu
    }

    /// Lower end of the legal abscissae for `Phi_k`: `max_j (-1 - Re mu_j - 2k)`.
    pub fn strip_lower(&self, k: u32) -> f64 {
        self.mu
            .iter()
            .map(|m| -1.0 - m.re - 2.0 * k as f64)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralParams {
    Gl3(Gl3Params),
    /// Holomorphic cusp form of even weight `k`.
    Gl2Holomorphic { k: u32 },
    /// Maass cusp form with Laplace eigenvalue `1/4 + mu^2`.
    Gl2Maass { mu: f64 },
}

impl SpectralParams {
    pub fn holomorphic(k: u32) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::InvalidArgument(format!("holomorphic weight must be even and >= 2, got {k}")));
        }
        Ok(Self::Gl2Holomorphic { k })
    }

    /// The discriminant form `Delta`.
    pub fn delta() -> Self {
        Self::Gl2Holomorphic { k: 12 }
    }
}

/// A vertical line `Re s = sigma` truncated at `|Im s| <= t_max`, sampled
/// at `nodes_per_unit` points per unit height before adaptive refinement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourProfile {
    pub sigma: f64,
    pub t_max: f64,
    pub nodes_per_unit: f64,
    pub tolerance: f64,
    /// Multiplies the truncation height chosen from `tolerance`.
    pub truncation_scale: f64,
}

impl ContourProfile {
    pub fn new(sigma: f64) -> Self {
        Self {
            sigma,
            t_max: 16_000.0,
            nodes_per_unit: 10.0,
            tolerance: 1e-12,
            truncation_scale: 1.0,
        }
    }

    /// The default line for index `k`: `sigma = -1/2 - k`, where the gamma
    /// ratio of the `d_3` kernel neither grows nor decays.
    pub fn standard(k: u32) -> Self {
        Self::new(-0.5 - k as f64)
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        self.t_max = t_max;
        self
    }

    pub fn with_truncation_scale(mut self, scale: f64) -> Self {
        self.truncation_scale = scale;
        self
    }

    pub fn check(&self, lower: f64) -> Result<()> {
        if self.sigma > lower && self.t_max > 0.0 && self.nodes_per_unit > 0.0 && self.tolerance > 0.0 && self.truncation_scale > 0.0 {
            Ok(())
        } else {
            Err(Error::ContourViolation {
                sigma: self.sigma,
                bound: lower,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl3_invariants() {
        let c = |re, im| Complex64::new(re, im);
        assert!(Gl3Params::new([c(0.1, 2.0), c(-0.1, -1.0), c(0.0, -1.0)]).is_ok());
        assert!(Gl3Params::new([c(0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
        assert!(Gl3Params::new([c(0.45, 0.0), c(-0.45, 0.0), c(0.0, 0.0)]).is_err());
        // tempered type (1/3, 1/3) + i(a, b) gives purely imaginary mu
        let p = Gl3Params::from_type(c(1.0 / 3.0, 0.5), c(1.0 / 3.0, 0.25)).unwrap();
        assert!(p.mu().iter().all(|m| m.re.abs() < 1e-15));
        assert_eq!(Gl3Params::zero().strip_lower(0), -1.0);
        assert_eq!(Gl3Params::zero().strip_lower(1), -3.0);
    }

    #[test]
    fn contour_checks() {
        assert!(ContourProfile::standard(0).check(-1.0).is_ok());
        assert!(matches!(
            ContourProfile::new(-1.2).check(-1.0),
            Err(Error::ContourViolation { .. })
        ));
        assert!(SpectralParams::holomorphic(11).is_err());
    }
}
