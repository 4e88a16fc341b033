//! Mellin-Barnes transforms along vertical lines.
//!
//! For a weight `phi(x) = w(x / Y)` both `Phi_k` and `Omega_k` reduce to
//!
//! ```text
//! K_k(z) = (1 / 2 pi) int (pi^3 z)^{-s} R_k(s) w~(-s - k) dt,   s = sigma + i t,
//! ```
//!
//! with `z = y Y` and `R_k(s) = prod_j Gamma((1 + s + mu_j + 2k)/2) / Gamma((-s - mu_j)/2)`:
//! `Omega_k(y) = Y^{-k} K_k(yY)` and `Phi_k(y) = 2 pi i Y^{-k} K_k(yY)`.
//! So `Phi^{+-}(y) = 2 pi i Omega^{+-}(y)` when `mu = 0`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::gamma::log_gamma_unchecked;
use super::mellin::LogGridMellin;
use super::spectral::{ContourProfile, Gl3Params};
use super::weight::SmoothWeight;
use crate::error::{Error, Result};

const PI3: f64 = PI * PI * PI;

/// Which transform: the `d_3` kernel `Omega` or the GL(3) kernel `Phi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Transform {
    Omega,
    Phi(Gl3Params),
}

impl Transform {
    fn mu(&self) -> [Complex64; 3] {
        match self {
            Transform::Omega => [Complex64::new(0.0, 0.0); 3],
            Transform::Phi(p) => p.mu(),
        }
    }

    pub fn strip_lower(&self, k: u32) -> f64 {
        match self {
            Transform::Omega => -1.0 - 2.0 * k as f64,
            Transform::Phi(p) => p.strip_lower(k),
        }
    }

    /// Constant `c` with `transform_k(y) = c Y^{-k} K_k(yY)`.
    pub fn prefactor(&self) -> Complex64 {
        match self {
            Transform::Omega => Complex64::new(1.0, 0.0),
            Transform::Phi(_) => Complex64::new(0.0, 2.0 * PI),
        }
    }
}

/// `log R_k(s)`.
pub fn log_gamma_ratio(mu: &[Complex64; 3], k: u32, s: Complex64) -> Complex64 {
    mu.iter()
        .map(|&m| {
            log_gamma_unchecked((s + m + 1.0 + 2.0 * k as f64) * 0.5) - log_gamma_unchecked((-s - m) * 0.5)
        })
        .sum()
}

/// Samples of `R_k(s) w~(-s - k) h / 2 pi` along one truncated line.
#[derive(Clone, Debug)]
pub struct KernelLine {
    pub k: u32,
    pub sigma: f64,
    pub h: f64,
    pub t_max: f64,
    samples: Vec<Complex64>,
    l1: f64,
}

impl KernelLine {
    /// Builds the line with adaptive truncation height and step.
    ///
    /// `probe` is the range of `z` the caller will evaluate; step halving
    /// stops once `h` and `2h` agree there to `tolerance` times the `L^1`
    /// size of the integrand.
    pub fn build(
        transform: Transform,
        k: u32,
        weight: &SmoothWeight,
        profile: &ContourProfile,
        probe: (f64, f64),
    ) -> Result<Self> {
        profile.check(transform.strip_lower(k))?;
        let mu = transform.mu();
        let sigma = profile.sigma;
        let tol = profile.tolerance;
        let integrand_at = |mel: &LogGridMellin, t: f64| {
            let s = Complex64::new(sigma, t);
            let r = log_gamma_ratio(&mu, k, s).exp();
            r * mel.eval(-s - k as f64)
        };

        // truncation: grow T until the last 10% of the line is below tol * peak / 10
        let mut t_max = 250.0f64.min(profile.t_max);
        let coarse = 0.25;
        let (t_cut, mel) = loop {
            let mel = LogGridMellin::new(weight, t_max);
            let n = (t_max / coarse).ceil() as usize;
            let mags: Vec<f64> = (0..=n)
                .into_par_iter()
                .map(|i| {
                    let t = i as f64 * coarse;
                    integrand_at(&mel, t).norm().max(integrand_at(&mel, -t).norm())
                })
                .collect();
            let peak = mags.iter().cloned().fold(0.0, f64::max);
            let tail = mags[(n * 9) / 10..].iter().cloned().fold(0.0, f64::max);
            if tail <= tol * peak * 0.1 {
                let last = mags.iter().rposition(|&m| m > tol * peak * 0.1).unwrap_or(0);
                let t_cut = ((last + 1) as f64 * coarse * 1.1).max(20.0).min(t_max);
                let scaled = t_cut * profile.truncation_scale;
                if scaled > t_max {
                    break (scaled, LogGridMellin::new(weight, scaled));
                }
                break (scaled, mel);
            }
            if t_max >= profile.t_max {
                return Err(Error::ToleranceNotMet {
                    tol,
                    context: format!("integrand not decayed by |t| = {t_max} on Re s = {sigma}"),
                });
            }
            t_max = (2.0 * t_max).min(profile.t_max);
        };

        let mut h = 1.0 / profile.nodes_per_unit;
        let mut line = Self::sample(k, sigma, h, t_cut, &mel, &integrand_at);
        let probes = [probe.0, (probe.0 * probe.1).sqrt(), probe.1];
        for _ in 0..8 {
            let finer = Self::sample(k, sigma, h / 2.0, t_cut, &mel, &integrand_at);
            let ok = probes.iter().all(|&z| {
                let a = line.eval(z);
                let b = finer.eval(z);
                (a - b).norm() <= tol * finer.l1_at(z)
            });
            line = finer;
            h /= 2.0;
            if ok {
                return Ok(line);
            }
        }
        Err(Error::ToleranceNotMet {
            tol,
            context: format!("trapezoid step refinement did not settle on Re s = {sigma}"),
        })
    }

    fn sample<F>(k: u32, sigma: f64, h: f64, t_max: f64, mel: &LogGridMellin, f: &F) -> Self
    where
        F: Fn(&LogGridMellin, f64) -> Complex64 + Sync,
    {
        let n = (t_max / h).ceil() as usize;
        let samples: Vec<Complex64> = (0..=2 * n)
            .into_par_iter()
            .map(|j| f(mel, (j as f64 - n as f64) * h) * (h / (2.0 * PI)))
            .collect();
        let l1 = samples.iter().map(|z| z.norm()).sum();
        Self {
            k,
            sigma,
            h,
            t_max: n as f64 * h,
            samples,
            l1,
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `L^1` bound `(pi^3 z)^{-sigma} sum |samples|` on `|K_k(z)|`.
    pub fn l1_at(&self, z: f64) -> f64 {
        (PI3 * z).powf(-self.sigma) * self.l1
    }

    /// `K_k(z)` by direct summation.
    pub fn eval(&self, z: f64) -> Complex64 {
        let l = (PI3 * z).ln();
        let step = Complex64::from_polar(1.0, -self.h * l);
        let mut rot = Complex64::from_polar(1.0, self.t_max * l);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &g) in self.samples.iter().enumerate() {
            acc += g * rot;
            rot *= step;
            if j % 64 == 63 {
                // re-anchor the phase to stop drift
                let t = -self.t_max + (j + 1) as f64 * self.h;
                rot = Complex64::from_polar(1.0, -t * l);
            }
        }
        acc * (PI3 * z).powf(-self.sigma)
    }

    /// Tabulates `K_k` on a fine grid in `log(pi^3 z)` by one FFT.
    pub fn grid(&self, z_range: (f64, f64)) -> KernelGrid {
        let n0 = self.samples.len();
        let len = (n0 * 8).next_power_of_two();
        let mut buf = vec![Complex64::new(0.0, 0.0); len];
        buf[..n0].copy_from_slice(&self.samples);
        let fft = FftPlanner::new().plan_fft_forward(len);
        fft.process(&mut buf);
        let dl = 2.0 * PI / (len as f64 * self.h);
        let lo = (PI3 * z_range.0).ln();
        let hi = (PI3 * z_range.1).ln();
        let margin = 2 * INTERP_POINTS;
        let p_lo = (lo / dl).floor() as i64 - margin as i64;
        let p_hi = (hi / dl).ceil() as i64 + margin as i64;
        assert!(
            (p_hi - p_lo) < len as i64 / 2 && p_lo > -(len as i64) / 2 && p_hi < len as i64 / 2,
            "z range beyond the aliasing-free window of the grid"
        );
        let values = (p_lo..=p_hi)
            .map(|p| {
                let idx = p.rem_euclid(len as i64) as usize;
                let l = p as f64 * dl;
                buf[idx] * Complex64::from_polar(1.0, self.t_max * l)
            })
            .collect();
        KernelGrid {
            sigma: self.sigma,
            l0: p_lo as f64 * dl,
            dl,
            values: Arc::new(values),
        }
    }
}

const INTERP_POINTS: usize = 14;

/// `K_k` tabulated against `l = log(pi^3 z)`; evaluation by local Lagrange
/// interpolation on `INTERP_POINTS` nodes.
#[derive(Clone, Debug)]
pub struct KernelGrid {
    sigma: f64,
    l0: f64,
    dl: f64,
    values: Arc<Vec<Complex64>>,
}

impl KernelGrid {
    pub fn z_range(&self) -> (f64, f64) {
        let pad = (INTERP_POINTS + 1) as f64 * self.dl;
        let lo = self.l0 + pad;
        let hi = self.l0 + (self.values.len() as f64 - 1.0) * self.dl - pad;
        (lo.exp() / PI3, hi.exp() / PI3)
    }

    pub fn eval(&self, z: f64) -> Complex64 {
        let l = (PI3 * z).ln();
        let x = (l - self.l0) / self.dl;
        let base = x.floor() as isize - (INTERP_POINTS as isize / 2 - 1);
        assert!(
            base >= 0 && (base as usize + INTERP_POINTS) <= self.values.len(),
            "z = {z} outside the tabulated range"
        );
        let base = base as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut exact = None;
        // barycentric weights for equispaced nodes: (-1)^i binom(n-1, i)
        let mut weights_sum = 0.0;
        let mut binom = 1.0f64;
        for i in 0..INTERP_POINTS {
            let d = x - (base + i) as f64;
            if d == 0.0 {
                exact = Some(self.values[base + i]);
                break;
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let w = sign * binom / d;
            acc += self.values[base + i] * w;
            weights_sum += w;
            binom = binom * (INTERP_POINTS - 1 - i) as f64 / (i + 1) as f64;
        }
        let f = exact.unwrap_or(acc / weights_sum);
        f * (PI3 * z).powf(-self.sigma)
    }
}

/// The pair `(transform_0, transform_1)` of one weight and the `+-` combinations.
#[derive(Clone, Debug)]
pub struct TransformPair {
    pub transform: Transform,
    pub scale: f64,
    lines: [KernelLine; 2],
    grids: Option<[KernelGrid; 2]>,
}

impl TransformPair {
    /// Builds both lines with the profiles given; `z_range` bounds `yY`.
    pub fn new(
        transform: Transform,
        weight: &SmoothWeight,
        profiles: [ContourProfile; 2],
        z_range: (f64, f64),
    ) -> Result<Self> {
        let l0 = KernelLine::build(transform, 0, weight, &profiles[0], z_range)?;
        let l1 = KernelLine::build(transform, 1, weight, &profiles[1], z_range)?;
        Ok(Self {
            transform,
            scale: weight.scale,
            lines: [l0, l1],
            grids: None,
        })
    }

    pub fn standard(transform: Transform, weight: &SmoothWeight, z_range: (f64, f64), tol: f64) -> Result<Self> {
        let p = [
            ContourProfile::standard(0).with_tolerance(tol),
            ContourProfile::standard(1).with_tolerance(tol),
        ];
        Self::new(transform, weight, p, z_range)
    }

    /// Switches evaluation to FFT-tabulated kernels on `z_range`.
    pub fn tabulate(mut self, z_range: (f64, f64)) -> Self {
        self.grids = Some([self.lines[0].grid(z_range), self.lines[1].grid(z_range)]);
        self
    }

    pub fn line(&self, k: usize) -> &KernelLine {
        &self.lines[k]
    }

    /// `K_k(z)`, tabulated when available.
    pub fn kernel(&self, k: usize, z: f64) -> Complex64 {
        match &self.grids {
            Some(g) => g[k].eval(z),
            None => self.lines[k].eval(z),
        }
    }

    /// `transform_k(y)` (that is `Omega_k(y)` or `Phi_k(y)`).
    pub fn component(&self, k: usize, y: f64) -> Complex64 {
        self.transform.prefactor() * self.kernel(k, y * self.scale) * self.scale.powi(-(k as i32))
    }

    /// `(transform^+(y), transform^-(y))`.
    pub fn pm(&self, y: f64) -> (Complex64, Complex64) {
        let z = y * self.scale;
        let k0 = self.kernel(0, z);
        let k1 = self.kernel(1, z) / Complex64::new(0.0, PI3 * z);
        let c = self.transform.prefactor();
        (c * (k0 + k1), c * (k0 - k1))
    }
}

/// `(Omega^+(y), Omega^-(y))` of the weight, by direct line summation.
pub fn omega_pm(y: f64, weight: &SmoothWeight, profiles: [ContourProfile; 2]) -> Result<(Complex64, Complex64)> {
    let z = y * weight.scale;
    Ok(TransformPair::new(Transform::Omega, weight, profiles, (z, z))?.pm(y))
}

/// `(Phi^+(y), Phi^-(y))` of the weight for GL(3) parameters `params`.
pub fn phi_pm(
    y: f64,
    params: Gl3Params,
    weight: &SmoothWeight,
    profiles: [ContourProfile; 2],
) -> Result<(Complex64, Complex64)> {
    let z = y * weight.scale;
    Ok(TransformPair::new(Transform::Phi(params), weight, profiles, (z, z))?.pm(y))
}
