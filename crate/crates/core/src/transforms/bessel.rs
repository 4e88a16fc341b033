//! Bessel functions of the first kind, and (feature `maass`) the
//! imaginary-order kernels of the Maass-form Voronoi transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::log_gamma_unchecked;
use super::quad::GaussLegendre;

const SERIES_LIMIT: f64 = 12.0;

/// `J_nu(x)` for real `nu >= 0` and `x >= 0`.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    assert!(nu >= 0.0 && x >= 0.0, "bessel_j needs nu, x >= 0");
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= SERIES_LIMIT || x * x < 0.1 * (nu + 1.0) {
        return series(nu, x);
    }
    if let Some(v) = hankel(nu, x) {
        return v;
    }
    integral(nu, x)
}

/// Ascending series; with `x <= 12` the largest term is below `1e4`.
pub fn series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = nu * half.ln() - log_gamma_unchecked(Complex64::new(nu + 1.0, 0.0)).re;
    let mut term = lead.exp();
    let mut sum = term;
    let q = half * half;
    for k in 1..200 {
        term *= -q / (k as f64 * (k as f64 + nu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) && k as f64 > q.sqrt() {
            break;
        }
    }
    sum
}

/// Hankel's expansion, or `None` when its smallest term is not below `1e-17`.
pub fn hankel(nu: f64, x: f64) -> Option<f64> {
    let (p, q) = hankel_pq(nu, x)?;
    let chi = x - (0.5 * nu + 0.25) * PI;
    Some((2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin()))
}

/// `J_nu(x_hi + x_lo)` for integer `nu`, where the argument is carried as
/// an unevaluated sum. For large arguments the phase `x - (nu/2 + 1/4) pi`
/// is formed without cancellation, so that rounding of `x` itself does not
/// enter as noise.
pub fn bessel_j_dd(nu: u32, x_hi: f64, x_lo: f64) -> f64 {
    let x = x_hi + x_lo;
    if x <= SERIES_LIMIT {
        return bessel_j(nu as f64, x);
    }
    let Some((p, q)) = hankel_pq(nu as f64, x) else {
        return bessel_j(nu as f64, x);
    };
    // (nu/2 + 1/4) pi = (2 nu + 1) pi / 4
    let k = (2 * nu + 1) % 8;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let (cp, sp) = match k {
        1 => (r, r),
        3 => (-r, r),
        5 => (-r, -r),
        7 => (r, -r),
        _ => unreachable!("2 nu + 1 is odd"),
    };
    let (sx, cx) = x_hi.sin_cos();
    // cos / sin of x_hi + x_lo to first order in x_lo
    let (c, s) = (cx - sx * x_lo, sx + cx * x_lo);
    let cos_chi = c * cp + s * sp;
    let sin_chi = s * cp - c * sp;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}

fn hankel_pq(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0f64;
    let mut k = 1;
    loop {
        let next = term * (mu - ((2 * k - 1) as f64).powi(2)) / (k as f64 * 8.0 * x);
        if next.abs() > term.abs() && k > 1 {
            return None;
        }
        term = next;
        // a_k / x^k enters P with sign (-1)^{k/2} (k even), Q with (-1)^{(k-1)/2} (k odd)
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
        k += 1;
        if k > 400 {
            return None;
        }
    }
    Some((p, q))
}

/// Bessel's integral representation by composite Gauss-Legendre.
pub fn integral(nu: f64, x: f64) -> f64 {
    let rule = GaussLegendre::standard();
    let panels = ((x + nu) / 3.0).ceil() as usize + 4;
    let main = rule.composite(|t| (nu * t - x * t.sin()).cos(), 0.0, PI, panels) / PI;
    let s = (nu * PI).sin();
    if s.abs() < 1e-15 {
        return main;
    }
    // e^{-x sinh t - nu t} is below 1e-18 past t_max
    let mut t_max = 1.0;
    while x * f64::sinh(t_max) + nu * t_max < 42.0 {
        t_max *= 1.5;
    }
    let tail = rule.composite(|t| (-x * t.sinh() - nu * t).exp(), 0.0, t_max, 64);
    main - s / PI * tail
}

/// `K_{i nu}(x) = int_0^inf e^{-x cosh t} cos(nu t) dt`.
#[cfg(feature = "maass")]
pub fn bessel_k_imag(nu: f64, x: f64) -> f64 {
    assert!(x > 0.0);
    let rule = GaussLegendre::standard();
    let mut t_max = 1.0;
    while x * t_max.cosh() < x + 45.0 {
        t_max += 0.5;
    }
    let panels = ((nu * t_max) / 2.0).ceil() as usize + 16;
    rule.composite(|t| (-x * (t.cosh() - 1.0)).exp() * (nu * t).cos(), 0.0, t_max, panels) * (-x).exp()
}

/// `Y_{i nu}(x) + Y_{-i nu}(x)` from
/// `(2/pi) int_0^pi sin(x sin th) cosh(nu th) dth
///   - (2/pi)(1 + cosh(pi nu)) int_0^inf cos(nu t) e^{-x sinh t} dt`.
#[cfg(feature = "maass")]
pub fn bessel_y_imag_pair(nu: f64, x: f64) -> f64 {
    assert!(x > 0.0);
    let rule = GaussLegendre::standard();
    let panels = ((x + nu) / 2.0).ceil() as usize + 8;
    let first = rule.composite(|th| (x * th.sin()).sin() * (nu * th).cosh(), 0.0, PI, panels);
    let mut t_max = 1.0;
    while x * t_max.sinh() < 45.0 {
        t_max += 0.5;
    }
    let panels = ((nu * t_max) / 2.0).ceil() as usize + 32;
    let second = rule.composite(|t| (nu * t).cos() * (-x * t.sinh()).exp(), 0.0, t_max, panels);
    2.0 / PI * first - 2.0 / PI * (1.0 + (PI * nu).cosh()) * second
}
