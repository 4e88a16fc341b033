//! Complex log-gamma.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_{2j} / (2j (2j - 1))` for `j = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const SHIFT_TO: f64 = 15.0;

/// `log Gamma(z)`, the branch that is real on the positive axis and
/// continuous off the negative real axis.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(z.re));
    }
    Ok(log_gamma_unchecked(z))
}

/// As [`log_gamma_complex`] without the pole check (returns inf/NaN there).
pub fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    let half_log_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (w - 0.5) * w.ln() - w + half_log_2pi + series - shift
}

pub fn gamma_real(x: f64) -> Result<f64> {
    let lg = log_gamma_complex(Complex64::new(x, 0.0))?;
    Ok(lg.exp().re)
}
