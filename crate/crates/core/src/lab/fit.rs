use crate::arith::CompensatedSum;
use crate::coeff::CoefficientTable;
use crate::error::{Error, Result};

/// Least squares line through `(log X, log value)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the residuals in log space.
    pub residual: f64,
}

pub fn exponent_fit(points: &[(f64, f64)]) -> Result<Fit> {
    if points.len() < 3 {
        return Err(Error::DegenerateFit(format!("need at least 3 points, got {}", points.len())));
    }
    if let Some(&(x, v)) = points.iter().find(|&&(x, v)| !(x > 0.0 && v > 0.0)) {
        return Err(Error::DegenerateFit(format!("nonpositive point ({x}, {v})")));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, v)| (x.ln(), v.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all X coincide".into()));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = logs.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(Fit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
    })
}

/// Smooth sums `sum_n lambda(n) F(n/X)` and the fitted growth exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct BookerFit {
    /// `(X, |sum|, rounding floor)` per grid point.
    pub points: Vec<(f64, f64, f64)>,
    /// `None` when fewer than three sums stand clear of their rounding floor.
    pub fit: Option<Fit>,
}

impl BookerFit {
    /// Slope of the fit, or `-inf` when the sums decayed to the noise floor.
    pub fn slope(&self) -> f64 {
        self.fit.map_or(f64::NEG_INFINITY, |f| f.slope)
    }
}

/// Sums above `FLOOR_MARGIN` times their rounding floor enter the fit.
const FLOOR_MARGIN: f64 = 100.0;

/// `F` is supported on `support` and evaluated at `n/X`.
pub fn booker_decay<F>(coeffs: &CoefficientTable, f: F, support: (f64, f64), xs: &[f64]) -> Result<BookerFit>
where
    F: Fn(f64) -> f64,
{
    let values = coeffs.values()?;
    let mut points = Vec::with_capacity(xs.len());
    for &x in xs {
        let lo = ((support.0 * x).ceil() as usize).max(1);
        let hi = (support.1 * x).floor() as usize;
        coeffs.require(hi)?;
        let mut acc = CompensatedSum::new();
        let mut abs = 0.0;
        for n in lo..=hi {
            let t = values[n] * f(n as f64 / x);
            acc.add_real(t);
            abs += t.abs();
        }
        // each term carries a few ulps of error from the coefficient and F
        let floor = 4.0 * f64::EPSILON * abs;
        points.push((x, acc.value().re.abs(), floor));
    }
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.1 > FLOOR_MARGIN * p.2)
        .map(|p| (p.0, p.1))
        .collect();
    let fit = if usable.len() >= 3 { Some(exponent_fit(&usable)?) } else { None };
    Ok(BookerFit { points, fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_power_laws() {
        let sq: Vec<(f64, f64)> = (1..6).map(|k| (k as f64 * 3.0, (k as f64 * 3.0).powi(2))).collect();
        let f = exponent_fit(&sq).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12 && f.residual < 1e-12);
        let half: Vec<(f64, f64)> = [10.0, 100.0, 1000.0].iter().map(|&x: &f64| (x, 7.0 * x.sqrt())).collect();
        let f = exponent_fit(&half).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-12);
        assert!((f.intercept - 7f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn noisy_unit_slope() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<(f64, f64)> = (10..=17)
            .map(|k| {
                let x = (1u64 << k) as f64;
                (x, x * (1.0 + rng.gen_range(-0.01..0.01)))
            })
            .collect();
        let f = exponent_fit(&pts).unwrap();
        assert!((0.97..=1.03).contains(&f.slope), "{}", f.slope);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(exponent_fit(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(exponent_fit(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]).is_err());
        assert!(exponent_fit(&[(2.0, 1.0), (2.0, 2.0), (2.0, 3.0)]).is_err());
    }
}
