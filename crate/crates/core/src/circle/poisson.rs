//! Poisson summation in `h` for the circle-method h-sum:
//!
//! ```text
//! sum_{h >= 1} e(ch/q) W(h/H) phi(m/(B+h)) e(beta h) = H sum_{h' = -c mod q} I(h'),
//! I(h') = int W(x) phi(m/(B+Hx)) e((beta - h'/q) H x) dx.
//! ```

use num_complex::Complex64;

use crate::arith::{e, e_frac, e_product, gcd, CompensatedSum};
use crate::error::{Error, Result};
use crate::transforms::{adaptive_complex_panels, Shape};

#[derive(Clone, Copy, Debug)]
pub struct PoissonSetup {
    pub c: i64,
    pub q: u64,
    pub h: f64,
    pub m: f64,
    /// `rX` (or `rY + Hx`) in the argument `m / (base + h)`.
    pub base: f64,
    pub beta: f64,
    pub w: Shape,
    pub phi: Shape,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoissonCheck {
    pub direct: Complex64,
    pub dual: Complex64,
    pub error: f64,
    /// `sum |W(h/H) phi(...)|`, the size of the sum without cancellation.
    pub trivial: f64,
    pub dual_terms: usize,
}

impl PoissonCheck {
    /// Error relative to the trivial size; `|direct|` itself can be tiny
    /// when `c/q` is far from the twist `beta`.
    pub fn relative_error(&self) -> f64 {
        self.error / self.trivial.max(f64::MIN_POSITIVE)
    }
}

impl PoissonSetup {
    fn validate(&self) -> Result<()> {
        if self.q == 0 || gcd(self.c.unsigned_abs(), self.q) != 1 {
            return Err(Error::NotCoprime { a: self.c, modulus: self.q });
        }
        if !(self.h >= 1.0) {
            return Err(Error::InvalidArgument(format!("H must be at least 1, got {}", self.h)));
        }
        if !(self.m > 0.0) || !(self.base >= 0.0) {
            return Err(Error::InvalidArgument("m must be positive and base non-negative".into()));
        }
        Ok(())
    }

    fn weight(&self, x: f64) -> f64 {
        let w = self.w.eval(x);
        if w == 0.0 {
            0.0
        } else {
            w * self.phi.eval(self.m / (self.base + self.h * x))
        }
    }

    /// Largest `|frequency|` (cycles per unit `x`) kept by default.
    pub fn default_cutoff(&self) -> f64 {
        // both factors are C^infinity bumps; their transforms are below 1e-17
        // of the peak past ~ 150 cycles per ramp width
        let (a, b) = self.w.support();
        let stretch = self.h * b / (self.base + self.h * a);
        150.0 / self.w.ramp_width() + 150.0 * stretch / self.phi.ramp_width()
    }

    /// The h-sum and its trivial size.
    pub fn direct(&self) -> (Complex64, f64) {
        let (a, b) = self.w.support();
        let lo = (a * self.h).ceil().max(1.0) as i64;
        let hi = (b * self.h).floor() as i64;
        let mut acc = CompensatedSum::new();
        let mut size = CompensatedSum::new();
        for n in lo..=hi {
            let v = self.weight(n as f64 / self.h);
            if v != 0.0 {
                let phase = e_frac(self.c as i128 * n as i128, self.q) * e(self.beta * n as f64);
                acc.add(phase * v);
                size.add_real(v.abs());
            }
        }
        (acc.value(), size.value().re)
    }

    /// `I(h')`.
    pub fn dual_integral(&self, hp: i64, tol: f64) -> Result<Complex64> {
        let (a, b) = self.w.support();
        let freq = (self.beta - hp as f64 / self.q as f64) * self.h;
        let panels = (freq.abs() * (b - a)).ceil() as usize + 16;
        adaptive_complex_panels(|x| e_product(freq, x) * self.weight(x), a, b, tol, panels)
    }

    /// `H sum I(h')` over `h' = -c mod q` with `|beta - h'/q| H <= cutoff`.
    pub fn dual(&self, cutoff: f64, tol: f64) -> Result<(Complex64, usize)> {
        let q = self.q as i64;
        let r = (-self.c).rem_euclid(q);
        // h' = r + k q, frequency (beta - r/q - k) H
        let center = self.beta - r as f64 / q as f64;
        let span = cutoff / self.h;
        let k_lo = (center - span).ceil() as i64;
        let k_hi = (center + span).floor() as i64;
        let mut acc = CompensatedSum::new();
        for k in k_lo..=k_hi {
            acc.add(self.dual_integral(r + k * q, tol)?);
        }
        Ok((acc.value() * self.h, (k_hi - k_lo + 1).max(0) as usize))
    }
}

/// Direct h-sum against its Poisson dual; `cutoff` in cycles per unit `x`
/// defaults to [`PoissonSetup::default_cutoff`].
pub fn poisson_hsum_check(setup: &PoissonSetup, cutoff: Option<f64>, tol: f64) -> Result<PoissonCheck> {
    setup.validate()?;
    let (direct, trivial) = setup.direct();
    let cutoff = cutoff.unwrap_or_else(|| setup.default_cutoff());
    let (dual, dual_terms) = setup.dual(cutoff, tol)?;
    Ok(PoissonCheck {
        direct,
        dual,
        error: (direct - dual).norm(),
        trivial,
        dual_terms,
    })
}

/// Ten parameter sets over a range of moduli, lengths and twists; several
/// put `m / (base + h)` on a ramp of `phi`.
pub fn standard_setups() -> Vec<PoissonSetup> {
    let cases: [(i64, u64, f64, f64, f64, f64); 10] = [
        (1, 1, 40.0, 0.0, 1500.0, 1000.0),
        (3, 7, 30.0, 0.001, 1500.0, 1000.0),
        (-2, 5, 120.0, -0.0004, 1500.0, 1000.0),
        (1, 11, 60.0, 0.0, 1500.0, 1000.0),
        (5, 12, 200.0, 0.0002, 5000.0, 2000.0),
        (7, 9, 80.0, 0.003, 2500.0, 1000.0),
        (1, 2, 500.0, 0.0, 1200.0, 1000.0),
        (4, 13, 64.0, -0.002, 1800.0, 1000.0),
        (11, 16, 300.0, 0.0007, 2600.0, 1000.0),
        (2, 3, 1000.0, 0.0001, 4000.0, 2000.0),
    ];
    cases
        .iter()
        .map(|&(c, q, h, beta, m, base)| PoissonSetup {
            c,
            q,
            h,
            m,
            base,
            beta,
            w: Shape::SimpleBump,
            phi: Shape::BumpEq1OnUnit2,
        })
        .collect()
}

/// A setup checked at the default cutoff and at `1.5 H` and `3 H`.
#[derive(Clone, Copy, Debug)]
pub struct PoissonSuiteRow {
    pub setup: PoissonSetup,
    pub full: PoissonCheck,
    pub coarse: PoissonCheck,
    pub finer: PoissonCheck,
}

impl PoissonSuiteRow {
    /// Doubling the cutoff reduces the error, unless both are at rounding level.
    pub fn improves(&self) -> bool {
        self.finer.error < self.coarse.error || self.finer.relative_error() < 1e-13
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.full.relative_error() <= tol && self.improves()
    }
}

pub fn poisson_suite(setups: &[PoissonSetup], quad_tol: f64) -> Result<Vec<PoissonSuiteRow>> {
    setups
        .iter()
        .map(|s| {
            Ok(PoissonSuiteRow {
                setup: *s,
                full: poisson_hsum_check(s, None, quad_tol)?,
                coarse: poisson_hsum_check(s, Some(1.5 * s.h), quad_tol)?,
                finer: poisson_hsum_check(s, Some(3.0 * s.h), quad_tol)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(c: i64, q: u64, h: f64, beta: f64) -> PoissonSetup {
        PoissonSetup {
            c,
            q,
            h,
            m: 1500.0,
            base: 1000.0,
            beta,
            w: Shape::SimpleBump,
            phi: Shape::BumpEq1OnUnit2,
        }
    }

    #[test]
    fn q_one_plain_sum() {
        // phi(m / (base + h)) = 1 throughout: m / (1000 + h) in [1, 2] for h in [40, 80]
        let s = PoissonSetup { m: 1500.0, ..setup(1, 1, 40.0, 0.0) };
        let expect: f64 = (40..=80).map(|n| Shape::SimpleBump.eval(n as f64 / 40.0)).sum();
        assert!((s.direct().0.re - expect).abs() < 1e-12);
        let r = poisson_hsum_check(&s, None, 1e-13).unwrap();
        assert!(r.error < 1e-8, "{r:?}");
    }

    #[test]
    fn twisted_cases_and_cutoff_doubling() {
        for (c, q, h, beta) in [(3, 7, 30.0, 0.001), (-2, 5, 120.0, -0.0004), (1, 11, 60.0, 0.0)] {
            let s = setup(c, q, h, beta);
            let full = poisson_hsum_check(&s, None, 1e-13).unwrap();
            assert!(full.relative_error() < 1e-8, "{c}/{q}: {full:?}");
            let coarse = poisson_hsum_check(&s, Some(1.5 * h), 1e-13).unwrap();
            let finer = poisson_hsum_check(&s, Some(3.0 * h), 1e-13).unwrap();
            assert!(
                finer.error < coarse.error || finer.relative_error() < 1e-13,
                "{c}/{q}: {} vs {}", finer.error, coarse.error
            );
            // c -> c + q
            let shifted = poisson_hsum_check(&PoissonSetup { c: c + q as i64, ..s }, None, 1e-13).unwrap();
            assert!((shifted.direct - full.direct).norm() < 1e-10);
            assert!((shifted.dual - full.dual).norm() < 1e-10);
        }
    }

    #[test]
    fn standard_suite() {
        let rows = poisson_suite(&standard_setups(), 1e-13).unwrap();
        assert_eq!(rows.len(), 10);
        for r in &rows {
            assert!(r.passed(1e-8), "{r:?}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(poisson_hsum_check(&setup(2, 4, 10.0, 0.0), None, 1e-12).is_err());
        assert!(poisson_hsum_check(&setup(1, 3, 0.5, 0.0), None, 1e-12).is_err());
    }
}
