use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::moduli::{build_moduli_set, ModuliSet};
use super::Rational;
use crate::arith::{gcd, CompensatedSum};
use crate::error::{Error, Result};

/// `I~(beta) = (1 / 2 eta L) sum_q sum*_c 1[|beta - c/q| < eta]` on `R/Z`.
#[derive(Clone, Debug)]
pub struct IndicatorApprox {
    /// Centers `c/q` reduced into `[0, 1)`, sorted, with their modulus.
    pub intervals: Vec<(Rational, u64)>,
    pub eta: Rational,
    pub l: u64,
    pub height: f64,
}

fn frac(x: Rational) -> Rational {
    x - x.floor()
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| *x.numer() as f64 / *x.denom() as f64)
}

/// One interval per reduced residue `1 <= c <= q`, centers wrapped onto `[0, 1)`.
pub fn indicator_approx(set: &ModuliSet) -> IndicatorApprox {
    let mut intervals: Vec<(Rational, u64)> = set
        .members
        .iter()
        .flat_map(|&q| {
            (1..=q)
                .filter(move |&c| gcd(c, q) == 1)
                .map(move |c| (frac(Rational::new(c as i128, q as i128)), q))
        })
        .collect();
    intervals.sort();
    let eta = set.eta_exact();
    IndicatorApprox {
        intervals,
        eta,
        l: set.l,
        height: 1.0 / (2.0 * to_f64(&eta) * set.l as f64),
    }
}

impl IndicatorApprox {
    /// `1 / (2 eta L)` as an exact rational.
    pub fn height_exact(&self) -> Rational {
        (self.eta * Rational::from_integer(2 * self.l as i128)).recip()
    }

    /// Every interval as pieces `[a, b)` inside `[0, 1)`.
    fn pieces(&self) -> Vec<(Rational, Rational)> {
        let one = Rational::one();
        let zero = Rational::zero();
        let mut out = Vec::with_capacity(self.intervals.len() + 2);
        for &(c, _) in &self.intervals {
            let (a, b) = (c - self.eta, c + self.eta);
            if b - a >= one {
                out.push((zero, one));
                let rest = b - a - one;
                if rest > zero {
                    // covers the circle once more on a shorter arc
                    let start = frac(a);
                    let end = start + rest;
                    if end <= one {
                        out.push((start, end));
                    } else {
                        out.push((start, one));
                        out.push((zero, end - one));
                    }
                }
                continue;
            }
            if a < zero {
                out.push((a + one, one));
                out.push((zero, b));
            } else if b > one {
                out.push((a, one));
                out.push((zero, b - one));
            } else {
                out.push((a, b));
            }
        }
        out
    }

    /// `int_{R/Z} I~` in exact arithmetic.
    pub fn mass(&self) -> Rational {
        let total: Rational = self.pieces().into_iter().map(|(a, b)| b - a).fold(Rational::zero(), |acc, x| acc + x);
        total * self.height_exact()
    }

    /// All centers shifted by `rho` and re-wrapped.
    pub fn translated(&self, rho: Rational) -> Self {
        let mut intervals: Vec<(Rational, u64)> = self.intervals.iter().map(|&(c, q)| (frac(c + rho), q)).collect();
        intervals.sort();
        Self { intervals, ..self.clone() }
    }

    /// Pointwise value and distance to the nearest interval endpoint, by a
    /// scan over all intervals in floating point.
    pub fn value_and_gap(&self, beta: f64) -> (f64, f64) {
        let eta = to_f64(&self.eta);
        let mut count = 0u64;
        let mut gap = f64::INFINITY;
        for (c, _) in &self.intervals {
            let mut d = (beta - to_f64(c)).rem_euclid(1.0);
            if d > 0.5 {
                d -= 1.0;
            }
            let d = d.abs();
            if d < eta {
                count += 1;
            }
            gap = gap.min((d - eta).abs()).min((1.0 - d - eta).abs());
        }
        (count as f64 * self.height, gap)
    }
}

/// `int_0^1 (1 - I~)^2` exactly up to the final floating-point accumulation.
///
/// Sweep over the sorted endpoints; between consecutive distinct endpoints
/// `I~` equals (covering multiplicity) times the height.
pub fn l2_defect(approx: &IndicatorApprox) -> f64 {
    let mut events: Vec<(Rational, i64)> = Vec::new();
    for (a, b) in approx.pieces() {
        events.push((a, 1));
        events.push((b, -1));
    }
    events.sort();
    let mut acc = CompensatedSum::new();
    let mut mult = 0i64;
    let mut prev = Rational::zero();
    let mut i = 0;
    while i < events.len() {
        let x = events[i].0;
        if x > prev {
            let v = 1.0 - mult as f64 * approx.height;
            acc.add_real(v * v * to_f64(&(x - prev)));
            prev = x;
        }
        while i < events.len() && events[i].0 == x {
            mult += events[i].1;
            i += 1;
        }
    }
    let one = Rational::one();
    if prev < one {
        let v = 1.0 - mult as f64 * approx.height;
        acc.add_real(v * v * to_f64(&(one - prev)));
    }
    acc.value().re
}

/// Independent check of [`l2_defect`]: adaptive bisection of `[0, 1]`
/// driven by pointwise evaluation. A panel is integrated exactly once its
/// midpoint is farther from every endpoint than its half-width; panels
/// narrower than `min_width` fall back to the midpoint rule.
pub fn l2_defect_quadrature(approx: &IndicatorApprox, min_width: f64) -> Result<f64> {
    if !(min_width > 0.0) {
        return Err(Error::InvalidArgument("minimum panel width must be positive".into()));
    }
    let f = |beta: f64| {
        let (v, gap) = approx.value_and_gap(beta);
        ((1.0 - v) * (1.0 - v), gap)
    };
    let eta = to_f64(&approx.eta);
    let n0 = ((1.0 / eta).ceil() as usize).max(8);
    let parts: Vec<f64> = (0..n0)
        .into_par_iter()
        .map(|i| {
            let mut acc = CompensatedSum::new();
            let mut stack = vec![(i as f64 / n0 as f64, (i + 1) as f64 / n0 as f64)];
            while let Some((a, b)) = stack.pop() {
                let mid = 0.5 * (a + b);
                let (val, gap) = f(mid);
                if gap > 0.5 * (b - a) || b - a < min_width {
                    acc.add_real(val * (b - a));
                } else {
                    stack.push((mid, b));
                    stack.push((a, mid));
                }
            }
            acc.value().re
        })
        .collect();
    let mut acc = CompensatedSum::new();
    for p in parts {
        acc.add_real(p);
    }
    Ok(acc.value().re)
}

/// Defects `D(Q)` of prime moduli sets with `eta = Q^{-2}`, and the constant
/// `C` in `D(Q) <= C (log Q)^2` fitted on the first `fit_points` values.
#[derive(Clone, Debug)]
pub struct DefectScaling {
    pub points: Vec<(f64, f64)>,
    pub c: f64,
    pub fit_points: usize,
    pub holds: bool,
}

pub fn defect_scaling(qs: &[f64], r: u64, fit_points: usize) -> Result<DefectScaling> {
    if fit_points == 0 || fit_points > qs.len() {
        return Err(Error::InvalidArgument("need 1 <= fit_points <= number of Q values".into()));
    }
    let points = qs
        .iter()
        .map(|&q| {
            let set = build_moduli_set(q, r, q.powi(-2))?;
            Ok((q, l2_defect(&indicator_approx(&set))))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = points[..fit_points]
        .iter()
        .map(|&(q, d)| d / q.ln().powi(2))
        .fold(0.0, f64::max);
    let holds = points.iter().all(|&(q, d)| d <= c * q.ln().powi(2));
    Ok(DefectScaling { points, c, fit_points, holds })
}
