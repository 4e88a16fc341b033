//! The GL(3) dual side, assembled from an arbitrary coefficient oracle.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{divisors, gcd, mod_inverse, CompensatedSum, KloostermanRow};
use crate::coeff::CoefficientOracle;
use crate::error::{Error, Result};
use crate::transforms::{dual_cutoff, CutoffKind, CutoffParams, Gl3Params, SmoothWeight, Transform, TransformPair};

/// `q pi^{-5/2} / (4i)`.
pub fn gl3_prefactor(q: u64) -> Complex64 {
    Complex64::new(0.0, -(q as f64) * PI.powf(-2.5) / 4.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gl3Options {
    /// Largest `n2`; defaults to the derivative-bound window.
    pub cutoff: Option<u64>,
    pub kernel_tolerance: f64,
    pub cutoff_params: CutoffParams,
}

impl Default for Gl3Options {
    fn default() -> Self {
        Self {
            cutoff: None,
            kernel_tolerance: 1e-12,
            cutoff_params: CutoffParams::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gl3Assembly {
    pub value: Complex64,
    /// Contribution of the upper half `n2 in (M/2, M]`, as a tail estimate.
    pub truncation_bound: f64,
    pub cutoff: u64,
    pub terms_used: u64,
}

/// `q pi^{-5/2}/(4i) sum_{+-} sum_{n1 | q} sum_{n2 <= M} A(n2, n1) / (n1 n2)
/// S(cbar, +-n2; q/n1) Phi^{+-}(n1^2 n2 / q^3)`.
pub fn gl3_dual_assemble(
    c: i64,
    q: u64,
    weight: &SmoothWeight,
    params: Gl3Params,
    oracle: &dyn CoefficientOracle,
    options: Gl3Options,
) -> Result<Gl3Assembly> {
    if q == 0 || gcd(c.unsigned_abs(), q) != 1 {
        return Err(Error::NotCoprime { a: c, modulus: q });
    }
    let y = weight.scale;
    let cutoff = match options.cutoff {
        Some(m) => m.max(1),
        None => dual_cutoff(
            q,
            y,
            CutoffKind::Gl3 {
                py: weight.derivative_bound * y,
            },
            options.cutoff_params,
        )?,
    };
    let q3 = (q as f64).powi(3);
    let z_range = (y / q3, (q * q) as f64 * cutoff as f64 * y / q3);
    let pair = TransformPair::standard(Transform::Phi(params), weight, z_range, options.kernel_tolerance)?.tabulate(z_range);
    let cb = if q == 1 { 0 } else { mod_inverse(c, q)?.value() as i64 };
    let mut low = CompensatedSum::new();
    let mut high = CompensatedSum::new();
    let mut terms = 0;
    for n1 in divisors(q) {
        let row = KloostermanRow::new(cb, q / n1);
        for n2 in 1..=cutoff {
            let a = oracle.coefficient(n2, n1)?;
            if a == 0.0 {
                continue;
            }
            terms += 1;
            let (pp, pm) = pair.pm((n1 * n1 * n2) as f64 / q3);
            // S(cbar, n; c) = S(n, cbar; c)
            let v = (pp * row.get(n2 as i64) + pm * row.get(-(n2 as i64))) * (a / (n1 * n2) as f64);
            if 2 * n2 > cutoff {
                high.add(v);
            } else {
                low.add(v);
            }
        }
    }
    let pre = gl3_prefactor(q);
    let high = high.value() * pre;
    Ok(Gl3Assembly {
        value: low.value() * pre + high,
        truncation_bound: high.norm(),
        cutoff,
        terms_used: terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{DivisorCubeOracle, ZeroOracle};

    #[test]
    fn zero_oracle_gives_zero() {
        let w = SmoothWeight::simple(100.0).unwrap();
        let r = gl3_dual_assemble(2, 5, &w, Gl3Params::zero(), &ZeroOracle, Gl3Options { cutoff: Some(50), ..Default::default() })
            .unwrap();
        assert_eq!(r.value, Complex64::new(0.0, 0.0));
        assert_eq!(r.terms_used, 0);
    }

    #[test]
    fn prefactor_is_linear_in_q() {
        let a = gl3_prefactor(3);
        let b = gl3_prefactor(6);
        assert!((b - a * 2.0).norm() < 1e-16);
        // with mu = 0, prefactor * 2 pi i equals the d_3 constant q / (2 pi^{3/2})
        let via_omega = gl3_prefactor(7) * Complex64::new(0.0, 2.0 * PI);
        assert!((via_omega - Complex64::new(7.0 / (2.0 * PI.powf(1.5)), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn divisor_oracle_converges_under_cutoff_doubling() {
        let w = SmoothWeight::simple(2000.0).unwrap();
        let o = DivisorCubeOracle::new();
        let run = |m| {
            gl3_dual_assemble(1, 1, &w, Gl3Params::zero(), &o, Gl3Options { cutoff: Some(m), ..Default::default() })
                .unwrap()
        };
        let a = run(2500);
        let b = run(5000);
        let c = run(10_000);
        assert!(a.value.norm().is_finite() && a.value.norm() > 0.0);
        let d1 = (a.value - b.value).norm();
        let d2 = (b.value - c.value).norm();
        assert!(d2 < 0.5 * d1, "{d1} then {d2}");
        assert!(d2 < 1e-6 * c.value.norm());
    }
}
