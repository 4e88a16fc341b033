//! The GL(2) Voronoi formula for a holomorphic cusp form.

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::VoronoiReport;
use super::TailControl;
use crate::arith::{e_frac, gcd, mod_inverse, CompensatedSum};
use crate::coeff::CoefficientTable;
use crate::error::{Error, Result};
use crate::transforms::{Gl2Kernel, SmoothWeight, SpectralParams};

/// Checks `sum a(m) e(cm/q) psi(m) = (1/q) sum a(m) e(-cbar m/q) Psi^-(m/q^2)`
/// (only the `-` sign survives for holomorphic forms).
#[derive(Clone, Debug)]
pub struct Gl2Checker {
    kernel: Gl2Kernel,
    weight: SmoothWeight,
    pub tail: TailControl,
}

impl Gl2Checker {
    pub fn default_tail() -> TailControl {
        TailControl {
            z_start: 200.0,
            z_cap: 1e6,
            tail_tolerance: 1e-9,
        }
    }

    pub fn new(weight: SmoothWeight, params: SpectralParams, kernel_tol: f64, tail: TailControl) -> Result<Self> {
        Ok(Self {
            kernel: Gl2Kernel::new(params, weight, kernel_tol)?,
            weight,
            tail,
        })
    }

    /// `sum a(m) e(cm/q) psi(m)`.
    pub fn lhs(&self, c: i64, q: u64, coeffs: &CoefficientTable) -> Result<Complex64> {
        let (a, b) = self.weight.support();
        let hi = b.ceil() as usize;
        coeffs.require(hi)?;
        let mut acc = CompensatedSum::new();
        for m in (a.floor().max(1.0) as usize)..=hi {
            let w = self.weight.eval(m as f64);
            if w.norm() != 0.0 {
                acc.add(e_frac(c as i128 * m as i128, q) * w * coeffs.value(m));
            }
        }
        Ok(acc.value())
    }

    pub fn check(&self, c: i64, q: u64, coeffs: &CoefficientTable) -> Result<VoronoiReport> {
        if q == 0 || gcd(c.unsigned_abs(), q) != 1 {
            return Err(Error::NotCoprime { a: c, modulus: q });
        }
        Ok(self.check_residues(q, &[c], coeffs)?.remove(0))
    }

    pub fn check_all(&self, q: u64, coeffs: &CoefficientTable) -> Result<Vec<VoronoiReport>> {
        let cs: Vec<i64> = (1..=q).filter(|&c| gcd(c, q) == 1).map(|c| c as i64).collect();
        self.check_residues(q, &cs, coeffs)
    }

    fn check_residues(&self, q: u64, cs: &[i64], coeffs: &CoefficientTable) -> Result<Vec<VoronoiReport>> {
        let y = self.weight.scale;
        let q2 = (q * q) as f64;
        let lhs = cs.iter().map(|&c| self.lhs(c, q, coeffs)).collect::<Result<Vec<_>>>()?;
        let cbars = cs
            .iter()
            .map(|&c| Ok(if q == 1 { 0 } else { mod_inverse(c, q)?.value() as i64 }))
            .collect::<Result<Vec<i64>>>()?;
        let mut totals = vec![CompensatedSum::new(); cs.len()];
        let mut terms = 0u64;
        let mut quiet_blocks = 0;
        let mut last_block;
        let (mut z_lo, mut z_hi) = (0.0, self.tail.z_start.min(self.tail.z_cap));
        loop {
            // z = m Y / q^2
            let m_lo = (z_lo * q2 / y).floor() as u64 + 1;
            let m_hi = (z_hi * q2 / y).floor() as u64;
            let mut block = vec![CompensatedSum::new(); cs.len()];
            if m_hi >= m_lo {
                coeffs.require(m_hi as usize)?;
                terms += m_hi - m_lo + 1;
                let psi: Vec<Complex64> = (m_lo..=m_hi)
                    .into_par_iter()
                    .map(|m| Ok(self.kernel.eval(m as f64 / q2)?.minus))
                    .collect::<Result<Vec<_>>>()?;
                for (j, m) in (m_lo..=m_hi).enumerate() {
                    let a = coeffs.value(m as usize);
                    for (i, &cb) in cbars.iter().enumerate() {
                        block[i].add(e_frac(-(cb as i128) * m as i128, q) * psi[j] * a);
                    }
                }
            }
            let mut quiet = true;
            last_block = 0.0f64;
            for (i, b) in block.iter().enumerate() {
                let v = b.value() / q as f64;
                last_block = last_block.max(v.norm());
                if v.norm() > self.tail.tail_tolerance * lhs[i].norm() {
                    quiet = false;
                }
                totals[i].add(v);
            }
            // empty blocks (below the first dual index) do not count
            quiet_blocks = if !quiet { 0 } else if terms > 0 { quiet_blocks + 1 } else { quiet_blocks };
            if quiet_blocks >= 2 || z_hi >= self.tail.z_cap {
                break;
            }
            z_lo = z_hi;
            z_hi = (2.0 * z_hi).min(self.tail.z_cap);
        }
        Ok(cs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                VoronoiReport::new(
                    q,
                    (c - 1).rem_euclid(q as i64) as u64 + 1,
                    y,
                    lhs[i],
                    totals[i].value(),
                    Complex64::new(0.0, 0.0),
                    last_block,
                    terms,
                )
            })
            .collect())
    }
}

/// One-off check with default tolerances.
pub fn gl2_voronoi_check(
    c: i64,
    q: u64,
    weight: &SmoothWeight,
    params: SpectralParams,
    coeffs: &CoefficientTable,
) -> Result<VoronoiReport> {
    Gl2Checker::new(*weight, params, 1e-16, Gl2Checker::default_tail())?.check(c, q, coeffs)
}
