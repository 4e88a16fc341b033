//! The `d_3` Voronoi formula with its three main-term lines.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::VoronoiReport;
use super::TailControl;
use crate::arith::{
    divisor_count, divisors, e_frac, gcd, mod_inverse, ramanujan_sum, sieve_d3, sigma00_from_factors,
    CompensatedSum, FactorSieve, KloostermanRow, SieveTable, DEFAULT_ENTRY_BUDGET,
};
use crate::error::{Error, Result};
use crate::transforms::{euler_gamma, mellin_log_moment, stieltjes_gamma1, SmoothWeight, Transform, TransformPair};

/// How the main terms are scaled.
///
/// The printed coefficients `1/(2q^2)`, `1/(2q^2)`, `1/(4q^2)` give exactly
/// half of the residue of the Dirichlet series at `s = 1`; the identity
/// closes numerically only with the residue-corrected (doubled) terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MainTermNormalization {
    AsPrinted,
    #[default]
    ResidueCorrected,
}

impl MainTermNormalization {
    fn factor(self) -> f64 {
        match self {
            MainTermNormalization::AsPrinted => 1.0,
            MainTermNormalization::ResidueCorrected => 2.0,
        }
    }
}

fn log_divisor_sums(n: u64) -> (f64, f64) {
    divisors(n).iter().fold((0.0, 0.0), |(a, b), &d| {
        let l = (d as f64).ln();
        (a + l, b + l * l)
    })
}

/// `P_1(n, q)`.
pub fn p1(n: u64, q: u64) -> f64 {
    let (ln, lq) = ((n as f64).ln(), (q as f64).ln());
    let (s1, _) = log_divisor_sums(n);
    5.0 / 3.0 * ln - 3.0 * lq + 3.0 * euler_gamma() - s1 / (3.0 * divisor_count(n) as f64)
}

/// `P_2(n, q)`.
pub fn p2(n: u64, q: u64) -> f64 {
    let (ln, lq) = ((n as f64).ln(), (q as f64).ln());
    let (g, g1) = (euler_gamma(), stieltjes_gamma1());
    let (s1, s2) = log_divisor_sums(n);
    ln * ln - 5.0 * lq * ln + 4.5 * lq * lq + 3.0 * g * g - 3.0 * g1 + 7.0 * g * ln - 9.0 * g * lq
        + ((ln + lq - 5.0 * g) * s1 - 1.5 * s2) / divisor_count(n) as f64
}

/// `omega~(1)`, `omega~'(1)`, `omega~''(1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MellinMoments {
    pub m0: f64,
    pub m1: f64,
    pub m2: f64,
}

impl MellinMoments {
    pub fn of(weight: &SmoothWeight, tol: f64) -> Result<Self> {
        if !weight.is_real() {
            return Err(Error::InvalidArgument("main terms need an untwisted weight".into()));
        }
        Ok(Self {
            m0: mellin_log_moment(weight, 0, tol)?.re,
            m1: mellin_log_moment(weight, 1, tol)?.re,
            m2: mellin_log_moment(weight, 2, tol)?.re,
        })
    }
}

fn inverse(c: i64, q: u64) -> Result<i64> {
    if q == 1 {
        return Ok(0);
    }
    Ok(mod_inverse(c, q)?.value() as i64)
}

fn main_terms_from(c: i64, q: u64, m: &MellinMoments, norm: MainTermNormalization) -> Result<f64> {
    let cb = inverse(c, q)?;
    let (mut a, mut b, mut cc) = (0.0, 0.0, 0.0);
    for n in divisors(q) {
        let s = ramanujan_sum(cb, q / n) as f64;
        let w = n as f64 * divisor_count(n) as f64 * s;
        a += w * p2(n, q);
        b += w * p1(n, q);
        cc += w;
    }
    let q2 = (q * q) as f64;
    Ok(norm.factor() * (a / (2.0 * q2) * m.m0 + b / (2.0 * q2) * m.m1 + cc / (4.0 * q2) * m.m2))
}

/// The three main-term lines for `e(cn/q)` and the weight `omega`.
pub fn d3_main_terms(c: i64, q: u64, weight: &SmoothWeight, norm: MainTermNormalization) -> Result<Complex64> {
    check_coprime(c, q)?;
    let m = MellinMoments::of(weight, 1e-13)?;
    Ok(Complex64::new(main_terms_from(c, q, &m, norm)?, 0.0))
}

fn check_coprime(c: i64, q: u64) -> Result<()> {
    if q == 0 || gcd(c.unsigned_abs(), q) != 1 {
        return Err(Error::NotCoprime { a: c, modulus: q });
    }
    Ok(())
}

/// Reusable state for `d_3` checks at one weight: the tabulated kernels,
/// the Mellin moments and the `d_3` table for the left-hand side.
#[derive(Clone, Debug)]
pub struct D3Checker {
    weight: SmoothWeight,
    pair: TransformPair,
    moments: MellinMoments,
    d3: SieveTable,
    q_max: u64,
    pub tail: TailControl,
    pub normalization: MainTermNormalization,
}

const CHUNK: u64 = 4096;

impl D3Checker {
    pub fn default_tail() -> TailControl {
        TailControl {
            z_start: 1000.0,
            z_cap: 4e6,
            tail_tolerance: 1e-6,
        }
    }

    /// Kernels cover every modulus up to `q_max`.
    pub fn new(weight: SmoothWeight, q_max: u64, kernel_tol: f64, tail: TailControl) -> Result<Self> {
        if q_max == 0 {
            return Err(Error::InvalidArgument("q_max must be positive".into()));
        }
        if !weight.is_real() {
            return Err(Error::InvalidArgument("the d3 check needs an untwisted weight".into()));
        }
        let z_range = (0.5 * weight.scale / (q_max as f64).powi(3), tail.z_cap);
        let pair = TransformPair::standard(Transform::Omega, &weight, z_range, kernel_tol)?.tabulate(z_range);
        let (_, b) = weight.support();
        let d3 = sieve_d3(b.ceil() as usize + 1)?;
        Ok(Self {
            moments: MellinMoments::of(&weight, 1e-13)?,
            weight,
            pair,
            d3,
            q_max,
            tail,
            normalization: MainTermNormalization::default(),
        })
    }

    pub fn moments(&self) -> MellinMoments {
        self.moments
    }

    /// `sum d_3(n) e(cn/q) omega(n)`.
    pub fn lhs(&self, c: i64, q: u64) -> Complex64 {
        let (a, b) = self.weight.support();
        let mut acc = CompensatedSum::new();
        for n in (a.floor().max(1.0) as usize)..=(b.ceil() as usize).min(self.d3.limit()) {
            let w = self.weight.eval_real(n as f64);
            if w != 0.0 {
                acc.add(e_frac(c as i128 * n as i128, q) * (self.d3.get(n) as f64 * w));
            }
        }
        acc.value()
    }

    pub fn main_terms(&self, c: i64, q: u64) -> Result<Complex64> {
        Ok(Complex64::new(main_terms_from(c, q, &self.moments, self.normalization)?, 0.0))
    }

    pub fn check(&self, c: i64, q: u64) -> Result<VoronoiReport> {
        check_coprime(c, q)?;
        Ok(self.check_residues(q, &[c])?.remove(0))
    }

    /// Reports for every reduced residue `1 <= c <= q`.
    pub fn check_all(&self, q: u64) -> Result<Vec<VoronoiReport>> {
        let cs: Vec<i64> = (1..=q).filter(|&c| gcd(c, q) == 1).map(|c| c as i64).collect();
        self.check_residues(q, &cs)
    }

    fn check_residues(&self, q: u64, cs: &[i64]) -> Result<Vec<VoronoiReport>> {
        if q > self.q_max {
            return Err(Error::InvalidArgument(format!("q = {q} exceeds the kernel range q_max = {}", self.q_max)));
        }
        let y = self.weight.scale;
        let q3 = (q as f64).powi(3);
        let m_cap = (self.tail.z_cap * q3 / y).floor() as u64;
        if m_cap as usize > DEFAULT_ENTRY_BUDGET {
            return Err(Error::BudgetExceeded(format!("d3 dual sum would need m up to {m_cap}")));
        }
        let factors = FactorSieve::new(m_cap.max(1) as usize)?;
        let lhs: Vec<Complex64> = cs.iter().map(|&c| self.lhs(c, q)).collect();

        struct Outer {
            n: u64,
            ks: Vec<u64>,
            rows: Vec<KloostermanRow>,
        }
        let outers: Vec<Outer> = divisors(q)
            .into_iter()
            .map(|n| {
                let mut ks = Vec::new();
                for n1 in divisors(n) {
                    for n2 in divisors(n / n1) {
                        ks.push(n / (n1 * n2));
                    }
                }
                let rows = cs
                    .iter()
                    .map(|&c| Ok(KloostermanRow::new(inverse(c, q)?, q / n)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Outer { n, ks, rows })
            })
            .collect::<Result<Vec<_>>>()?;

        let pre = q as f64 / (2.0 * PI.powf(1.5));
        let mut totals = vec![CompensatedSum::new(); cs.len()];
        let mut terms = 0u64;
        let mut quiet_blocks = 0;
        let mut last_block;
        let (mut z_lo, mut z_hi) = (0.0, self.tail.z_start.min(self.tail.z_cap));
        loop {
            let mut block = vec![CompensatedSum::new(); cs.len()];
            for o in &outers {
                let n2 = (o.n * o.n) as f64;
                let m_lo = (z_lo * q3 / (n2 * y)).floor() as u64 + 1;
                let m_hi = (z_hi * q3 / (n2 * y)).floor() as u64;
                if m_hi < m_lo {
                    continue;
                }
                terms += m_hi - m_lo + 1;
                let chunks: Vec<(u64, u64)> = (m_lo..=m_hi)
                    .step_by(CHUNK as usize)
                    .map(|s| (s, (s + CHUNK - 1).min(m_hi)))
                    .collect();
                let partials: Vec<Vec<CompensatedSum>> = chunks
                    .par_iter()
                    .map(|&(s, t)| {
                        let mut acc = vec![CompensatedSum::new(); cs.len()];
                        for m in s..=t {
                            let f = factors.factorize(m as usize);
                            let weight: u64 = o.ks.iter().map(|&k| sigma00_from_factors(k, &f)).sum();
                            let g = weight as f64 / (o.n * m) as f64;
                            let (op, om) = self.pair.pm(m as f64 * n2 / q3);
                            for (i, row) in o.rows.iter().enumerate() {
                                let sp = row.get(m as i64);
                                let sm = row.get(-(m as i64));
                                acc[i].add((op * sp + om * sm) * g);
                            }
                        }
                        acc
                    })
                    .collect();
                for p in &partials {
                    for (b, x) in block.iter_mut().zip(p) {
                        b.merge(x);
                    }
                }
            }
            let mut quiet = true;
            last_block = 0.0f64;
            for (i, b) in block.iter().enumerate() {
                let v = b.value() * pre;
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
        cs.iter()
            .enumerate()
            .map(|(i, &c)| {
                Ok(VoronoiReport::new(
                    q,
                    (c - 1).rem_euclid(q as i64) as u64 + 1,
                    y,
                    lhs[i],
                    totals[i].value(),
                    self.main_terms(c, q)?,
                    last_block,
                    terms,
                ))
            })
            .collect()
    }
}

/// One-off check with default tolerances.
pub fn d3_voronoi_check(c: i64, q: u64, weight: &SmoothWeight) -> Result<VoronoiReport> {
    D3Checker::new(*weight, q, 1e-12, D3Checker::default_tail())?.check(c, q)
}
