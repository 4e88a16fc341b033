//! Ramanujan `tau(n)` from `Delta = q * prod (1 - q^n)^24 = q * (eta^3)^8`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ntt::{primes_for_bits, reconstruct_signed, Modulus, MAX_LOG_LEN, NTT_PRIMES};
use super::table::{normalize, CoefficientTable, Exponent};
use crate::arith::{gcd, is_prime, DEFAULT_ENTRY_BUDGET};
use crate::error::{Error, Result};

/// Coefficients of `eta^3 / q^{1/8} = sum_k (-1)^k (2k+1) q^{k(k+1)/2}`, up to `q^{len-1}`.
pub fn eta_cubed(len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    let mut k = 0usize;
    while k * (k + 1) / 2 < len {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out[k * (k + 1) / 2] = sign * (2 * k as i64 + 1);
        k += 1;
    }
    out
}

/// Bits needed so the prime product exceeds `2 N^6 d(N)`.
fn coefficient_bits(limit: usize) -> f64 {
    let n = limit.max(2) as f64;
    // d(n) <= 2 sqrt(n)
    1.0 + 6.0 * n.log2() + 1.0 + 0.5 * n.log2()
}

pub fn build_tau_table(limit: usize) -> Result<CoefficientTable> {
    build_tau_table_within(limit, DEFAULT_ENTRY_BUDGET)
}

/// Exact `tau(n)` for `1 <= n <= limit`, normalized by `n^{11/2}`.
pub fn build_tau_table_within(limit: usize, budget: usize) -> Result<CoefficientTable> {
    if limit == 0 {
        return Err(Error::InvalidArgument("tau table limit must be >= 1".into()));
    }
    if limit > budget {
        return Err(Error::Capacity {
            what: "tau table",
            requested: limit,
            budget,
        });
    }
    if (2 * limit).next_power_of_two() > 1usize << MAX_LOG_LEN {
        return Err(Error::Capacity {
            what: "tau table (NTT length)",
            requested: limit,
            budget: 1 << (MAX_LOG_LEN - 1),
        });
    }
    let nprimes = primes_for_bits(coefficient_bits(limit));
    if nprimes > NTT_PRIMES.len() {
        return Err(Error::Capacity {
            what: "tau table (CRT primes)",
            requested: limit,
            budget: 0,
        });
    }
    let base = eta_cubed(limit);
    // eta^24 / q mod each prime: three squarings of eta^3 -> eta^6 -> eta^12 -> eta^24.
    let residues: Vec<Vec<u64>> = NTT_PRIMES[..nprimes]
        .par_iter()
        .map(|&(p, g)| {
            let m = Modulus::new(p, g);
            let mut poly: Vec<u64> = base.iter().map(|&x| m.from_i64(x)).collect();
            for _ in 0..3 {
                poly = m.square_truncated(&poly, limit);
            }
            poly.into_iter().map(|x| m.from_mont(x)).collect()
        })
        .collect();
    let exact: Vec<BigInt> = (0..limit)
        .into_par_iter()
        .map(|i| {
            let r: Vec<u64> = residues.iter().map(|v| v[i]).collect();
            reconstruct_signed(&r)
        })
        .collect();
    let table = normalize(&CoefficientTable::from_exact("tau", exact), Exponent::TAU)?;
    check_deligne(&table)?;
    Ok(table)
}

/// Fails if `|tau(p) / p^{11/2}| > 2` for some prime `p <= N`.
pub fn check_deligne(table: &CoefficientTable) -> Result<()> {
    let norm = table.values()?;
    for p in 2..=table.limit() {
        if is_prime(p as u64) && norm[p].abs() > 2.0 + 1e-12 {
            return Err(Error::Internal(format!(
                "Deligne bound violated at p = {p}: |a(p)| = {}",
                norm[p].abs()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum HeckeFailure {
    /// `a(p^2) != a(p)^2 - p^{k-1}`
    PrimeSquare { p: usize },
    /// `a(mn) != a(m) a(n)` for coprime `m, n`
    Coprime { m: usize, n: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeckeReport {
    pub prime_squares_checked: usize,
    pub coprime_pairs_checked: usize,
    pub first_failure: Option<HeckeFailure>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks the weight-12 Hecke relations on the exact values.
pub fn hecke_validate(table: &CoefficientTable) -> Result<HeckeReport> {
    hecke_validate_weight(table, 12)
}

pub fn hecke_validate_weight(table: &CoefficientTable, weight: u32) -> Result<HeckeReport> {
    let exact = table
        .exact_raw()
        .ok_or_else(|| Error::InvalidArgument("Hecke validation needs exact values".into()))?;
    let n = table.limit();
    let mut report = HeckeReport {
        prime_squares_checked: 0,
        coprime_pairs_checked: 0,
        first_failure: None,
    };
    let mut p = 2usize;
    while p * p <= n {
        if is_prime(p as u64) {
            let expect = &exact[p] * &exact[p] - BigInt::from(p).pow(weight - 1);
            report.prime_squares_checked += 1;
            if exact[p * p] != expect {
                report.first_failure = Some(HeckeFailure::PrimeSquare { p });
                return Ok(report);
            }
        }
        p += 1;
    }
    if n >= 6 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut attempts = 0;
        while report.coprime_pairs_checked < 100 && attempts < 100_000 {
            attempts += 1;
            let a = rng.gen_range(2..=n / 2);
            let b = rng.gen_range(2..=(n / a).max(2));
            if a * b > n || gcd(a as u64, b as u64) != 1 {
                continue;
            }
            report.coprime_pairs_checked += 1;
            if exact[a * b] != &exact[a] * &exact[b] {
                report.first_failure = Some(HeckeFailure::Coprime { m: a, n: b });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Fraction of primes up to `N` where the exact value is zero (sanity statistic).
pub fn zero_fraction_at_primes(table: &CoefficientTable) -> f64 {
    let Some(exact) = table.exact_raw() else {
        return f64::NAN;
    };
    let primes: Vec<usize> = (2..=table.limit()).filter(|&p| is_prime(p as u64)).collect();
    if primes.is_empty() {
        return 0.0;
    }
    primes.iter().filter(|&&p| exact[p].is_zero()).count() as f64 / primes.len() as f64
}

/// Exact value as `f64`, for diagnostics.
pub fn tau_f64(table: &CoefficientTable, n: usize) -> Option<f64> {
    table.exact(n).and_then(|v| v.to_f64())
}
