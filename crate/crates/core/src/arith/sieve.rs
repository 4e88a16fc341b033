use crate::error::{Error, Result};

/// Default cap on sieve entries.
pub const DEFAULT_ENTRY_BUDGET: usize = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SieveKind {
    D3,
    DivisorCount,
    Mobius,
}

/// Exact values of an arithmetic function on `1..=limit`.
///
/// `values[0]` is a placeholder; index `n` holds the value at `n`.
#[derive(Clone, Debug)]
pub struct SieveTable {
    kind: SieveKind,
    limit: usize,
    values: Vec<i32>,
}

impl SieveTable {
    pub fn kind(&self) -> SieveKind {
        self.kind
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn get(&self, n: usize) -> i32 {
        assert!(n >= 1 && n <= self.limit, "index {n} outside 1..={}", self.limit);
        self.values[n]
    }

    /// Values on `1..=limit`.
    pub fn values(&self) -> &[i32] {
        &self.values[1..]
    }
}

fn check_budget(what: &'static str, n: usize, budget: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what}: limit must be >= 1")));
    }
    if n > budget {
        return Err(Error::Capacity {
            what,
            requested: n,
            budget,
        });
    }
    Ok(())
}

pub fn sieve_d3(n: usize) -> Result<SieveTable> {
    sieve_d3_within(n, DEFAULT_ENTRY_BUDGET)
}

/// `d_3 = (1 * 1) * 1` by two divisor-convolution passes.
pub fn sieve_d3_within(n: usize, budget: usize) -> Result<SieveTable> {
    check_budget("d3 sieve", n, budget)?;
    let mut d2 = vec![0i32; n + 1];
    for i in 1..=n {
        for j in (i..=n).step_by(i) {
            d2[j] += 1;
        }
    }
    let mut d3 = vec![0i32; n + 1];
    for i in 1..=n {
        let di = d2[i];
        for j in (i..=n).step_by(i) {
            d3[j] += di;
        }
    }
    Ok(SieveTable {
        kind: SieveKind::D3,
        limit: n,
        values: d3,
    })
}

pub fn sieve_multiplicative(kind: SieveKind, n: usize) -> Result<SieveTable> {
    sieve_multiplicative_within(kind, n, DEFAULT_ENTRY_BUDGET)
}

/// Linear sieve for the divisor count or the Möbius function.
pub fn sieve_multiplicative_within(kind: SieveKind, n: usize, budget: usize) -> Result<SieveTable> {
    if kind == SieveKind::D3 {
        return sieve_d3_within(n, budget);
    }
    check_budget("multiplicative sieve", n, budget)?;
    let mut values = vec![0i32; n + 1];
    // exponent of the smallest prime factor, for the divisor count
    let mut spf_exp = vec![0u32; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    values[1] = 1;
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            spf_exp[i] = 1;
            values[i] = match kind {
                SieveKind::Mobius => -1,
                _ => 2,
            };
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                match kind {
                    SieveKind::Mobius => values[ip] = 0,
                    _ => {
                        let a = spf_exp[i];
                        spf_exp[ip] = a + 1;
                        values[ip] = values[i] / (a as i32 + 1) * (a as i32 + 2);
                    }
                }
                break;
            }
            spf_exp[ip] = 1;
            values[ip] = match kind {
                SieveKind::Mobius => -values[i],
                _ => values[i] * 2,
            };
        }
    }
    Ok(SieveTable {
        kind,
        limit: n,
        values,
    })
}

/// Smallest-prime-factor table for fast factorization of `n <= limit`.
#[derive(Clone, Debug)]
pub struct FactorSieve {
    spf: Vec<u32>,
}

impl FactorSieve {
    pub fn new(limit: usize) -> Result<Self> {
        check_budget("factor sieve", limit.max(1), DEFAULT_ENTRY_BUDGET)?;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                for j in (i..=limit).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        Ok(Self { spf })
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn factorize(&self, mut n: usize) -> Vec<(u64, u32)> {
        assert!(n >= 1 && n <= self.limit());
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p as u64, k));
        }
        out
    }
}
