//! On-demand coefficient sources for the GL(3) side.

use crate::arith::{divisors, gcd, mobius, SieveTable};
use crate::error::{Error, Result};

use super::table::CoefficientTable;

/// A source of `lambda(n) = A(1, n)` and the two-index coefficients
/// `A(m, n)` used by dual sums. Answers must be deterministic.
pub trait CoefficientOracle: Sync {
    fn lambda(&self, n: u64) -> Result<f64>;

    fn coefficient(&self, m: u64, n: u64) -> Result<f64>;

    /// Largest `n` for which `lambda(n)` is available (`u64::MAX` if unbounded).
    fn range(&self) -> u64 {
        u64::MAX
    }
}

/// Every coefficient is zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroOracle;

impl CoefficientOracle for ZeroOracle {
    fn lambda(&self, _n: u64) -> Result<f64> {
        Ok(0.0)
    }

    fn coefficient(&self, _m: u64, _n: u64) -> Result<f64> {
        Ok(0.0)
    }
}

/// `d_3` viewed as the coefficients of the minimal Eisenstein series:
/// `A(m, n) = sum_{d | (m, n)} mu(d) d_3(m/d) d_3(n/d)`.
#[derive(Clone, Debug)]
pub struct DivisorCubeOracle {
    table: Option<SieveTable>,
}

impl DivisorCubeOracle {
    /// Computes `d_3` by factorization on every query.
    pub fn new() -> Self {
        Self { table: None }
    }

    /// Uses a precomputed sieve where it covers the argument.
    pub fn with_table(table: SieveTable) -> Self {
        Self { table: Some(table) }
    }

    fn d3(&self, n: u64) -> f64 {
        if let Some(t) = &self.table {
            if (n as usize) <= t.limit() {
                return t.get(n as usize) as f64;
            }
        }
        crate::arith::factorize(n)
            .iter()
            .map(|&(_, a)| ((a + 1) * (a + 2) / 2) as f64)
            .product()
    }
}

impl Default for DivisorCubeOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl CoefficientOracle for DivisorCubeOracle {
    fn lambda(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::OracleGap(1, 0));
        }
        Ok(self.d3(n))
    }

    fn coefficient(&self, m: u64, n: u64) -> Result<f64> {
        if m == 0 || n == 0 {
            return Err(Error::OracleGap(m, n));
        }
        let g = gcd(m, n);
        Ok(divisors(g)
            .into_iter()
            .map(|d| mobius(d) as f64 * self.d3(m / d) * self.d3(n / d))
            .sum())
    }
}

/// `lambda(n)` from a table; `A(m, n)` only on the `m = 1` or `n = 1` row.
#[derive(Clone, Debug)]
pub struct TableOracle {
    table: CoefficientTable,
}

impl TableOracle {
    pub fn new(table: CoefficientTable) -> Result<Self> {
        table.values()?;
        Ok(Self { table })
    }
}

impl CoefficientOracle for TableOracle {
    fn lambda(&self, n: u64) -> Result<f64> {
        if n == 0 || n as usize > self.table.limit() {
            return Err(Error::OracleGap(1, n));
        }
        Ok(self.table.value(n as usize))
    }

    fn coefficient(&self, m: u64, n: u64) -> Result<f64> {
        match (m, n) {
            (1, k) | (k, 1) => self.lambda(k),
            _ => Err(Error::OracleGap(m, n)),
        }
    }

    fn range(&self) -> u64 {
        self.table.limit() as u64
    }
}
