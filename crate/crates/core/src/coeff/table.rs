use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::arith::SieveTable;
use crate::error::{Error, Result};

/// Exponent `num/den` used to normalize coefficients by `n^{num/den}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { num: 0, den: 1 };
    /// `(k - 1) / 2` for the weight-12 discriminant form.
    pub const TAU: Exponent = Exponent { num: 11, den: 2 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::InvalidArgument("exponent denominator must be positive".into()));
        }
        let g = num_integer::gcd(num, den).max(1);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Arithmetic-function values on `1..=limit`, exact and/or normalized.
///
/// Index `n` of either array holds the value at `n`; index 0 is unused.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTable {
    label: String,
    limit: usize,
    exact: Option<Vec<BigInt>>,
    normalized: Option<Vec<f64>>,
    exponent: Exponent,
}

impl CoefficientTable {
    /// Table from exact values `values[0] = f(1), ..., values[N-1] = f(N)`.
    pub fn from_exact(label: impl Into<String>, values: Vec<BigInt>) -> Self {
        let limit = values.len();
        let mut exact = Vec::with_capacity(limit + 1);
        exact.push(BigInt::from(0));
        exact.extend(values);
        Self {
            label: label.into(),
            limit,
            exact: Some(exact),
            normalized: None,
            exponent: Exponent::ZERO,
        }
    }

    /// Table from normalized values `values[0] = f(1), ...`.
    pub fn from_normalized(label: impl Into<String>, values: Vec<f64>, exponent: Exponent) -> Self {
        let limit = values.len();
        let mut normalized = Vec::with_capacity(limit + 1);
        normalized.push(0.0);
        normalized.extend(values);
        Self {
            label: label.into(),
            limit,
            exact: None,
            normalized: Some(normalized),
            exponent,
        }
    }

    /// Exact table (with identity normalization) from a sieve.
    pub fn from_sieve(label: impl Into<String>, sieve: &SieveTable) -> Self {
        let mut t = Self::from_exact(label, sieve.values().iter().map(|&v| BigInt::from(v)).collect());
        t.normalized = Some(std::iter::once(0.0).chain(sieve.values().iter().map(|&v| v as f64)).collect());
        t
    }

    pub(crate) fn from_parts(
        label: String,
        limit: usize,
        exact: Option<Vec<BigInt>>,
        normalized: Option<Vec<f64>>,
        exponent: Exponent,
    ) -> Self {
        Self {
            label,
            limit,
            exact,
            normalized,
            exponent,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn has_normalized(&self) -> bool {
        self.normalized.is_some()
    }

    pub fn exact(&self, n: usize) -> Option<&BigInt> {
        self.exact.as_ref().map(|v| &v[n])
    }

    pub(crate) fn exact_raw(&self) -> Option<&[BigInt]> {
        self.exact.as_deref()
    }

    #[cfg(test)]
    pub(crate) fn exact_raw_mut(&mut self) -> Option<&mut Vec<BigInt>> {
        self.exact.as_mut()
    }

    pub(crate) fn normalized_raw(&self) -> Option<&[f64]> {
        self.normalized.as_deref()
    }

    /// Normalized value at `n`; panics when absent or out of range.
    pub fn value(&self, n: usize) -> f64 {
        assert!(n >= 1 && n <= self.limit, "{} has no entry {n}", self.label);
        self.normalized.as_ref().expect("normalized values")[n]
    }

    /// Normalized values indexed by `n` (index 0 is a placeholder zero).
    pub fn values(&self) -> Result<&[f64]> {
        self.normalized
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("table '{}' has no normalized values", self.label)))
    }

    pub fn require(&self, needed: usize) -> Result<()> {
        if needed > self.limit {
            Err(Error::RangeNotCovered {
                label: self.label.clone(),
                needed,
                available: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Copy restricted to `1..=n`.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        self.require(n)?;
        Ok(Self {
            label: self.label.clone(),
            limit: n,
            exact: self.exact.as_ref().map(|v| v[..=n].to_vec()),
            normalized: self.normalized.as_ref().map(|v| v[..=n].to_vec()),
            exponent: self.exponent,
        })
    }

    /// Largest relative disagreement between the two arrays, if both exist.
    pub fn consistency_error(&self) -> Option<f64> {
        let (exact, norm) = (self.exact.as_ref()?, self.normalized.as_ref()?);
        let e = self.exponent.value();
        let worst = (1..=self.limit)
            .map(|n| {
                let expect = exact[n].to_f64().unwrap_or(f64::NAN) * (n as f64).powf(-e);
                if expect == 0.0 {
                    norm[n].abs()
                } else {
                    ((norm[n] - expect) / expect).abs()
                }
            })
            .fold(0.0, f64::max);
        Some(worst)
    }
}

/// Adds `normalized[n] = exact[n] * n^{-exponent}` to an exact table.
pub fn normalize(table: &CoefficientTable, exponent: Exponent) -> Result<CoefficientTable> {
    let exact = table
        .exact
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument(format!("table '{}' has no exact values", table.label)))?;
    let e = exponent.value();
    let normalized = exact
        .iter()
        .enumerate()
        .map(|(n, v)| {
            if n == 0 {
                return 0.0;
            }
            let x = v.to_f64().unwrap_or(if v.is_negative() { f64::MIN } else { f64::MAX });
            if exponent.num == 0 {
                x
            } else {
                x * (n as f64).powf(-e)
            }
        })
        .collect();
    Ok(CoefficientTable {
        label: table.label.clone(),
        limit: table.limit,
        exact: table.exact.clone(),
        normalized: Some(normalized),
        exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_examples() {
        let t = CoefficientTable::from_exact("tau", vec![1, -24, 252].into_iter().map(BigInt::from).collect());
        let n = normalize(&t, Exponent::TAU).unwrap();
        assert_eq!(n.value(1), 1.0);
        assert!((n.value(2) - (-24.0 / 2f64.powf(5.5))).abs() < 1e-15);
        let id = normalize(&t, Exponent::ZERO).unwrap();
        assert_eq!(id.value(3), 252.0);
        assert!(n.consistency_error().unwrap() < 1e-12);
    }

    #[test]
    fn normalize_requires_exact_values() {
        let t = CoefficientTable::from_normalized("x", vec![1.0], Exponent::ZERO);
        assert!(normalize(&t, Exponent::TAU).is_err());
    }

    #[test]
    fn exponent_is_reduced() {
        assert_eq!(Exponent::new(22, 4).unwrap(), Exponent::TAU);
        assert!(Exponent::new(1, 0).is_err());
    }

    #[test]
    fn range_check() {
        let t = CoefficientTable::from_normalized("x", vec![1.0; 10], Exponent::ZERO);
        assert!(t.require(10).is_ok());
        assert!(matches!(t.require(11), Err(Error::RangeNotCovered { needed: 11, .. })));
    }
}
