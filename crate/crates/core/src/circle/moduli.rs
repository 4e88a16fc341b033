use num_rational::Ratio;

use super::Rational;
use crate::arith::{euler_phi, gcd, is_prime};
use crate::error::{Error, Result};

/// Moduli `q` together with `L = sum phi(q)` and the parameters `Q`, `eta`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuliSet {
    pub members: Vec<u64>,
    pub l: u64,
    pub q: f64,
    pub eta: f64,
    eta_exact: Rational,
}

/// `eta` as an exact rational with a denominator below `2^60`.
///
/// Dyadic floats (such as `Q^{-2}` for `Q` a power of two) convert exactly;
/// otherwise the closest continued-fraction convergent is used, and it must
/// round back to the same float.
pub fn exact_eta(eta: f64) -> Result<Rational> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::InvalidArgument(format!("eta must be positive, got {eta}")));
    }
    let r = Ratio::<i64>::approximate_float(eta)
        .filter(|r| *r.denom() < (1i64 << 60))
        .ok_or_else(|| Error::InvalidArgument(format!("eta = {eta} has no usable rational form")))?;
    if *r.numer() as f64 / *r.denom() as f64 != eta {
        return Err(Error::InvalidArgument(format!("eta = {eta} is not representable exactly")));
    }
    Ok(Rational::new(*r.numer() as i128, *r.denom() as i128))
}

impl ModuliSet {
    /// Arbitrary members in `[1, Q]`, with `Q^{-2} <= eta <= Q^{-1}`.
    pub fn from_members(mut members: Vec<u64>, q: f64, eta: f64) -> Result<Self> {
        if !(q >= 1.0) {
            return Err(Error::InvalidArgument(format!("Q must be at least 1, got {q}")));
        }
        if eta < q.powi(-2) * (1.0 - 1e-15) || eta > q.recip() * (1.0 + 1e-15) {
            return Err(Error::InvalidArgument(format!("eta = {eta} outside [Q^-2, Q^-1] for Q = {q}")));
        }
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidArgument("moduli set is empty".into()));
        }
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m as f64 > q) {
            return Err(Error::InvalidArgument(format!("modulus {bad} outside [1, {q}]")));
        }
        let l = members.iter().map(|&m| euler_phi(m)).sum();
        Ok(Self {
            members,
            l,
            q,
            eta,
            eta_exact: exact_eta(eta)?,
        })
    }

    pub fn eta_exact(&self) -> Rational {
        self.eta_exact
    }

    /// Recomputes `L` from the members.
    pub fn recompute_l(&self) -> u64 {
        self.members.iter().map(|&m| euler_phi(m)).sum()
    }
}

/// Primes in `[Q/2, Q]` coprime to `r`.
pub fn build_moduli_set(q: f64, r: u64, eta: f64) -> Result<ModuliSet> {
    if !(q >= 2.0) || !q.is_finite() {
        return Err(Error::InvalidArgument(format!("Q must be at least 2, got {q}")));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let lo = (q / 2.0).ceil() as u64;
    let hi = q.floor() as u64;
    let members: Vec<u64> = (lo..=hi).filter(|&p| is_prime(p) && gcd(p, r) == 1).collect();
    if members.is_empty() {
        return Err(Error::EmptyModuliSet { lo: q / 2.0, hi: q, r });
    }
    ModuliSet::from_members(members, q, eta)
}
