//! Truncation points for Voronoi dual sums.
//!
//! Each window says a dual term is negligible once its argument passes a
//! threshold. With `epsilon` and a safety factor these become an index `M`
//! beyond which the dual terms are dropped. The windows are asymptotic;
//! callers at small scale should confirm the tail numerically.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CutoffKind {
    /// GL(2): `Psi(m / q^2)` negligible once `yY >> Y^eps`.
    Gl2,
    /// GL(3), derivative bound `P` given through `py = P Y`:
    /// `Phi(n1^2 n2 / q^3)` negligible once `yY >> Y^eps (PY)^3`.
    Gl3 { py: f64 },
    /// `d_3` with a `Delta`-smoothed weight: negligible once
    /// `n^2 l >> q^3 Delta^3 (qY)^eps / Y`.
    D3 { delta: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CutoffParams {
    pub epsilon: f64,
    pub safety: f64,
}

impl Default for CutoffParams {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            safety: 10.0,
        }
    }
}

/// Unrounded bound on the dual variable (`m`, `n2` or `l`) for outer divisor 1.
pub fn dual_cutoff_real(q: u64, scale: f64, kind: CutoffKind, params: CutoffParams) -> Result<f64> {
    if q == 0 || !(scale > 0.0) || !(params.epsilon > 0.0) || !(params.safety > 0.0) {
        return Err(Error::InvalidArgument("dual_cutoff needs positive inputs".into()));
    }
    let qf = q as f64;
    let s = params.safety;
    let eps = params.epsilon;
    Ok(match kind {
        CutoffKind::Gl2 => s * scale.powf(eps) * qf * qf / scale,
        CutoffKind::Gl3 { py } => {
            if !(py > 0.0) {
                return Err(Error::InvalidArgument("P Y must be positive".into()));
            }
            s * scale.powf(eps) * py.powi(3) * qf.powi(3) / scale
        }
        CutoffKind::D3 { delta } => {
            if !(delta > 0.0) {
                return Err(Error::InvalidArgument("Delta must be positive".into()));
            }
            s * (qf * scale).powf(eps) * delta.powi(3) * qf.powi(3) / scale
        }
    })
}

/// `M = ceil(dual_cutoff_real)`, at least 1.
pub fn dual_cutoff(q: u64, scale: f64, kind: CutoffKind, params: CutoffParams) -> Result<u64> {
    Ok((dual_cutoff_real(q, scale, kind, params)?.ceil() as u64).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instantiation_and_scaling_laws() {
        let p = CutoffParams::default();
        let y = 1e4;
        let m = dual_cutoff(1, y, CutoffKind::Gl3 { py: 1.0 }, p).unwrap();
        assert_eq!(m, (10.0 * y.powf(0.1) / y).ceil() as u64);
        assert_eq!(m, 1);
        let r1 = dual_cutoff_real(3, y, CutoffKind::Gl3 { py: 1.0 }, p).unwrap();
        let r2 = dual_cutoff_real(6, y, CutoffKind::Gl3 { py: 1.0 }, p).unwrap();
        assert!((r2 / r1 - 8.0).abs() < 1e-12);
        let big = |q| dual_cutoff(q, 100.0, CutoffKind::Gl3 { py: 2.0 }, p).unwrap();
        assert_eq!(big(20) as f64 / big(10) as f64, 8.0);
        let d1 = dual_cutoff_real(5, y, CutoffKind::D3 { delta: 1.0 }, p).unwrap();
        let d2 = dual_cutoff_real(5, y, CutoffKind::D3 { delta: 2.0 }, p).unwrap();
        assert!((d2 / d1 - 8.0).abs() < 1e-12);
        assert!(dual_cutoff(0, y, CutoffKind::Gl2, p).is_err());
    }
}
