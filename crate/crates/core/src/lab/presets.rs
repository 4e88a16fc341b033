use crate::error::{Error, Result};

/// Which exponent to use for the `(rX)` factor in the plateau parameter.
///
/// The printed choice `(rX)^{7/(12 theta)}` diverges at `theta = 0`;
/// balancing the two error terms gives `(rX)^{7 theta / 12}` instead.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeltaReading {
    #[default]
    Corrected,
    AsPrinted,
}

/// The parameter choices for given `X, H, r, theta, delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Presets {
    pub x: f64,
    pub h: f64,
    pub r: u64,
    pub theta: f64,
    pub delta: f64,
    /// `Q = (rH)^{2/7} X^{3/7}`.
    pub q: f64,
    /// `eta = 1/(rX + H)`.
    pub eta: f64,
    /// `P = sqrt(6rX)`.
    pub p: f64,
    /// Plateau parameter `Delta` of the smoothed dyadic weight.
    pub plateau: f64,
    /// `Q Delta^{-5/7}`.
    pub q_smoothed: f64,
    pub reading: DeltaReading,
}

impl Presets {
    /// `sqrt(4rY + 2H)` for the dyadic block at `Y`.
    pub fn p_dyadic(&self, y: f64) -> f64 {
        (4.0 * self.r as f64 * y + 2.0 * self.h).sqrt()
    }

    /// Smallest `H` covered by the smooth-sum bound: `r^{5/2} X^{1/4 + 7 delta/2}`.
    pub fn h_min_smooth(&self) -> f64 {
        (self.r as f64).powf(2.5) * self.x.powf(0.25 + 3.5 * self.delta)
    }

    /// Smallest `H` covered by the sharp-sum bound:
    /// `r^{5/2} X^{1/4 + 6 delta} (rX)^{5 theta/2}`.
    pub fn h_min_sharp(&self) -> f64 {
        let rx = self.r as f64 * self.x;
        (self.r as f64).powf(2.5) * self.x.powf(0.25 + 6.0 * self.delta) * rx.powf(2.5 * self.theta)
    }

    /// `(rX)^{1/2}`, above which the averaged sums decay rapidly.
    pub fn h_rapid_decay(&self) -> f64 {
        (self.r as f64 * self.x).sqrt()
    }
}

pub fn presets(x: f64, h: f64, r: u64, theta: f64, delta: f64, reading: DeltaReading) -> Result<Presets> {
    if !(x > 0.0 && h > 0.0 && r >= 1 && theta >= 0.0 && delta >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "presets need positive X, H, r and nonnegative theta, delta; got {x}, {h}, {r}, {theta}, {delta}"
        )));
    }
    let rf = r as f64;
    let rx = rf * x;
    let q = (rf * h).powf(2.0 / 7.0) * x.powf(3.0 / 7.0);
    let theta_factor = match reading {
        DeltaReading::Corrected => rx.powf(7.0 * theta / 12.0),
        // theta -> 0: the factor is dropped
        DeltaReading::AsPrinted if theta == 0.0 => 1.0,
        DeltaReading::AsPrinted => rx.powf(7.0 / (12.0 * theta)),
    };
    let plateau = (h * x).powf(1.0 / 6.0) * theta_factor * (rf * rf * x).powf(-5.0 / 24.0);
    Ok(Presets {
        x,
        h,
        r,
        theta,
        delta,
        q,
        eta: 1.0 / (rx + h),
        p: (6.0 * rx).sqrt(),
        plateau,
        q_smoothed: q * plateau.powf(-5.0 / 7.0),
        reading,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitutions() {
        let x: f64 = 65536.0;
        let p = presets(x, x.sqrt(), 1, 0.0, 0.01, DeltaReading::Corrected).unwrap();
        assert!((p.q / x.powf(4.0 / 7.0) - 1.0).abs() < 1e-13);
        assert!((p.eta * (x + x.sqrt()) - 1.0).abs() < 1e-15);
        assert!((p.p * p.p / (6.0 * x) - 1.0).abs() < 1e-15);
        let y = x / 4.0;
        assert!((p.p_dyadic(y).powi(2) - (4.0 * y + 2.0 * x.sqrt())).abs() < 1e-9);
        assert!((p.q_smoothed - p.q * p.plateau.powf(-5.0 / 7.0)).abs() < 1e-12 * p.q);
    }

    #[test]
    fn readings_agree_at_theta_zero_only() {
        let (x, h) = (1e6, 3e3);
        let a = presets(x, h, 2, 0.0, 0.0, DeltaReading::Corrected).unwrap();
        let b = presets(x, h, 2, 0.0, 0.0, DeltaReading::AsPrinted).unwrap();
        assert_eq!(a.plateau, b.plateau);
        // (HX)^{1/6} (r^2 X)^{-5/24} = H^{1/6} X^{-1/24} r^{-5/12}
        let expect = h.powf(1.0 / 6.0) * x.powf(-1.0 / 24.0) * 2f64.powf(-5.0 / 12.0);
        assert!((a.plateau / expect - 1.0).abs() < 1e-13);
        let c = presets(x, h, 2, 7.0 / 64.0, 0.0, DeltaReading::Corrected).unwrap();
        let d = presets(x, h, 2, 7.0 / 64.0, 0.0, DeltaReading::AsPrinted).unwrap();
        assert!((c.plateau / a.plateau - (2.0 * x).powf(7.0 * 7.0 / (64.0 * 12.0))).abs() < 1e-12);
        assert!(d.plateau > 1e6 * c.plateau);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(presets(0.0, 1.0, 1, 0.0, 0.0, DeltaReading::Corrected).is_err());
        assert!(presets(10.0, 1.0, 0, 0.0, 0.0, DeltaReading::Corrected).is_err());
    }
}
