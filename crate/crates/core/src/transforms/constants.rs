//! Euler's constant and the first Stieltjes constant by Euler-Maclaurin.

use std::sync::OnceLock;

use crate::arith::CompensatedSum;

/// `B_{2j}` for `j = 1..=8`.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Constant term of `sum_{k <= N} f(k) - int_1^N f` for `f(x) = (log x)^p / x`
/// (`p` = 0 or 1), with the Euler-Maclaurin tail at `N` subtracted.
fn em_constant(p: u32, n: u64) -> f64 {
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        let x = k as f64;
        acc.add_real(x.ln().powi(p as i32) / x);
    }
    let x = n as f64;
    let lx = x.ln();
    let integral = if p == 0 { lx } else { 0.5 * lx * lx };
    let f_n = lx.powi(p as i32) / x;
    acc.add_real(-integral);
    acc.add_real(-0.5 * f_n);
    // f^{(m)}(x) = (-1)^m m! (log x - H_m)^p / x^{m+1}, with p in {0, 1}
    for (j, b) in BERNOULLI.iter().enumerate() {
        let m = 2 * j as u32 + 1;
        let harmonic: f64 = (1..=m).map(|i| 1.0 / i as f64).sum();
        let deriv = -factorial(m) * if p == 0 { 1.0 } else { lx - harmonic } / x.powi(m as i32 + 1);
        acc.add_real(-b / factorial(m + 1) * deriv);
    }
    acc.value().re
}

pub fn euler_gamma_at_depth(n: u64) -> f64 {
    em_constant(0, n)
}

pub fn stieltjes_gamma1_at_depth(n: u64) -> f64 {
    em_constant(1, n)
}

static CONSTANTS: OnceLock<(f64, f64)> = OnceLock::new();

/// `(gamma, gamma_1)`, evaluated once per process.
pub fn constants() -> (f64, f64) {
    *CONSTANTS.get_or_init(|| (euler_gamma_at_depth(2000), stieltjes_gamma1_at_depth(2000)))
}

pub fn euler_gamma() -> f64 {
    constants().0
}

pub fn stieltjes_gamma1() -> f64 {
    constants().1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_depths_agree() {
        assert!((euler_gamma_at_depth(1000) - euler_gamma_at_depth(3000)).abs() < 1e-13);
        assert!((stieltjes_gamma1_at_depth(1000) - stieltjes_gamma1_at_depth(3000)).abs() < 1e-13);
        let (g, g1) = constants();
        assert!((g - 0.5772156649015329).abs() < 1e-13);
        assert!((g1 + 0.0728158454836767).abs() < 1e-13);
    }

    /// `zeta(s)` for real `s > 1` by Euler-Maclaurin at a fixed cut.
    fn zeta(s: f64) -> f64 {
        let n = 50u32;
        let mut sum: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
        let x = n as f64;
        sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
        // B_2/2! s x^{-s-1} + B_4/4! s(s+1)(s+2) x^{-s-3} + ...
        let mut rising = s;
        let mut power = -s - 1.0;
        for (j, b) in BERNOULLI.iter().enumerate() {
            let m = 2 * j as u32 + 2;
            sum += b / factorial(m) * rising * x.powf(power);
            rising *= (s + m as f64 - 1.0) * (s + m as f64);
            power -= 2.0;
        }
        sum
    }

    #[test]
    fn laurent_expansion_near_one() {
        let (g, g1) = constants();
        let s = 1.01;
        let lhs = zeta(s) - 1.0 / (s - 1.0);
        // next term is gamma_2 (s-1)^2 / 2 with |gamma_2| < 0.01
        assert!((lhs - (g - g1 * (s - 1.0))).abs() < 1e-6);
        assert!((zeta(2.0) - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    }
}
