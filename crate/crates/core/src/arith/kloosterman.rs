use super::exp::{e_frac, CompensatedSum};
use super::modular::{divisors, factorize, gcd, mobius, mod_inverse};

/// Table of `x -> x^{-1} mod c` for the reduced residues `x` in `[0, c)`.
fn inverse_table(c: u64) -> Vec<(u64, u64)> {
    (0..c)
        .filter(|&x| gcd(x, c) == 1)
        .map(|x| (x, mod_inverse(x as i64, c).expect("coprime").value()))
        .collect()
}

const IMAG_LIMIT: f64 = 1e-9;

/// Classical Kloosterman sum `S(m, n; c)` by direct enumeration.
pub fn kloosterman(m: i64, n: i64, c: u64) -> f64 {
    assert!(c >= 1, "Kloosterman modulus must be positive");
    let total: CompensatedSum = inverse_table(c)
        .into_iter()
        .map(|(x, xb)| e_frac(m as i128 * x as i128 + n as i128 * xb as i128, c))
        .collect();
    let z = total.value();
    assert!(
        z.im.abs() < IMAG_LIMIT,
        "Kloosterman sum S({m},{n};{c}) has imaginary part {}",
        z.im
    );
    z.re
}

/// `S(m, n; c)` for every `m mod c` with `n` fixed, sharing one inverse table.
#[derive(Clone, Debug)]
pub struct KloostermanRow {
    modulus: u64,
    values: Vec<f64>,
}

impl KloostermanRow {
    pub fn new(n: i64, c: u64) -> Self {
        let inv = inverse_table(c);
        let values = (0..c)
            .map(|m| {
                let total: CompensatedSum = inv
                    .iter()
                    .map(|&(x, xb)| e_frac(m as i128 * x as i128 + n as i128 * xb as i128, c))
                    .collect();
                total.value().re
            })
            .collect();
        Self { modulus: c, values }
    }

    /// `S(m, n; c)` for arbitrary integer `m`.
    pub fn get(&self, m: i64) -> f64 {
        self.values[m.rem_euclid(self.modulus as i64) as usize]
    }
}

/// Ramanujan sum `c_q(m) = sum_{d | (m, q)} d mu(q / d)`, exact.
pub fn ramanujan_sum(m: i64, q: u64) -> i64 {
    assert!(q >= 1);
    let g = gcd(m.unsigned_abs(), q);
    divisors(g)
        .into_iter()
        .map(|d| d as i64 * mobius(q / d))
        .sum()
}

/// `sigma_{0,0}(k, l)`: pairs `d1 | l`, `d2 | l/d1` with `(d2, k) = 1`, by enumeration.
pub fn sigma00(k: u64, l: u64) -> u64 {
    assert!(k >= 1 && l >= 1);
    divisors(l)
        .into_iter()
        .map(|d1| {
            divisors(l / d1)
                .into_iter()
                .filter(|&d2| gcd(d2, k) == 1)
                .count() as u64
        })
        .sum()
}

/// `sigma_{0,0}(k, l)` from the factorization of `l`: the local factor at
/// `p^a || l` is `a + 1` when `p | k` and `(a+1)(a+2)/2` otherwise.
pub fn sigma00_from_factors(k: u64, factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .map(|&(p, a)| {
            let a = u64::from(a);
            if k % p == 0 {
                a + 1
            } else {
                (a + 1) * (a + 2) / 2
            }
        })
        .product()
}

pub fn sigma00_factored(k: u64, l: u64) -> u64 {
    sigma00_from_factors(k, &factorize(l))
}
