use crate::error::{Error, Result};

/// A residue class `value mod modulus` with `0 <= value < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(a: i128, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        Ok(Self {
            value: a.rem_euclid(modulus as i128) as u64,
            modulus,
        })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

/// Multiplicative inverse of `a` modulo `q`.
pub fn mod_inverse(a: i64, q: u64) -> Result<Residue> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let m = q as i128;
    let (mut r0, mut r1) = (m, (a as i128).rem_euclid(m));
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    if r0 != 1 && q != 1 {
        return Err(Error::NotCoprime { a, modulus: q });
    }
    Residue::new(s0, q)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization by trial division, as `(p, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, k)| u64::from(k) + 1).product()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_inverse(a: i64, q: u64) -> Option<u64> {
        (0..q).find(|&x| ((a as i128 * x as i128).rem_euclid(q as i128)) == 1 % q as i128)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap().value(), 1);
        assert_eq!(mod_inverse(2, 5).unwrap().value(), 3);
        assert_eq!(brute_inverse(5, 12), Some(5));
        assert_eq!(mod_inverse(5, 12).unwrap().value(), 5);
        assert_eq!(mod_inverse(-3, 7).unwrap().value(), 2);
    }

    #[test]
    fn inverse_rejects_non_coprime() {
        assert!(matches!(
            mod_inverse(4, 6),
            Err(Error::NotCoprime { a: 4, modulus: 6 })
        ));
    }

    #[test]
    fn inverse_matches_brute_force() {
        for q in 1..60u64 {
            for a in -30i64..30 {
                let ok = gcd(a.unsigned_abs(), q) == 1;
                match mod_inverse(a, q) {
                    Ok(r) => {
                        assert!(ok);
                        assert_eq!(Some(r.value()), brute_inverse(a, q).or(Some(0)));
                    }
                    Err(_) => assert!(!ok),
                }
            }
        }
    }

    #[test]
    fn small_arithmetic_functions() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }
}
