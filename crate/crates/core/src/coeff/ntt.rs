//! Number-theoretic transforms modulo word-size primes `p = c * 2^26 + 1`,
//! with exact integer reconstruction by Garner's mixed-radix CRT.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Primes `p < 2^62` with `p = 1 mod 2^26`, each with a primitive root.
pub const NTT_PRIMES: [(u64, u64); 6] = [
    (4611686017554972673, 5),
    (4611686015004835841, 3),
    (4611686009971671041, 6),
    (4611686007555751937, 3),
    (4611686007488643073, 5),
    (4611686007085989889, 22),
];

pub const MAX_LOG_LEN: u32 = 26;

/// Arithmetic modulo one NTT prime, in Montgomery form with `R = 2^64`.
#[derive(Clone, Copy, Debug)]
pub struct Modulus {
    p: u64,
    p_neg_inv: u64,
    r2: u64,
    generator: u64,
}

impl Modulus {
    pub fn new(p: u64, generator: u64) -> Self {
        assert!(p % 2 == 1 && p < (1 << 62));
        // Newton iteration for p^{-1} mod 2^64
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Self {
            p,
            p_neg_inv: inv.wrapping_neg(),
            r2,
            generator,
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        self.to_mont(a.rem_euclid(self.p as i64) as u64)
    }

    pub fn pow(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = self.to_mont(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Primitive `2^log_len`-th root of unity, Montgomery form.
    fn root_of_unity(&self, log_len: u32) -> u64 {
        assert!(log_len <= MAX_LOG_LEN);
        self.pow(self.to_mont(self.generator), (self.p - 1) >> log_len)
    }

    /// In-place transform of a power-of-two slice of Montgomery residues.
    pub fn ntt(&self, a: &mut [u64], invert: bool) {
        let n = a.len();
        assert!(n.is_power_of_two());
        let log_n = n.trailing_zeros();
        let mut j = 0usize;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j ^= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut twiddles = Vec::with_capacity(n / 2);
        for s in 1..=log_n {
            let len = 1usize << s;
            let mut w_len = self.root_of_unity(s);
            if invert {
                w_len = self.pow(w_len, self.p - 2);
            }
            twiddles.clear();
            let mut w = self.to_mont(1);
            for _ in 0..len / 2 {
                twiddles.push(w);
                w = self.mul(w, w_len);
            }
            for chunk in a.chunks_exact_mut(len) {
                let (lo, hi) = chunk.split_at_mut(len / 2);
                for ((u, v), &tw) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                    let x = *u;
                    let y = self.mul(*v, tw);
                    *u = self.add(x, y);
                    *v = self.sub(x, y);
                }
            }
        }
        if invert {
            let n_inv = self.pow(self.to_mont(n as u64), self.p - 2);
            for x in a.iter_mut() {
                *x = self.mul(*x, n_inv);
            }
        }
    }

    /// `a^2` truncated to `out_len` coefficients.
    pub fn square_truncated(&self, a: &[u64], out_len: usize) -> Vec<u64> {
        let full = 2 * a.len() - 1;
        let size = full.next_power_of_two();
        let mut buf = vec![0u64; size];
        buf[..a.len()].copy_from_slice(a);
        self.ntt(&mut buf, false);
        for x in buf.iter_mut() {
            *x = self.mul(*x, *x);
        }
        self.ntt(&mut buf, true);
        buf.truncate(out_len.min(full));
        buf.resize(out_len, 0);
        buf
    }

    /// `a * b` truncated to `out_len` coefficients.
    pub fn multiply_truncated(&self, a: &[u64], b: &[u64], out_len: usize) -> Vec<u64> {
        let full = a.len() + b.len() - 1;
        let size = full.next_power_of_two();
        let mut fa = vec![0u64; size];
        let mut fb = vec![0u64; size];
        fa[..a.len()].copy_from_slice(a);
        fb[..b.len()].copy_from_slice(b);
        self.ntt(&mut fa, false);
        self.ntt(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = self.mul(*x, *y);
        }
        self.ntt(&mut fa, true);
        fa.truncate(out_len.min(full));
        fa.resize(out_len, 0);
        fa
    }
}

/// Number of primes whose product exceeds `2^bits` with margin.
pub fn primes_for_bits(bits: f64) -> usize {
    let per_prime = 61.0;
    ((bits + 8.0) / per_prime).ceil().max(1.0) as usize
}

/// Garner reconstruction of signed integers from residues (plain, not
/// Montgomery) modulo the first `residues.len()` NTT primes, lifted to the
/// symmetric range `(-M/2, M/2]`.
pub fn reconstruct_signed(residues: &[u64]) -> BigInt {
    let k = residues.len();
    let primes: Vec<u64> = NTT_PRIMES[..k].iter().map(|&(p, _)| p).collect();
    let mulmod = |a: u64, b: u64, p: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut b: u64, mut e: u64, p: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b, p);
            }
            b = mulmod(b, b, p);
            e >>= 1;
        }
        acc
    };
    // mixed-radix digits x = d0 + d1 p0 + d2 p0 p1 + ...
    let mut digits = Vec::with_capacity(k);
    for i in 0..k {
        let p = primes[i];
        let mut x = residues[i] % p;
        let mut prod = 1u64;
        let mut partial = 0u64;
        for j in 0..i {
            partial = (partial as u128 + mulmod(digits[j] % p, prod, p) as u128) as u64 % p;
            prod = mulmod(prod, primes[j] % p, p);
        }
        x = (x + p - partial) % p;
        let inv = powmod(prod, p - 2, p);
        digits.push(mulmod(x, inv, p));
    }
    let mut value = BigInt::zero();
    let mut radix = BigInt::one();
    for (i, d) in digits.iter().enumerate() {
        value += &radix * BigInt::from(*d);
        radix *= BigInt::from(primes[i]);
    }
    let half = &radix >> 1u32;
    if value > half {
        value -= radix;
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn schoolbook_square(a: &[i64]) -> Vec<i128> {
        let mut out = vec![0i128; 2 * a.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in a.iter().enumerate() {
                out[i + j] += x as i128 * y as i128;
            }
        }
        out
    }

    #[test]
    fn primes_have_the_right_shape() {
        for &(p, g) in &NTT_PRIMES {
            assert_eq!((p - 1) % (1 << 26), 0);
            let m = Modulus::new(p, g);
            let w = m.root_of_unity(MAX_LOG_LEN);
            // order exactly 2^26
            assert_eq!(m.from_mont(m.pow(w, 1 << 26)), 1);
            assert_ne!(m.from_mont(m.pow(w, 1 << 25)), 1);
        }
    }

    #[test]
    fn montgomery_round_trip() {
        let m = Modulus::new(NTT_PRIMES[0].0, NTT_PRIMES[0].1);
        for a in [0u64, 1, 2, 12345678901234, NTT_PRIMES[0].0 - 1] {
            assert_eq!(m.from_mont(m.to_mont(a)), a);
        }
        let a = m.to_mont(123456789);
        let b = m.to_mont(987654321);
        assert_eq!(
            m.from_mont(m.mul(a, b)),
            ((123456789u128 * 987654321u128) % m.prime() as u128) as u64
        );
    }

    #[test]
    fn ntt_square_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for &deg in &[1usize, 2, 17, 100, 512] {
            let a: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
            let expected = schoolbook_square(&a);
            let moduli: Vec<Modulus> = NTT_PRIMES[..2].iter().map(|&(p, g)| Modulus::new(p, g)).collect();
            let squares: Vec<Vec<u64>> = moduli
                .iter()
                .map(|m| {
                    let am: Vec<u64> = a.iter().map(|&x| m.from_i64(x)).collect();
                    m.square_truncated(&am, expected.len())
                        .into_iter()
                        .map(|x| m.from_mont(x))
                        .collect()
                })
                .collect();
            for (i, e) in expected.iter().enumerate() {
                let got = reconstruct_signed(&[squares[0][i], squares[1][i]]);
                assert_eq!(got, BigInt::from(*e), "deg {deg} index {i}");
            }
        }
    }

    #[test]
    fn garner_lifts_signs() {
        let m0 = NTT_PRIMES[0].0;
        let m1 = NTT_PRIMES[1].0;
        let m2 = NTT_PRIMES[2].0;
        let x: i128 = -170_141_183_460_469_231_731_687_303_715_884_105_727; // -(2^127 - 1)
        let r = |p: u64| x.rem_euclid(p as i128) as u64;
        assert_eq!(reconstruct_signed(&[r(m0), r(m1), r(m2)]), BigInt::from(x));
    }
}
