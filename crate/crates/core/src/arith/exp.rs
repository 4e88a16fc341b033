use num_complex::Complex64;
use std::f64::consts::TAU;

/// `e(x) = exp(2 pi i x)`, with `x` reduced mod 1 before scaling so large
/// arguments keep full phase accuracy.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let r = x - x.floor();
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// `e(a b)`, carrying the rounding error of the product so the phase stays
/// accurate when `a b` is large.
#[inline]
pub fn e_product(a: f64, b: f64) -> Complex64 {
    let p = a * b;
    let lo = a.mul_add(b, -p);
    let r = p - p.floor();
    let (s, c) = (TAU * (r + lo)).sin_cos();
    Complex64::new(c, s)
}

/// `e(a / q)` for integer `a`, reduced exactly in the integers.
#[inline]
pub fn e_frac(a: i128, q: u64) -> Complex64 {
    debug_assert!(q > 0);
    let r = a.rem_euclid(q as i128) as f64 / q as f64;
    let (s, c) = (TAU * r).sin_cos();
    Complex64::new(c, s)
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    #[inline]
    pub fn add_real(&mut self, x: f64) {
        neumaier(&mut self.re, &mut self.re_c, x);
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(Complex64::new(other.re, other.im));
        self.add(Complex64::new(other.re_c, other.im_c));
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

impl std::iter::FromIterator<Complex64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Compensated sum of real values.
pub fn sum_real<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for x in iter {
        acc.add_real(x);
    }
    acc.value().re
}
