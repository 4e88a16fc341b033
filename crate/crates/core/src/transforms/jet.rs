//! Truncated Taylor arithmetic, for exact derivatives of the smooth shapes.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub const ORDER: usize = 5;

/// `f(x + e) = sum_k c[k] e^k + O(e^ORDER)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet(pub [f64; ORDER]);

impl Jet {
    pub fn constant(c: f64) -> Self {
        let mut a = [0.0; ORDER];
        a[0] = c;
        Jet(a)
    }

    pub fn variable(x: f64) -> Self {
        let mut a = [0.0; ORDER];
        a[0] = x;
        a[1] = 1.0;
        Jet(a)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// `f^{(k)}(x) = k! c[k]`.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.0[k] * fact
    }

    pub fn exp(self) -> Self {
        let c = self.0;
        let mut e = [0.0; ORDER];
        e[0] = c[0].exp();
        for k in 1..ORDER {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * c[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        Jet(e)
    }

    pub fn recip(self) -> Self {
        Jet::constant(1.0) / self
    }

    pub fn scale(self, s: f64) -> Self {
        Jet(self.0.map(|x| x * s))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x += y;
        }
        Jet(a)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|x| -x))
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, c: f64) -> Jet {
        self.0[0] += c;
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut a = [0.0; ORDER];
        for i in 0..ORDER {
            for j in 0..ORDER - i {
                a[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(a)
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let mut q = [0.0; ORDER];
        for k in 0..ORDER {
            let mut acc = self.0[k];
            for j in 1..=k {
                acc -= o.0[j] * q[k - j];
            }
            q[k] = acc / o.0[0];
        }
        Jet(q)
    }
}
