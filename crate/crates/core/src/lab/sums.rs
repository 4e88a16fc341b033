use rayon::prelude::*;

use crate::arith::CompensatedSum;
use crate::coeff::CoefficientTable;
use crate::error::{Error, Result};
use crate::transforms::Shape;


/// Largest number of `(n, h)` pairs a single sum may touch.
pub const WORK_BUDGET: u64 = 2_000_000_000;

const CHUNK: u64 = 4096;

/// A finite linear combination of weight shapes; the empty combination is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    terms: Vec<(f64, Shape)>,
}

impl Profile {
    pub fn shape(shape: Shape) -> Self {
        Self { terms: vec![(1.0, shape)] }
    }

    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &Profile, b: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|&(c, s)| (a * c, s))
            .chain(other.terms.iter().map(|&(c, s)| (b * c, s)))
            .collect();
        Self { terms }
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.terms.iter().map(|&(c, s)| c * s.eval(u)).sum()
    }

    /// Smallest interval containing every support, or `None` for zero.
    pub fn support(&self) -> Option<(f64, f64)> {
        self.terms
            .iter()
            .filter(|(c, _)| *c != 0.0)
            .map(|(_, s)| s.support())
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Smoothing {
    /// `V(n/X)` over all `n`.
    Smooth,
    /// The window `Y < n <= 2Y`, compared against `U(n/Y)` with a plateau
    /// of parameter `delta`.
    SharpDyadic { y: f64, delta: f64 },
}

/// `(1/H) sum_h W(h/H) sum_n lambda(n) a_g(rn + h) V(n/X)`.
#[derive(Clone, Debug)]
pub struct SumSpec<'a> {
    pub lambda: &'a CoefficientTable,
    pub g: &'a CoefficientTable,
    pub r: u64,
    pub x: f64,
    pub h: f64,
    pub v: Profile,
    pub w: Profile,
    pub smoothing: Smoothing,
}

impl<'a> SumSpec<'a> {
    /// Smooth sum with `V = phi` (the `[1/2, 5/2]` bump) and `W` the simple bump.
    pub fn new(lambda: &'a CoefficientTable, g: &'a CoefficientTable, r: u64, x: f64, h: f64) -> Result<Self> {
        let spec = Self {
            lambda,
            g,
            r,
            x,
            h,
            v: Profile::shape(Shape::BumpEq1OnUnit2),
            w: Profile::shape(Shape::SimpleBump),
            smoothing: Smoothing::Smooth,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        if !(self.x > 0.0 && self.h > 0.0 && self.x.is_finite()) {
            return Err(Error::InvalidArgument(format!("need X, H > 0, got X = {}, H = {}", self.x, self.h)));
        }
        if self.h > self.x {
            return Err(Error::InvalidArgument(format!("need H <= X, got H = {} > X = {}", self.h, self.x)));
        }
        if let Smoothing::SharpDyadic { y, delta } = self.smoothing {
            if !(y > 0.0 && delta > 1.0) {
                return Err(Error::InvalidArgument(format!("need Y > 0 and delta > 1, got {y}, {delta}")));
            }
        }
        Ok(())
    }

    /// Integer `h` with `W(h/H)` possibly nonzero, and their weights.
    fn h_weights(&self) -> (u64, Vec<f64>) {
        let Some((a, b)) = self.w.support() else {
            return (1, Vec::new());
        };
        let lo = ((a * self.h).ceil() as u64).max(1);
        let hi = (b * self.h).floor() as u64;
        if hi < lo {
            return (lo, Vec::new());
        }
        (lo, (lo..=hi).map(|h| self.w.eval(h as f64 / self.h)).collect())
    }
}

/// A sum together with the same sum over absolute values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumValue {
    pub value: f64,
    pub trivial: f64,
}

/// `sum_{n in [n_lo, n_hi]} weight(n) lambda(n) (1/H) sum_h W(h/H) a_g(rn + h)`,
/// in fixed chunks of `n` merged in order.
fn weighted<F>(spec: &SumSpec, n_lo: u64, n_hi: u64, weight: F) -> Result<SumValue>
where
    F: Fn(u64) -> f64 + Sync,
{
    spec.validate()?;
    let (h0, ws) = spec.h_weights();
    let n_lo = n_lo.max(1);
    if ws.is_empty() || n_hi < n_lo {
        return Ok(SumValue { value: 0.0, trivial: 0.0 });
    }
    let work = (n_hi - n_lo + 1).saturating_mul(ws.len() as u64);
    if work > WORK_BUDGET {
        return Err(Error::BudgetExceeded(format!("{work} (n, h) pairs, over {WORK_BUDGET}")));
    }
    spec.lambda.require(n_hi as usize)?;
    let m_hi = spec.r * n_hi + h0 + ws.len() as u64 - 1;
    spec.g.require(m_hi as usize)?;
    let lam = spec.lambda.values()?;
    let a = spec.g.values()?;
    let chunks: Vec<(u64, u64)> = (n_lo..=n_hi)
        .step_by(CHUNK as usize)
        .map(|s| (s, (s + CHUNK - 1).min(n_hi)))
        .collect();
    let parts: Vec<(CompensatedSum, CompensatedSum)> = chunks
        .par_iter()
        .map(|&(s, t)| {
            let mut acc = CompensatedSum::new();
            let mut abs = CompensatedSum::new();
            for n in s..=t {
                let f = weight(n) * lam[n as usize];
                if f == 0.0 {
                    continue;
                }
                let base = (spec.r * n + h0) as usize;
                let row = &a[base..base + ws.len()];
                let mut inner = CompensatedSum::new();
                let mut inner_abs = 0.0;
                for (w, x) in ws.iter().zip(row) {
                    inner.add_real(w * x);
                    inner_abs += (w * x).abs();
                }
                acc.add_real(f * inner.value().re);
                abs.add_real(f.abs() * inner_abs);
            }
            (acc, abs)
        })
        .collect();
    let mut acc = CompensatedSum::new();
    let mut abs = CompensatedSum::new();
    for (p, q) in &parts {
        acc.merge(p);
        abs.merge(q);
    }
    Ok(SumValue {
        value: acc.value().re / spec.h,
        trivial: abs.value().re / spec.h,
    })
}

/// `S(H, X)` by the direct double loop.
pub fn direct_sum(spec: &SumSpec) -> Result<SumValue> {
    let Some((a, b)) = spec.v.support() else {
        return Ok(SumValue { value: 0.0, trivial: 0.0 });
    };
    let lo = (a * spec.x).ceil() as u64;
    let hi = (b * spec.x).floor() as u64;
    weighted(spec, lo, hi, |n| spec.v.eval(n as f64 / spec.x))
}

/// The same average with the sharp window `lo < n <= hi` in place of `V`.
pub fn range_sum(spec: &SumSpec, lo: f64, hi: f64) -> Result<SumValue> {
    let n_lo = if lo < 0.0 { 1 } else { lo.floor() as u64 + 1 };
    let n_hi = hi.floor().max(0.0) as u64;
    weighted(spec, n_lo, n_hi, |_| 1.0)
}

/// Unaveraged `D_h(X) = sum_n lambda(n) a_g(rn + h) V(n/X)` for one shift.
pub fn shifted_sum(spec: &SumSpec, h: u64) -> Result<f64> {
    if h == 0 {
        return Err(Error::InvalidArgument("the shift h must be positive".into()));
    }
    spec.validate()?;
    let Some((a, b)) = spec.v.support() else {
        return Ok(0.0);
    };
    let lo = ((a * spec.x).ceil() as u64).max(1);
    let hi = (b * spec.x).floor() as u64;
    if hi < lo {
        return Ok(0.0);
    }
    spec.lambda.require(hi as usize)?;
    spec.g.require((spec.r * hi + h) as usize)?;
    let lam = spec.lambda.values()?;
    let g = spec.g.values()?;
    let mut acc = CompensatedSum::new();
    for n in lo..=hi {
        acc.add_real(lam[n as usize] * g[(spec.r * n + h) as usize] * spec.v.eval(n as f64 / spec.x));
    }
    Ok(acc.value().re)
}

/// `T#(H, Y)` over `Y < n <= 2Y`, the `U`-smoothed `T(H, Y)` and their difference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SharpComparison {
    pub sharp: SumValue,
    pub smoothed: SumValue,
    pub difference: f64,
}

pub fn sharp_sum(spec: &SumSpec) -> Result<SharpComparison> {
    let Smoothing::SharpDyadic { y, delta } = spec.smoothing else {
        return Err(Error::InvalidArgument("sharp_sum needs the sharp dyadic smoothing".into()));
    };
    spec.validate()?;
    let sharp = range_sum(spec, y, 2.0 * y)?;
    let u = Shape::PlateauDelta(delta);
    let smoothed = weighted(spec, y.ceil() as u64, (2.0 * y).floor() as u64, |n| u.eval(n as f64 / y))?;
    Ok(SharpComparison {
        sharp,
        smoothed,
        difference: sharp.value - smoothed.value,
    })
}
