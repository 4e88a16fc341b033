use std::fmt::Write;

use crate::arith::sieve_d3;
use crate::coeff::{fnv1a64, CoefficientTable, Exponent};
use crate::error::{Error, Result};

use super::fit::{exponent_fit, Fit};
use super::sums::{direct_sum, SumSpec};
use super::svg::loglog_svg;

pub const EXPERIMENT_CSV_HEADER: &str = "X,H,r,lambda,sum_value,trivial_sum,ratio";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaChoice {
    D3,
    /// `lambda = 1`, the control without cancellation in `n`.
    One,
}

impl LambdaChoice {
    pub fn name(self) -> &'static str {
        match self {
            LambdaChoice::D3 => "d3",
            LambdaChoice::One => "one",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "d3" => Ok(LambdaChoice::D3),
            "one" | "1" => Ok(LambdaChoice::One),
            _ => Err(Error::InvalidArgument(format!("unknown lambda '{s}' (expected d3 or one)"))),
        }
    }

    /// Table of `lambda(n)` for `n <= limit`.
    pub fn table(self, limit: usize) -> Result<CoefficientTable> {
        match self {
            LambdaChoice::D3 => Ok(CoefficientTable::from_sieve("d3", &sieve_d3(limit)?)),
            LambdaChoice::One => Ok(CoefficientTable::from_normalized("one", vec![1.0; limit], Exponent::new(0, 1)?)),
        }
    }
}

/// Points `(X, X^a)` for every `X` and every exponent `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentGrid {
    pub lambda: LambdaChoice,
    pub r: u64,
    pub xs: Vec<f64>,
    pub h_exponents: Vec<f64>,
}

impl ExperimentGrid {
    /// Parses `key = value` lines: `lambda`, `r`, `x` (comma list),
    /// `log2_x` (`a..b` or comma list) and `h_exponent` (comma list).
    pub fn parse(text: &str) -> Result<Self> {
        let mut grid = ExperimentGrid {
            lambda: LambdaChoice::D3,
            r: 1,
            xs: Vec::new(),
            h_exponents: Vec::new(),
        };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::InvalidArgument(format!("grid line {}: {what}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim();
            let floats = |v: &str| -> Result<Vec<f64>> {
                v.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad("not a number"))).collect()
            };
            match key.trim() {
                "lambda" => grid.lambda = LambdaChoice::parse(value)?,
                "r" => grid.r = value.parse().map_err(|_| bad("r is not an integer"))?,
                "x" => grid.xs.extend(floats(value)?),
                "log2_x" => {
                    let ks: Vec<u32> = if let Some((a, b)) = value.split_once("..") {
                        let a: u32 = a.trim().parse().map_err(|_| bad("bad range"))?;
                        let b: u32 = b.trim().parse().map_err(|_| bad("bad range"))?;
                        (a..=b).collect()
                    } else {
                        value.split(',').map(|t| t.trim().parse().map_err(|_| bad("bad exponent"))).collect::<Result<_>>()?
                    };
                    if ks.iter().any(|&k| k > 40) {
                        return Err(bad("log2_x above 40"));
                    }
                    grid.xs.extend(ks.iter().map(|&k| (1u64 << k) as f64));
                }
                "h_exponent" => grid.h_exponents.extend(floats(value)?),
                other => return Err(bad(&format!("unknown key '{other}'"))),
            }
        }
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 || self.xs.is_empty() || self.h_exponents.is_empty() {
            return Err(Error::InvalidArgument("grid needs r >= 1, some X and some H exponents".into()));
        }
        if self.xs.iter().any(|&x| !(x >= 1.0)) || self.h_exponents.iter().any(|&a| !(0.0..=1.0).contains(&a)) {
            return Err(Error::InvalidArgument("grid needs X >= 1 and H exponents in [0, 1]".into()));
        }
        Ok(())
    }

    /// Canonical text form; its hash names the output files.
    pub fn canonical(&self) -> String {
        let mut s = format!("lambda={};r={};x=", self.lambda.name(), self.r);
        for x in &self.xs {
            let _ = write!(s, "{x:e},");
        }
        s.push_str(";h_exponent=");
        for a in &self.h_exponents {
            let _ = write!(s, "{a:e},");
        }
        s
    }

    pub fn hash(&self) -> u64 {
        fnv1a64(self.canonical().as_bytes())
    }

    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::new();
        for &a in &self.h_exponents {
            for &x in &self.xs {
                out.push((a, x, x.powf(a)));
            }
        }
        out
    }

    /// Largest `n` for `lambda` and largest `m` for `a_g` the grid touches,
    /// for `V` supported in `[1/2, 5/2]` and `W` in `[1, 2]`.
    pub fn required_limits(&self) -> (usize, usize) {
        let x = self.xs.iter().cloned().fold(0.0, f64::max);
        let h = self.points().iter().map(|p| p.2).fold(0.0, f64::max);
        let n = (2.5 * x).floor() as usize;
        (n, self.r as usize * n + (2.0 * h).floor() as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExperimentPoint {
    pub h_exponent: f64,
    pub x: f64,
    pub h: f64,
    pub r: u64,
    pub value: f64,
    pub trivial: f64,
}

impl ExperimentPoint {
    pub fn ratio(&self) -> f64 {
        self.value.abs() / self.trivial
    }
}

/// Fits along one slice `H = X^a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SliceFit {
    pub h_exponent: f64,
    pub sum: Fit,
    pub trivial: Fit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub lambda: LambdaChoice,
    pub grid_hash: u64,
    pub points: Vec<ExperimentPoint>,
    pub fits: Vec<SliceFit>,
}

impl ExperimentReport {
    /// Every `|S|` is at most its absolute-value majorant.
    pub fn majorant_holds(&self) -> bool {
        self.points.iter().all(|p| p.value.abs() <= p.trivial)
    }

    pub fn fit_for(&self, a: f64) -> Option<&SliceFit> {
        self.fits.iter().find(|f| f.h_exponent == a)
    }

    pub fn file_stem(&self) -> String {
        format!("experiment-{:016x}", self.grid_hash)
    }

    pub fn csv(&self) -> String {
        let mut s = String::from(EXPERIMENT_CSV_HEADER);
        s.push('\n');
        for p in &self.points {
            let _ = writeln!(
                s,
                "{:.17e},{:.17e},{},{},{:.17e},{:.17e},{:.17e}",
                p.x,
                p.h,
                p.r,
                self.lambda.name(),
                p.value,
                p.trivial,
                p.ratio()
            );
        }
        s
    }

    pub fn svg(&self) -> String {
        let mut series = Vec::new();
        for f in &self.fits {
            let slice: Vec<&ExperimentPoint> = self.points.iter().filter(|p| p.h_exponent == f.h_exponent).collect();
            series.push((format!("|S|, H = X^{}", f.h_exponent), slice.iter().map(|p| (p.x, p.value.abs())).collect()));
            series.push((format!("trivial, H = X^{}", f.h_exponent), slice.iter().map(|p| (p.x, p.trivial)).collect()));
        }
        loglog_svg(&format!("lambda = {}: |S(H, X)| against the trivial bound", self.lambda.name()), "X", &series)
    }
}

/// Evaluates every grid point with `g` the normalized coefficients in
/// `g_table` and `lambda` from `lambda_table`.
pub fn run_experiment(grid: &ExperimentGrid, lambda_table: &CoefficientTable, g_table: &CoefficientTable) -> Result<ExperimentReport> {
    grid.validate()?;
    let mut points = Vec::new();
    for (a, x, h) in grid.points() {
        let spec = SumSpec::new(lambda_table, g_table, grid.r, x, h)?;
        let v = direct_sum(&spec)?;
        points.push(ExperimentPoint {
            h_exponent: a,
            x,
            h,
            r: grid.r,
            value: v.value,
            trivial: v.trivial,
        });
    }
    let mut fits = Vec::new();
    for &a in &grid.h_exponents {
        let slice: Vec<&ExperimentPoint> = points.iter().filter(|p| p.h_exponent == a).collect();
        if slice.len() < 3 {
            continue;
        }
        fits.push(SliceFit {
            h_exponent: a,
            sum: exponent_fit(&slice.iter().map(|p| (p.x, p.value.abs())).collect::<Vec<_>>())?,
            trivial: exponent_fit(&slice.iter().map(|p| (p.x, p.trivial)).collect::<Vec<_>>())?,
        });
    }
    Ok(ExperimentReport {
        lambda: grid.lambda,
        grid_hash: grid.hash(),
        points,
        fits,
    })
}
