use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use shiftconv::circle::{build_moduli_set, defect_scaling, indicator_approx, l2_defect, poisson_suite, standard_setups, Rational};
use shiftconv::config::Config;
use shiftconv::lab::{direct_sum, run_experiment, ExperimentGrid, LambdaChoice, SumSpec};
use shiftconv::transforms::{dual_cutoff, CutoffKind, CutoffParams, SmoothWeight, SpectralParams};
use shiftconv::voronoi::{D3Checker, Gl2Checker, VoronoiReport, CSV_HEADER};

use crate::tables;

pub struct Context {
    pub cfg: Config,
    pub out_dir: PathBuf,
    pub cache_only: bool,
}

impl Context {
    fn cutoff_params(&self) -> CutoffParams {
        CutoffParams {
            epsilon: self.cfg.cutoff_epsilon,
            safety: self.cfg.safety_factor,
        }
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, String> {
        let path = self.out_dir.join(name);
        std::fs::write(&path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        Ok(path)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn sieve(ctx: &Context, limit: usize, names: &[String]) -> Result<bool, String> {
    if limit == 0 {
        return Err("--limit must be positive".into());
    }
    for name in names {
        let table = tables::build(ctx, name, limit)?;
        let path = tables::store(ctx, name, &table)?;
        println!("{name}: n <= {limit} written to {}", path.display());
    }
    Ok(true)
}

fn report_csv(rows: &[VoronoiReport]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

fn summarize(ctx: &Context, kind: CutoffKind, q: u64, scale: f64, rows: &[VoronoiReport], tolerance: f64) -> Result<bool, String> {
    let worst = rows.iter().map(|r| r.rel_error).fold(0.0, f64::max);
    let window = dual_cutoff(q, scale, kind, ctx.cutoff_params()).map_err(err)?;
    let terms = rows.iter().map(|r| r.terms_used).max().unwrap_or(0);
    let tail = rows.iter().map(|r| r.truncation_bound).fold(0.0, f64::max);
    let ok = worst <= tolerance;
    println!(
        "q = {q:3}: {:3} residues, max rel_error {worst:.3e}, dual terms {terms} (asymptotic window {window}), last block {tail:.1e}  {}",
        rows.len(),
        verdict(ok)
    );
    Ok(ok)
}

pub fn voronoi_d3(ctx: &Context, qmax: u64, scale: f64, tolerance: f64) -> Result<bool, String> {
    if qmax == 0 {
        return Err("--qmax must be positive".into());
    }
    let weight = SmoothWeight::simple(scale).map_err(err)?;
    let checker = D3Checker::new(weight, qmax, 1e-12, D3Checker::default_tail()).map_err(err)?;
    let mut all = Vec::new();
    let mut ok = true;
    let delta = 1.0 / weight.shape.ramp_width();
    for q in 1..=qmax {
        let rows = checker.check_all(q).map_err(err)?;
        ok &= summarize(ctx, CutoffKind::D3 { delta }, q, scale, &rows, tolerance)?;
        all.extend(rows);
    }
    let path = ctx.write(&format!("voronoi-d3-q{qmax}-Y{scale}.csv"), &report_csv(&all))?;
    println!("{} reports written to {}", all.len(), path.display());
    println!("d3 Voronoi identity, tolerance {tolerance:e}: {}", verdict(ok));
    Ok(ok)
}

pub fn voronoi_gl2(ctx: &Context, qmax: u64, scale: f64, tolerance: f64) -> Result<bool, String> {
    if qmax == 0 {
        return Err("--qmax must be positive".into());
    }
    let weight = SmoothWeight::simple(scale).map_err(err)?;
    let tail = Gl2Checker::default_tail();
    let (_, hi) = weight.support();
    let needed = (hi.ceil() as usize).max((tail.z_cap * (qmax * qmax) as f64 / scale).ceil() as usize) + 1;
    let tau = tables::load(ctx, "tau", needed)?;
    let checker = Gl2Checker::new(weight, SpectralParams::delta(), 1e-16, tail).map_err(err)?;
    let mut all = Vec::new();
    let mut ok = true;
    for q in 1..=qmax {
        let rows = checker.check_all(q, &tau).map_err(err)?;
        ok &= summarize(ctx, CutoffKind::Gl2, q, scale, &rows, tolerance)?;
        all.extend(rows);
    }
    let path = ctx.write(&format!("voronoi-gl2-q{qmax}-Y{scale}.csv"), &report_csv(&all))?;
    println!("{} reports written to {}", all.len(), path.display());
    println!("GL(2) Voronoi identity for Delta, tolerance {tolerance:e}: {}", verdict(ok));
    Ok(ok)
}

pub fn jutila(ctx: &Context, qs: &[u64], r: u64) -> Result<bool, String> {
    if qs.is_empty() || qs.contains(&0) || r == 0 {
        return Err("--q needs positive values and --r must be positive".into());
    }
    let mut csv = String::from("Q,moduli,L,defect,defect_over_log2Q,mass\n");
    let mut ok = true;
    for &q in qs {
        let qf = q as f64;
        let set = build_moduli_set(qf, r, qf.powi(-2)).map_err(err)?;
        let approx = indicator_approx(&set);
        let defect = l2_defect(&approx);
        let mass = approx.mass();
        let unit = mass == Rational::from_integer(1);
        ok &= unit;
        let scaled = defect / qf.ln().powi(2);
        println!(
            "Q = {q}: {} prime moduli, L = {}, defect {defect:.6e}, defect/(log Q)^2 {scaled:.6e}, mass {mass}",
            set.members.len(),
            set.l
        );
        let _ = writeln!(csv, "{q},{},{},{defect:.17e},{scaled:.17e},{mass}", set.members.len(), set.l);
    }
    if qs.len() >= 2 {
        let qf: Vec<f64> = qs.iter().map(|&q| q as f64).collect();
        let s = defect_scaling(&qf, r, 2).map_err(err)?;
        println!("D(Q) <= C (log Q)^2 with C = {:.6e} fitted on the first two Q: {}", s.c, verdict(s.holds));
        ok &= s.holds;
    }
    let path = ctx.write("jutila.csv", &csv)?;
    println!("written to {}", path.display());
    println!("Jutila defect: {}", verdict(ok));
    Ok(ok)
}

pub fn poisson(ctx: &Context, tolerance: f64) -> Result<bool, String> {
    let rows = poisson_suite(&standard_setups(), ctx.cfg.quad_tolerance).map_err(err)?;
    let mut csv = String::from("c,q,H,beta,direct_re,direct_im,dual_re,dual_im,rel_error,coarse_error,finer_error,dual_terms\n");
    let mut ok = true;
    for row in &rows {
        let s = &row.setup;
        let pass = row.passed(tolerance);
        ok &= pass;
        println!(
            "c/q = {}/{}, H = {}, beta = {}: rel_error {:.3e}, cutoff doubling {:.1e} -> {:.1e}  {}",
            s.c,
            s.q,
            s.h,
            s.beta,
            row.full.relative_error(),
            row.coarse.error,
            row.finer.error,
            verdict(pass)
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.6e},{:.6e},{:.6e},{}",
            s.c,
            s.q,
            s.h,
            s.beta,
            row.full.direct.re,
            row.full.direct.im,
            row.full.dual.re,
            row.full.dual.im,
            row.full.relative_error(),
            row.coarse.error,
            row.finer.error,
            row.full.dual_terms
        );
    }
    let path = ctx.write("poisson.csv", &csv)?;
    println!("written to {}", path.display());
    println!("Poisson h-sum, tolerance {tolerance:e}: {}", verdict(ok));
    Ok(ok)
}

pub fn sum(ctx: &Context, x: f64, h: f64, r: u64, lambda: &str) -> Result<bool, String> {
    let choice = LambdaChoice::parse(lambda).map_err(err)?;
    if !(x >= 1.0 && h > 0.0 && r >= 1) {
        return Err("need X >= 1, H > 0 and r >= 1".into());
    }
    let n = (2.5 * x).floor() as usize;
    let m = r as usize * n + (2.0 * h).floor() as usize;
    let lam = tables::load(ctx, choice.name(), n.max(1))?;
    let tau = tables::load(ctx, "tau", m.max(1))?;
    let spec = SumSpec::new(&lam, &tau, r, x, h).map_err(err)?;
    let v = direct_sum(&spec).map_err(err)?;
    println!("S(H, X) = {:.17e}", v.value);
    println!("trivial = {:.17e}", v.trivial);
    println!("ratio   = {:.6e}", v.value.abs() / v.trivial);
    Ok(true)
}

pub fn experiment(ctx: &Context, grid_path: &Path) -> Result<bool, String> {
    let text = std::fs::read_to_string(grid_path).map_err(|e| format!("cannot read grid {}: {e}", grid_path.display()))?;
    let grid = ExperimentGrid::parse(&text).map_err(err)?;
    let (n, m) = grid.required_limits();
    let lam = tables::load(ctx, grid.lambda.name(), n.max(1))?;
    let tau = tables::load(ctx, "tau", m.max(1))?;
    let report = run_experiment(&grid, &lam, &tau).map_err(err)?;
    let stem = report.file_stem();
    let csv = ctx.write(&format!("{stem}.csv"), &report.csv())?;
    let svg = ctx.write(&format!("{stem}.svg"), &report.svg())?;
    for f in &report.fits {
        println!(
            "H = X^{}: |S| ~ X^{:.3} (residual {:.2}), trivial ~ X^{:.3}",
            f.h_exponent, f.sum.slope, f.sum.residual, f.trivial.slope
        );
    }
    let ok = report.majorant_holds();
    println!("|S| <= trivial at every point: {}", verdict(ok));
    println!("written to {} and {}", csv.display(), svg.display());
    Ok(ok)
}
