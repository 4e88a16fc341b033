//! `shiftconv`: coefficient tables, identity checks and experiments from the
//! command line.
//!
//! Exit status: 0 when every check passes, 1 when any check fails, 2 on
//! usage, cache or I/O errors.

mod commands;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shiftconv::config::Config;

#[derive(Parser, Debug)]
#[command(name = "shiftconv", version, about = "Averaged GL(3) x GL(2) shifted convolution sums: checks and experiments")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Cache directory (overrides the config file and SHIFTCONV_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Directory for CSV and SVG outputs.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Worker threads for the library's parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Fail instead of building a table that is missing from the cache.
    #[arg(long, global = true)]
    cache_only: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build d3 and tau tables into the cache.
    Sieve {
        /// Largest n.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
        /// Tables to build: d3, tau or both.
        #[arg(long, value_delimiter = ',', default_values_t = [String::from("d3"), String::from("tau")])]
        tables: Vec<String>,
    },
    /// Run an identity or circle-method check.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Evaluate S(H, X) directly.
    Sum {
        #[arg(long = "X", alias = "x")]
        x: f64,
        #[arg(long = "H", alias = "h")]
        h: f64,
        #[arg(long, default_value_t = 1)]
        r: u64,
        /// d3 or one.
        #[arg(long, default_value = "d3")]
        lambda: String,
    },
    /// Run a cancellation experiment over a grid file.
    Experiment {
        #[arg(long)]
        grid: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// d3 Voronoi identity for every q <= qmax and every reduced residue.
    VoronoiD3 {
        #[arg(long, default_value_t = 12)]
        qmax: u64,
        #[arg(long, default_value_t = 2000.0)]
        scale: f64,
        #[arg(long, default_value_t = 1e-3)]
        tolerance: f64,
    },
    /// GL(2) Voronoi identity for Delta.
    VoronoiGl2 {
        #[arg(long, default_value_t = 10)]
        qmax: u64,
        #[arg(long, default_value_t = 5000.0)]
        scale: f64,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Exact L2 defect of Jutila's approximation for prime moduli, eta = Q^-2.
    Jutila {
        #[arg(long, value_delimiter = ',', default_values_t = [64u64, 128, 256, 512])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        r: u64,
    },
    /// Direct h-sum against its Poisson dual on ten parameter sets.
    Poisson {
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
}

fn load_config(global: &GlobalArgs) -> Result<Config, String> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            Config::parse(&text).map_err(|e| e.to_string())?
        }
        None => Config::default(),
    }
    .with_env();
    if let Some(dir) = &global.cache_dir {
        cfg.cache_dir = dir.clone();
    }
    if let Some(t) = global.threads {
        cfg.threads = t;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, String> {
    let cfg = load_config(&cli.global)?;
    if cli.global.threads.is_some() || cli.global.config.is_some() {
        // ignore a second initialisation, as in tests that call run twice
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    std::fs::create_dir_all(&cli.global.out_dir)
        .map_err(|e| format!("cannot create output directory {}: {e}", cli.global.out_dir.display()))?;
    let ctx = commands::Context {
        cfg,
        out_dir: cli.global.out_dir.clone(),
        cache_only: cli.global.cache_only,
    };
    match cli.command {
        Command::Sieve { limit, tables } => commands::sieve(&ctx, limit, &tables),
        Command::Verify { check } => match check {
            Check::VoronoiD3 { qmax, scale, tolerance } => commands::voronoi_d3(&ctx, qmax, scale, tolerance),
            Check::VoronoiGl2 { qmax, scale, tolerance } => commands::voronoi_gl2(&ctx, qmax, scale, tolerance),
            Check::Jutila { q, r } => commands::jutila(&ctx, &q, r),
            Check::Poisson { tolerance } => commands::poisson(&ctx, tolerance),
        },
        Command::Sum { x, h, r, lambda } => commands::sum(&ctx, x, h, r, &lambda),
        Command::Experiment { grid } => commands::experiment(&ctx, &grid),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
