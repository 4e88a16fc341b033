use std::path::{Path, PathBuf};

use shiftconv::arith::sieve_d3_within;
use shiftconv::coeff::{build_tau_table_within, cache_load, cache_store, CoefficientTable};
use shiftconv::lab::LambdaChoice;

use crate::commands::Context;

fn path_for(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.table"))
}

/// A table covering `1..=limit`: from the cache when it is large enough,
/// otherwise built (unless `cache_only`) and stored.
pub fn load(ctx: &Context, name: &str, limit: usize) -> Result<CoefficientTable, String> {
    let path = path_for(&ctx.cfg.cache_dir, name);
    if path.exists() {
        match cache_load(&path) {
            Ok(t) if t.limit() >= limit => return t.prefix(limit).map_err(|e| e.to_string()),
            Ok(_) => {}
            Err(e) => eprintln!("warning: ignoring cache {}: {e}", path.display()),
        }
    }
    if ctx.cache_only {
        return Err(format!("missing cache: {} does not cover n <= {limit}", path.display()));
    }
    let table = build(ctx, name, limit)?;
    if std::fs::create_dir_all(&ctx.cfg.cache_dir).is_ok() {
        if let Err(e) = cache_store(&table, &path) {
            eprintln!("warning: could not write cache {}: {e}", path.display());
        }
    }
    Ok(table)
}

pub fn build(ctx: &Context, name: &str, limit: usize) -> Result<CoefficientTable, String> {
    let budget = ctx.cfg.memory_budget;
    if limit > budget {
        return Err(format!("{name} table of {limit} entries exceeds the memory budget {budget}"));
    }
    match name {
        "tau" => build_tau_table_within(limit, budget).map_err(|e| e.to_string()),
        "d3" => sieve_d3_within(limit, budget)
            .map(|s| CoefficientTable::from_sieve("d3", &s))
            .map_err(|e| e.to_string()),
        "one" => LambdaChoice::One.table(limit).map_err(|e| e.to_string()),
        _ => Err(format!("unknown table '{name}' (expected d3 or tau)")),
    }
}

pub fn store(ctx: &Context, name: &str, table: &CoefficientTable) -> Result<PathBuf, String> {
    std::fs::create_dir_all(&ctx.cfg.cache_dir)
        .map_err(|e| format!("cannot create cache directory {}: {e}", ctx.cfg.cache_dir.display()))?;
    let path = path_for(&ctx.cfg.cache_dir, name);
    cache_store(table, &path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}
