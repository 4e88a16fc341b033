//! Cusp-form coefficients: exact `tau(n)`, normalized tables, the disk cache
//! and the oracle interface for GL(3) coefficients.

mod cache;
pub mod ntt;
mod oracle;
mod table;
mod tau;

pub use cache::{cache_load, cache_store, decode, encode, fnv1a64, MAGIC, VERSION};
pub use oracle::{CoefficientOracle, DivisorCubeOracle, TableOracle, ZeroOracle};
pub use table::{normalize, CoefficientTable, Exponent};
pub use tau::{
    build_tau_table, build_tau_table_within, check_deligne, eta_cubed, hecke_validate,
    hecke_validate_weight, tau_f64, zero_fraction_at_primes, HeckeFailure, HeckeReport,
};
