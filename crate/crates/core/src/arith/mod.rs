//! Exact integer arithmetic: residues, Kloosterman and Ramanujan sums,
//! `sigma_{0,0}`, and sieves for `d_3`, the divisor count and Möbius.

mod exp;
mod kloosterman;
mod modular;
mod sieve;

pub use exp::{e, e_frac, e_product, sum_real, CompensatedSum};
pub use kloosterman::{
    kloosterman, ramanujan_sum, sigma00, sigma00_factored, sigma00_from_factors, KloostermanRow,
};
pub use modular::{
    divisor_count, divisors, euler_phi, factorize, gcd, is_prime, mobius, mod_inverse, Residue,
};
pub use sieve::{
    sieve_d3, sieve_d3_within, sieve_multiplicative, sieve_multiplicative_within, FactorSieve,
    SieveKind, SieveTable, DEFAULT_ENTRY_BUDGET,
};
