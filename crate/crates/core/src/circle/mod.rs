//! Jutila's circle method: moduli sets, the interval approximation of the
//! constant function 1 on the circle, its exact L² defect, and the Poisson
//! step for the h-sum.

mod indicator;
mod moduli;
mod poisson;

pub use indicator::{defect_scaling, indicator_approx, l2_defect, l2_defect_quadrature, DefectScaling, IndicatorApprox};
pub use moduli::{build_moduli_set, exact_eta, ModuliSet};
pub use poisson::{poisson_hsum_check, poisson_suite, standard_setups, PoissonCheck, PoissonSetup, PoissonSuiteRow};

/// Exact rationals used for interval endpoints.
pub type Rational = num_rational::Ratio<i128>;
