//! Direct evaluation of averaged shifted convolution sums and the
//! experiments built on them.

mod experiment;
mod fit;
mod presets;
mod sums;
mod svg;

pub use experiment::{run_experiment, ExperimentGrid, ExperimentPoint, ExperimentReport, LambdaChoice, SliceFit, EXPERIMENT_CSV_HEADER};
pub use fit::{booker_decay, exponent_fit, BookerFit, Fit};
pub use presets::{presets, DeltaReading, Presets};
pub use sums::{
    direct_sum, range_sum, shifted_sum, sharp_sum, Profile, SharpComparison, Smoothing, SumSpec, SumValue,
    WORK_BUDGET,
};
pub use svg::loglog_svg;
