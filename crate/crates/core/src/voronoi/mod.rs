//! Both sides of the Voronoi summation formulas: GL(2) for a holomorphic
//! cusp form, the generic GL(3) dual side, and the triple divisor function
//! with its main terms.

mod d3;
mod gl2;
mod gl3;
mod report;

pub use d3::{d3_main_terms, d3_voronoi_check, p1, p2, D3Checker, MainTermNormalization, MellinMoments};
pub use gl2::{gl2_voronoi_check, Gl2Checker};
pub use gl3::{gl3_dual_assemble, gl3_prefactor, Gl3Assembly, Gl3Options};
pub use report::{VoronoiReport, CSV_HEADER};

/// Adaptive truncation of a dual sum: the window grows in doubling blocks
/// until two consecutive blocks are below `tail_tolerance` times the size
/// of the left-hand side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailControl {
    /// First block ends at this value of the kernel argument `z = yY`.
    pub z_start: f64,
    /// Hard cap on `z`; reaching it leaves the reported tail bound as is.
    pub z_cap: f64,
    pub tail_tolerance: f64,
}
