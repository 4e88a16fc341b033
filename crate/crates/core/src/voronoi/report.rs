use num_complex::Complex64;

pub const CSV_HEADER: &str = "q,c,Y,lhs_re,lhs_im,rhs_re,rhs_im,abs_error,rel_error,terms_used";

/// One identity check: `lhs` against `dual_sum + main_terms`.
#[derive(Clone, Debug, PartialEq)]
pub struct VoronoiReport {
    pub q: u64,
    pub c: u64,
    pub scale: f64,
    pub lhs: Complex64,
    pub dual_sum: Complex64,
    pub main_terms: Complex64,
    /// Size of the last dual block summed; the truncation error estimate.
    pub truncation_bound: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub terms_used: u64,
}

impl VoronoiReport {
    pub fn new(
        q: u64,
        c: u64,
        scale: f64,
        lhs: Complex64,
        dual_sum: Complex64,
        main_terms: Complex64,
        truncation_bound: f64,
        terms_used: u64,
    ) -> Self {
        let abs_error = (lhs - dual_sum - main_terms).norm();
        Self {
            q,
            c,
            scale,
            lhs,
            dual_sum,
            main_terms,
            truncation_bound,
            abs_error,
            rel_error: abs_error / lhs.norm().max(1e-300),
            terms_used,
        }
    }

    pub fn rhs(&self) -> Complex64 {
        self.dual_sum + self.main_terms
    }

    pub fn csv_row(&self) -> String {
        let rhs = self.rhs();
        format!(
            "{},{},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.6e},{:.6e},{}",
            self.q,
            self.c,
            self.scale,
            self.lhs.re,
            self.lhs.im,
            rhs.re,
            rhs.im,
            self.abs_error,
            self.rel_error,
            self.terms_used
        )
    }
}
