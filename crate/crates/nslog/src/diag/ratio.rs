//! Norm-ratio series ||(-Delta)^s u||_{L^q} / ||(-Delta)^{1/2} u||_{L^q}
//! from run records, with a tail log-log slope for comparison against the
//! near-critical asymptote exponent -1/4. The slope is reported, not
//! asserted: the asymptote concerns the limit of vanishing s - 1/2.

use crate::solver::DiagnosticsRecord;

use super::structure::least_squares_slope;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    pub t: f64,
    pub ratio: f64,
}

/// Pointwise quotient of the recorded norms; zero denominators are skipped.
pub fn ratio_series(records: &[DiagnosticsRecord]) -> Vec<RatioPoint> {
    records
        .iter()
        .filter(|r| r.half_lap_lq > 0.0)
        .map(|r| RatioPoint {
            t: r.t,
            ratio: r.frac_lq_full / r.half_lap_lq,
        })
        .collect()
}

/// Log-log slope of the ratio against t over the trailing fraction of the
/// series (t > 0 only). Returns None when fewer than two usable points.
pub fn ratio_tail_slope(series: &[RatioPoint], tail_fraction: f64) -> Option<f64> {
    let usable: Vec<&RatioPoint> = series
        .iter()
        .filter(|p| p.t > 0.0 && p.ratio > 0.0)
        .collect();
    if usable.len() < 2 {
        return None;
    }
    let start = ((usable.len() as f64) * (1.0 - tail_fraction.clamp(0.0, 1.0))) as usize;
    let tail = &usable[start.min(usable.len() - 2)..];
    let xs: Vec<f64> = tail.iter().map(|p| p.t.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.ratio.ln()).collect();
    least_squares_slope(&xs, &ys)
}
