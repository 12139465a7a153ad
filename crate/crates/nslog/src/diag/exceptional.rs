//! High-gradient exceptional sets selected by empirical quantile.

use crate::field::{gradient_magnitude, PhysField};

use super::{require, DiagError};

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalSet {
    /// Requested volume fraction.
    pub eps: f64,
    /// Empirical threshold: the floor(eps N)-th largest |grad u| value.
    pub lambda_eps: f64,
    /// Chebyshev comparison value ||grad u||_{L^6} / (eps V)^{1/6} in
    /// per-unit-volume normalization.
    pub lambda_chebyshev: f64,
    /// Points with |grad u| >= lambda_eps (ties included).
    pub mask: Vec<bool>,
    pub measured_fraction: f64,
}

/// Select the set where |grad u| exceeds the (1-eps) quantile.
///
/// The threshold is the floor(eps N)-th largest gradient magnitude, so on
/// fields without ties the measured fraction never exceeds eps; ties are
/// included in the mask and may push the fraction above eps on degenerate
/// data. When eps N < 1 the mask is empty and the threshold reports the
/// field maximum.
pub fn exceptional_set(f: &PhysField, eps: f64) -> Result<ExceptionalSet, DiagError> {
    require(eps > 0.0 && eps < 1.0, "eps", eps, "must lie in (0, 1)")?;
    let grad = gradient_magnitude(f)?;
    let n = grad.len();

    // Chebyshev comparison at p = 6
    let p = 6.0;
    let mean_p: f64 = grad.iter().map(|g| g.powf(p)).sum::<f64>() / n as f64;
    let lambda_chebyshev = mean_p.powf(1.0 / p) / eps.powf(1.0 / p);

    let m = (eps * n as f64).floor() as usize;
    let (lambda_eps, mask): (f64, Vec<bool>) = if m == 0 {
        let max = grad.iter().fold(0.0f64, |a, &b| a.max(b));
        (max, grad.iter().map(|&g| g > max).collect())
    } else {
        let mut sorted = grad.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite gradients"));
        let lambda = sorted[n - m];
        (lambda, grad.iter().map(|&g| g >= lambda).collect())
    };
    let count = mask.iter().filter(|&&b| b).count();
    Ok(ExceptionalSet {
        eps,
        lambda_eps,
        lambda_chebyshev,
        mask,
        measured_fraction: count as f64 / n as f64,
    })
}
