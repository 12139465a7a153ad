//! Multifractal spectrum, structure-function exponents, and intermittency.

use super::ladder::LogLadderParams;
use super::{require, FormulaError};

/// Quadratic multifractal model for a given (s, {delta_j}).
///
/// `shrink` = prod_j 1/(1+delta_j) scales both the spectrum and the
/// structure-function correction. The spectrum parabola carries `shrink` in
/// its curvature denominator, so it narrows as the ladder deepens and its
/// Legendre transform is exactly [`MultifractalModel::zeta_quadratic`]; in
/// the limit of large deltas the spectrum collapses onto h0 and the scaling
/// becomes monofractal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultifractalModel {
    /// Central exponent h0 = 2s - 1.
    pub h0: f64,
    /// Variance parameter sigma^2 = (3 - 2s)/(2s - 1).
    pub sigma2: f64,
    /// prod_j 1/(1+delta_j).
    pub shrink: f64,
}

pub fn multifractal_model(
    s: f64,
    params: &LogLadderParams,
) -> Result<MultifractalModel, FormulaError> {
    require(s > 0.5 && s < 1.0, "s", s, "must lie in (1/2, 1)")?;
    let shrink = params.deltas().iter().fold(1.0, |acc, &d| acc / (1.0 + d));
    Ok(MultifractalModel {
        h0: 2.0 * s - 1.0,
        sigma2: (3.0 - 2.0 * s) / (2.0 * s - 1.0),
        shrink,
    })
}

impl MultifractalModel {
    /// Dimension of the set with local scaling exponent h.
    pub fn d_of_h(&self, h: f64) -> f64 {
        let dh = h - self.h0;
        3.0 - dh * dh / (2.0 * self.sigma2 * self.shrink)
    }

    /// Structure-function exponent zeta_p = p/3 - (p(p-3)/3) sigma^2 shrink.
    pub fn zeta(&self, p: f64) -> f64 {
        p / 3.0 - (p * (p - 3.0) / 3.0) * self.sigma2 * self.shrink
    }

    /// Intermittency correction p/3 - zeta_p.
    pub fn intermittency(&self, p: f64) -> f64 {
        p / 3.0 - self.zeta(p)
    }

    /// Closed-form Legendre dual of the spectrum:
    /// p h0 - (p^2 sigma^2 / 2) shrink.
    pub fn zeta_quadratic(&self, p: f64) -> f64 {
        p * self.h0 - 0.5 * p * p * self.sigma2 * self.shrink
    }

    /// Numerical Legendre transform min_h [p h + 3 - D(h)].
    ///
    /// Scans a fine grid that brackets the minimizer, then refines with the
    /// parabola through the best node and its neighbors. The objective is
    /// globally quadratic, so the refinement lands on the vertex.
    pub fn legendre_numeric(&self, p: f64) -> f64 {
        let objective = |h: f64| p * h + 3.0 - self.d_of_h(h);
        let center = self.h0 - p * self.sigma2 * self.shrink;
        let span = 1.0 + (self.sigma2 * self.shrink).abs();
        let lo = center - span;
        let hi = center + span;
        let n = 4000usize;
        let dh = (hi - lo) / n as f64;
        let mut best = (objective(lo), 0usize);
        for i in 1..=n {
            let f = objective(lo + i as f64 * dh);
            if f < best.0 {
                best = (f, i);
            }
        }
        let i = best.1.clamp(1, n - 1);
        let (hm, h0g, hp) = (
            lo + (i - 1) as f64 * dh,
            lo + i as f64 * dh,
            lo + (i + 1) as f64 * dh,
        );
        let (fm, f0, fp) = (objective(hm), objective(h0g), objective(hp));
        let denom = fm - 2.0 * f0 + fp;
        if denom <= 0.0 {
            return f0;
        }
        let vertex = h0g + dh * (fm - fp) / (2.0 * denom);
        objective(vertex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(deltas: &[f64]) -> LogLadderParams {
        LogLadderParams::with_unit_constants(deltas.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn vertex_value_is_three() {
        for (s, d) in [(0.6, vec![1.0]), (0.75, vec![0.5, 2.0]), (0.9, vec![])] {
            let m = multifractal_model(s, &unit(&d)).unwrap();
            assert_eq!(m.d_of_h(m.h0), 3.0);
            assert!(m.d_of_h(m.h0 + 0.1) < 3.0);
            assert!(m.d_of_h(m.h0 - 0.1) < 3.0);
        }
    }

    #[test]
    fn zeta_at_three_is_one() {
        for (s, d) in [(0.51, vec![3.0]), (2.0 / 3.0, vec![1.0]), (0.95, vec![])] {
            let m = multifractal_model(s, &unit(&d)).unwrap();
            assert_eq!(m.zeta(3.0), 1.0);
        }
    }

    #[test]
    fn reference_values_at_kolmogorov_order() {
        // s = 2/3 gives sigma^2 = 5; with delta = (1) the shrink is 1/2
        let m = multifractal_model(2.0 / 3.0, &unit(&[1.0])).unwrap();
        assert!(close(m.zeta(2.0), 7.0 / 3.0, 1e-14));
        assert!(close(m.intermittency(2.0), -5.0 / 3.0, 1e-14));
    }

    #[test]
    fn legendre_duality() {
        for (s, d) in [
            (0.6, vec![1.0]),
            (0.75, vec![0.5, 2.0]),
            (0.55, vec![]),
            (0.9, vec![3.0, 1.0, 0.25]),
        ] {
            let m = multifractal_model(s, &unit(&d)).unwrap();
            let mut p = 0.5;
            while p <= 8.0 {
                let numeric = m.legendre_numeric(p);
                let exact = m.zeta_quadratic(p);
                assert!(
                    (numeric - exact).abs() <= 1e-8 * exact.abs().max(1.0),
                    "s={s} p={p}: {numeric} vs {exact}"
                );
                p += 0.5;
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(multifractal_model(0.5, &unit(&[1.0])).is_err());
        assert!(multifractal_model(1.0, &unit(&[1.0])).is_err());
    }
}
