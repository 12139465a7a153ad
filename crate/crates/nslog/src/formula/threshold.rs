//! Critical threshold exponent alpha({delta_j}), its asymptote in s, and
//! the ladder-depth selector.

use super::ladder::LogLadderParams;
use super::{require, FormulaError};

/// alpha({delta_j}) = 1 / (1 + sum_{j=1..n} c_j delta_j / j!).
///
/// Equals 1 on the empty or all-zero ladder and decreases strictly in every
/// delta_j whose c_j > 0.
pub fn alpha_threshold(params: &LogLadderParams) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for (j, (&d, &c)) in params.deltas().iter().zip(params.cs()).enumerate() {
        fact *= (j + 1) as f64;
        sum += c * d / fact;
    }
    1.0 / (1.0 + sum)
}

/// Threshold asymptote cq (s - 1/2)^{alpha({delta_j})} for s near 1/2.
pub fn threshold_asymptote(
    s: f64,
    cq: f64,
    params: &LogLadderParams,
) -> Result<f64, FormulaError> {
    require(s > 0.5 && s < 1.0, "s", s, "must lie in (1/2, 1)")?;
    require(cq > 0.0 && cq.is_finite(), "cq", cq, "must be > 0")?;
    Ok(cq * (s - 0.5).powf(alpha_threshold(params)))
}

/// Outcome of the ladder-depth search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathwayLevel {
    /// Smallest prefix length N with alpha(prefix) below the target.
    Reachable(usize),
    /// Even the full ladder keeps alpha at or above the target.
    Unreachable,
}

/// Smallest prefix length N <= n such that
/// alpha({delta_j}_{j<=N}) < 1 / ln(1/(s - 1/2)).
pub fn pathway_level(s: f64, params: &LogLadderParams) -> Result<PathwayLevel, FormulaError> {
    require(s > 0.5 && s < 1.0, "s", s, "must lie in (1/2, 1)")?;
    let gap = s - 0.5;
    let lg = (1.0 / gap).ln();
    require(lg > 0.0, "s", s, "log(1/(s - 1/2)) must be positive")?;
    let target = 1.0 / lg;
    for n in 1..=params.levels() {
        if alpha_threshold(&params.prefix(n)) < target {
            return Ok(PathwayLevel::Reachable(n));
        }
    }
    Ok(PathwayLevel::Unreachable)
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
    fn alpha_examples() {
        assert_eq!(alpha_threshold(&unit(&[0.0, 0.0])), 1.0);
        assert_eq!(alpha_threshold(&LogLadderParams::empty()), 1.0);
        assert!(close(alpha_threshold(&unit(&[1.0, 1.0])), 0.4, 1e-15));
        assert!(close(alpha_threshold(&unit(&[1.0])), 0.5, 1e-15));
    }

    #[test]
    fn alpha_strictly_decreasing_in_each_delta() {
        let base = alpha_threshold(&unit(&[1.0, 1.0, 1.0]));
        for j in 0..3 {
            let mut d = vec![1.0, 1.0, 1.0];
            d[j] += 0.5;
            assert!(alpha_threshold(&unit(&d)) < base);
        }
    }

    #[test]
    fn asymptote_examples() {
        let p = unit(&[1.0]);
        // (0.01)^{1/2} = 0.1
        let v = threshold_asymptote(0.51, 1.0, &p).unwrap();
        assert!(close(v, 0.1, 1e-13));
        // tends to zero from the right
        let tiny = threshold_asymptote(0.5 + 1e-12, 1.0, &p).unwrap();
        assert!(tiny < 1e-5);
        // increasing in s
        assert!(
            threshold_asymptote(0.7, 1.0, &p).unwrap() > threshold_asymptote(0.6, 1.0, &p).unwrap()
        );
        assert!(threshold_asymptote(0.5, 1.0, &p).is_err());
    }

    #[test]
    fn deeper_ladder_raises_near_critical_threshold() {
        // at fixed s < 1/2 + 1 the base is < 1, so a smaller exponent
        // (larger delta_1) gives a larger value
        let small = threshold_asymptote(0.6, 1.0, &unit(&[1.0])).unwrap();
        let large = threshold_asymptote(0.6, 1.0, &unit(&[4.0])).unwrap();
        assert!(large > small);
    }

    #[test]
    fn pathway_examples() {
        assert_eq!(
            pathway_level(0.51, &unit(&[5.0])).unwrap(),
            PathwayLevel::Reachable(1)
        );
        assert_eq!(
            pathway_level(0.51, &unit(&[1.0, 1.0, 1.0])).unwrap(),
            PathwayLevel::Unreachable
        );
        assert_eq!(
            pathway_level(0.51, &unit(&[10.0, 10.0])).unwrap(),
            PathwayLevel::Reachable(1)
        );
        assert!(pathway_level(0.4, &unit(&[1.0])).is_err());
    }
}
