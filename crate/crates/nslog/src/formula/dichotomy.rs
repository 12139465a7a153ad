//! Dichotomy coefficient omega(lambda) separating growth-risk from
//! contracting evolution at the critical threshold.

use super::ladder::{log_weight, LogLadderParams};
use super::threshold::threshold_asymptote;
use super::{require, FormulaError};

/// Width of the marginal band around omega = 1.
const MARGINAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DichotomyBranch {
    /// omega < 1: the super-linear term keeps a positive coefficient.
    GrowthRisk,
    /// omega > 1: the super-linear term is damped.
    Contracting,
    /// |omega - 1| within tolerance.
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomyOmega {
    pub omega: f64,
    pub branch: DichotomyBranch,
}

/// omega(lambda) = C3 (s - 1/2)^{alpha({delta_j})} / (phi(lambda) W(lambda))
/// with phi(lambda) = (1 + ln lambda)^{-1/2} and W the ladder weight.
///
/// `q` is part of the parameter tuple the threshold theory is stated for;
/// it is validated but the asymptote itself does not involve it.
pub fn dichotomy_omega(
    lambda: f64,
    s: f64,
    q: f64,
    params: &LogLadderParams,
) -> Result<DichotomyOmega, FormulaError> {
    require(lambda >= 1.0, "lambda", lambda, "must be >= 1")?;
    require(q > 3.0, "q", q, "must be > 3")?;
    let gamma_tilde = threshold_asymptote(s, 1.0, params)?;
    let phi = (1.0 + lambda.ln()).powf(-0.5);
    let weight = log_weight(lambda, params)?;
    let omega = params.c3() * gamma_tilde / (phi * weight);
    let branch = if (omega - 1.0).abs() <= MARGINAL_TOL {
        DichotomyBranch::Marginal
    } else if omega < 1.0 {
        DichotomyBranch::GrowthRisk
    } else {
        DichotomyBranch::Contracting
    };
    Ok(DichotomyOmega { omega, branch })
}
