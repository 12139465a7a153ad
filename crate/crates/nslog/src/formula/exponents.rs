//! Derived scaling exponents for a parameter pair (s, q).

use super::{require, FormulaError};

/// Exact-equality tolerance for detecting the p = infinity branch of the
/// scaling relation 2/p + 3/q = 2s - 1.
const P_INF_TOL: f64 = 1e-14;

/// Scalar exponents derived from the dissipation order `s`, the Lebesgue
/// index `q`, and the margin `eta`.
///
/// * `theta` = (3/2) q / (3q - 2), the gradient interpolation exponent
/// * `alpha_gn` = (3/2)(1/2 - 1/q), the Gagliardo-Nirenberg exponent
/// * `mu` = theta (1 - alpha_gn) / (2 - theta alpha_gn) + eta
/// * `gamma_decay` = 1 / (2 mu)
/// * `p_scaling` solves 2/p + 3/q = 2s - 1 (infinity on the borderline)
/// * `delta01` = min((q-3)/(6q), (2s-1)/(4s)), the admissible delta_1 ceiling
/// * `beta_ode` is `mu` with eta = 0, the growth exponent of the comparison ODE
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPack {
    pub s: f64,
    pub q: f64,
    pub eta: f64,
    pub theta: f64,
    pub alpha_gn: f64,
    pub mu: f64,
    pub gamma_decay: f64,
    pub p_scaling: f64,
    pub delta01: f64,
    pub beta_ode: f64,
}

impl ExponentPack {
    /// Default margin used when the caller has no opinion.
    pub const DEFAULT_ETA: f64 = 0.01;

    pub fn new(s: f64, q: f64, eta: f64) -> Result<Self, FormulaError> {
        require(s > 0.5 && s < 1.0, "s", s, "must lie in (1/2, 1)")?;
        require(q > 3.0 && q.is_finite(), "q", q, "must be > 3")?;
        require(eta >= 0.0 && eta.is_finite(), "eta", eta, "must be >= 0")?;

        let theta = 1.5 * q / (3.0 * q - 2.0);
        let alpha_gn = 1.5 * (0.5 - 1.0 / q);
        let beta_ode = theta * (1.0 - alpha_gn) / (2.0 - theta * alpha_gn);
        let mu = beta_ode + eta;
        let gamma_decay = 1.0 / (2.0 * mu);
        let gap = (2.0 * s - 1.0) - 3.0 / q;
        let p_scaling = if gap.abs() <= P_INF_TOL {
            f64::INFINITY
        } else {
            2.0 / gap
        };
        let delta01 = ((q - 3.0) / (6.0 * q)).min((2.0 * s - 1.0) / (4.0 * s));
        Ok(Self {
            s,
            q,
            eta,
            theta,
            alpha_gn,
            mu,
            gamma_decay,
            p_scaling,
            delta01,
            beta_ode,
        })
    }
}
