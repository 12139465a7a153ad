//! Asymptotic exponents of the hypothetical blow-up scenario.

use super::exponents::ExponentPack;
use super::ladder::LogLadderParams;
use super::FormulaError;

/// Exponent bundle for a potential singularity at finite time.
///
/// The gradient rate is reported in both published forms: the defining
/// (1 + beta)/(2 beta) and the expanded (2 - theta alpha)/(2 theta (1 - alpha)).
/// Algebraically they differ by exactly 1/2; both are exposed and the beta
/// form is the one to quote.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupExponents {
    pub grad_exp_beta_form: f64,
    pub grad_exp_explicit_form: f64,
    pub velocity_exp: f64,
    pub filament_exp: f64,
    pub alignment_exp: f64,
    pub singular_dim: f64,
}

pub fn blowup_exponents(
    s: f64,
    q: f64,
    params: &LogLadderParams,
) -> Result<BlowupExponents, FormulaError> {
    let pack = ExponentPack::new(s, q, 0.0)?;
    let beta = pack.beta_ode;
    let grad_exp_beta_form = (1.0 + beta) / (2.0 * beta);
    let grad_exp_explicit_form =
        (2.0 - pack.theta * pack.alpha_gn) / (2.0 * pack.theta * (1.0 - pack.alpha_gn));

    let mut vel_sum = 0.0;
    let mut fil_sum = 0.0;
    let mut ali_sum = 0.0;
    let mut dim_sum = 0.0;
    for (j, &d) in params.deltas().iter().enumerate() {
        let frac = d / (1.0 + d);
        vel_sum += d / ((1.0 + d) * (2.0 + d));
        fil_sum += frac;
        ali_sum += frac / 2.0;
        dim_sum += frac / (j as f64 + 2.0);
    }

    Ok(BlowupExponents {
        grad_exp_beta_form,
        grad_exp_explicit_form,
        velocity_exp: 0.5 - vel_sum,
        filament_exp: 0.5 + fil_sum,
        alignment_exp: ali_sum,
        singular_dim: (1.0 - dim_sum).max(0.0),
    })
}
