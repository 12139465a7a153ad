//! Initial-data admissibility and decay-envelope auditing.

use crate::field::{divergence_rel, forward, fractional_lq_norm, spectral_seminorm, PhysField};
use crate::formula::{log_weight, ExponentPack, LogLadderParams};

use super::run::DiagnosticsRecord;
use super::SolverError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityCheck {
    /// ||(-Delta)^{s/2} u0||_{L^q}.
    pub lhs: f64,
    /// C0 / prod (1 + L_j(||u0||_{H^s}))^{delta_j}.
    pub rhs: f64,
    pub admissible: bool,
}

/// Smallness test of the initial data against the ladder-weighted ceiling.
pub fn admissibility_check(
    u0: &PhysField,
    s: f64,
    q: f64,
    params: &LogLadderParams,
) -> Result<AdmissibilityCheck, SolverError> {
    if !(s > 0.5 && s < 1.0) {
        return Err(SolverError::Config(format!("s = {s} must lie in (1/2, 1)")));
    }
    if !(q > 3.0) {
        return Err(SolverError::Config(format!("q = {q} must be > 3")));
    }
    let u_hat = forward(u0)?;
    let div = divergence_rel(&u_hat);
    if div > 1e-8 {
        return Err(SolverError::Config(format!(
            "initial data must be divergence-free: relative divergence {div:.3e}"
        )));
    }
    let lhs = fractional_lq_norm(u0, s / 2.0, q)?;
    let hs = spectral_seminorm(&u_hat, s);
    let rhs = params.c0() / log_weight(hs, params)?;
    Ok(AdmissibilityCheck {
        lhs,
        rhs,
        admissible: lhs <= rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayAudit {
    /// Number of records whose seminorm exceeds the envelope.
    pub violations: usize,
    /// Minimum of envelope/value across records (infinite if all values vanish).
    pub margin: f64,
}

/// Compare recorded H^s seminorms against c_env hs(0) / (1 + beta t)^gamma.
pub fn decay_audit(
    records: &[DiagnosticsRecord],
    pack: &ExponentPack,
    c_env: f64,
    beta_env: f64,
) -> Result<DecayAudit, SolverError> {
    if records.is_empty() {
        return Err(SolverError::Config("no records to audit".into()));
    }
    if !(c_env > 0.0 && beta_env > 0.0) {
        return Err(SolverError::Config(
            "envelope constants must be positive".into(),
        ));
    }
    let hs0 = records[0].hs_semi;
    let mut violations = 0usize;
    let mut margin = f64::INFINITY;
    for r in records {
        let envelope = c_env * hs0 / (1.0 + beta_env * r.t).powf(pack.gamma_decay);
        if r.hs_semi > envelope {
            violations += 1;
        }
        if r.hs_semi > 0.0 {
            margin = margin.min(envelope / r.hs_semi);
        }
    }
    Ok(DecayAudit { violations, margin })
}
