//! Scalar comparison dynamics for the fractional energy Y(t): closed forms,
//! adaptive integration with finite-time blow-up detection, the dichotomy
//! model, and blow-up exponent fitting.

mod comparison;
mod dichotomy;
mod fit;
mod integrate;

pub use comparison::{decay_envelope, ComparisonOde};
pub use dichotomy::{run_dichotomy, DichotomyOde, DichotomyOutcome, DichotomyRun};
pub use fit::{fit_blowup_exponent, fit_blowup_exponent_window};
pub use integrate::{integrate, IntegrateOptions, OdeTrajectory, Terminal};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OdeError {
    #[error("parameter {name} = {value} out of domain: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("evaluation at t = {t} is at or beyond the blow-up time t* = {t_star}")]
    BeyondBlowUp { t: f64, t_star: f64 },
    #[error("step size underflow at t = {t} without a ceiling crossing")]
    Stiffness { t: f64 },
    #[error("blow-up exponent fit failed: {reason}")]
    Fit { reason: &'static str },
}

pub(crate) fn require(
    ok: bool,
    name: &'static str,
    value: f64,
    requirement: &'static str,
) -> Result<(), OdeError> {
    if ok {
        Ok(())
    } else {
        Err(OdeError::Domain {
            name,
            value,
            requirement,
        })
    }
}
