//! Closed-form evaluators: the nested logarithm ladder, scaling exponents,
//! threshold asymptotics, blow-up and geometry exponents, the multifractal
//! model, spectral model curves, and the dichotomy coefficient.
//!
//! Every function here is pure and cheap; none touches a grid. All unnamed
//! constants of the theory (C, C0, C3, C(q), c_j, beta_{0,j}, the Kolmogorov
//! constant and the dissipation-range constant c) are carried as
//! configuration values defaulting to 1.

mod blowup;
mod dichotomy;
mod exponents;
mod geometry;
mod ladder;
mod multifractal;
mod spectral;
mod threshold;

pub use blowup::{blowup_exponents, BlowupExponents};
pub use dichotomy::{dichotomy_omega, DichotomyBranch, DichotomyOmega};
pub use exponents::ExponentPack;
pub use geometry::{exceptional_geometry, ExceptionalGeometry};
pub use ladder::{commutator_factors, log_weight, nested_log, LogLadderParams};
pub use multifractal::{multifractal_model, MultifractalModel};
pub use spectral::{spectral_models, SpectralModel, SpectralModelParams};
pub use threshold::{alpha_threshold, pathway_level, threshold_asymptote, PathwayLevel};

use thiserror::Error;

/// Errors raised by the closed-form evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormulaError {
    #[error("parameter {name} = {value} out of domain: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("ladder parameter sequences have mismatched lengths ({deltas} deltas vs {cs} constants)")]
    LadderLengths { deltas: usize, cs: usize },
    #[error("operation requires at least one ladder level")]
    EmptyLadder,
}

impl FormulaError {
    pub(crate) fn domain(name: &'static str, value: f64, requirement: &'static str) -> Self {
        FormulaError::Domain {
            name,
            value,
            requirement,
        }
    }
}

pub(crate) fn require(
    ok: bool,
    name: &'static str,
    value: f64,
    requirement: &'static str,
) -> Result<(), FormulaError> {
    if ok {
        Ok(())
    } else {
        Err(FormulaError::domain(name, value, requirement))
    }
}
