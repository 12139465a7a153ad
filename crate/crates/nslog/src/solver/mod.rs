//! Pseudo-spectral time integration of the incompressible Navier-Stokes
//! equations with fractional dissipation nu (-Delta)^s on a periodic box,
//! plus the initial-data constructions and admissibility/criterion
//! accounting that go with it.

mod checks;
mod config;
mod init;
mod run;
mod step;

pub use checks::{admissibility_check, decay_audit, AdmissibilityCheck, DecayAudit};
pub use config::{DtPolicy, Forcing, SolverConfig};
pub use init::{
    make_abc, make_cross_shear, make_random_divfree, make_scaled_family, make_shear,
    make_shell_datum, make_taylor_green_2d,
};
pub use run::{run, DiagnosticsRecord, RunResult};
pub use step::{step, SolverState};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("configuration invalid: {0}")]
    Config(String),
    #[error("field became non-finite at t = {t}")]
    Diverged { t: f64 },
    #[error("time step underflow at t = {t}")]
    Stability { t: f64 },
    #[error("initial data construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error(transparent)]
    Formula(#[from] crate::formula::FormulaError),
}
