//! Periodic vector-field kernel: grids, transforms, Fourier-multiplier
//! operators, norms, dyadic shells, the fractional advection commutator,
//! and the NSL1 snapshot format.

mod commutator;
mod data;
mod fft;
mod grid;
mod norms;
mod nsl1;
mod ops;
mod shells;

pub use commutator::{
    advect, advective_term, commutator, commutator_audit, divergence_rel, CommutatorAudit,
};
pub use data::{PhysField, SpecField, C64};
pub use fft::{forward, inverse};
pub use grid::Grid;
pub use norms::{
    fractional_lq_norm, gradient_magnitude, grid_lq_norm, norms, spectral_seminorm, FieldNorms,
};
pub use nsl1::{read_nsl1, write_nsl1, NSL1_MAGIC, NSL1_VERSION};
pub use ops::{
    apply_fractional, curl, dealias, divergence, fractional_laplacian, gradient, leray_project,
};
pub use shells::{shell_project, ShellPartition};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("parameter {name} = {value} out of domain: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("grid configuration invalid: {0}")]
    Grid(String),
    #[error("field data invalid: {0}")]
    Data(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("snapshot format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn require(
    ok: bool,
    name: &'static str,
    value: f64,
    requirement: &'static str,
) -> Result<(), FieldError> {
    if ok {
        Ok(())
    } else {
        Err(FieldError::Domain {
            name,
            value,
            requirement,
        })
    }
}
