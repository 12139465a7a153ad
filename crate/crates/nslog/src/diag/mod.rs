//! Spectral and geometric diagnostics of field snapshots: spectra, fluxes,
//! model fits, structure functions, exceptional sets, box counting, local
//! scaling, strain alignment, and norm-ratio series.

mod alignment;
mod boxcount;
mod exceptional;
mod localscale;
mod ratio;
mod specfit;
mod spectrum;
mod structure;

pub use alignment::{alignment_statistics, AlignmentStats};
pub use boxcount::{box_counting_dimension, BoxCountResult};
pub use exceptional::{exceptional_set, ExceptionalSet};
pub use localscale::{local_scaling_histogram, LocalScaling};
pub use ratio::{ratio_series, ratio_tail_slope, RatioPoint};
pub use specfit::{flux_audit, spectrum_fit, FluxAudit, SpectrumFit};
pub use spectrum::{energy_flux, energy_spectrum, spectrum_of_spec, ShellSpectrum};
pub use structure::{structure_functions, structure_functions_axis, StructureFunctionTable};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagError {
    #[error("parameter {name} = {value} out of domain: {requirement}")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("configuration invalid: {0}")]
    Config(String),
    #[error("estimator failed: {0}")]
    Estimator(String),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

pub(crate) fn require(
    ok: bool,
    name: &'static str,
    value: f64,
    requirement: &'static str,
) -> Result<(), DiagError> {
    if ok {
        Ok(())
    } else {
        Err(DiagError::Domain {
            name,
            value,
            requirement,
        })
    }
}
