//! Numerical laboratory for nested-logarithmic regularity criteria of the
//! incompressible Navier-Stokes equations with fractional dissipation.
//!
//! The crate is organized around five subsystems:
//!
//! * [`formula`] evaluates every closed-form exponent, bound, and model
//!   curve of the underlying theory.
//! * [`ode`] integrates the scalar comparison equations that govern the
//!   growth or decay of fractional energy norms.
//! * [`field`] is the periodic vector-field kernel: transforms, Fourier
//!   multipliers, projections, norms, dyadic shells, and the fractional
//!   advection commutator.
//! * [`solver`] advances the fractional Navier-Stokes equations on a
//!   periodic box with a pseudo-spectral integrating-factor scheme.
//! * [`diag`] extracts spectra, fluxes, structure functions, exceptional
//!   sets, and alignment statistics from field snapshots.

pub mod diag;
pub mod field;
pub mod formula;
pub mod ode;
pub mod solver;
