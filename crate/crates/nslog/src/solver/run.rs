//! Time loop with periodic diagnostics records.

use crate::diag::{spectrum_of_spec, ShellSpectrum};
use crate::field::{
    apply_fractional, gradient, grid_lq_norm, inverse, spectral_seminorm, PhysField,
};

use super::config::SolverConfig;
use super::step::{policy_dt, step_dt, SolverState};
use super::SolverError;

/// Snapshot diagnostics taken every `record_every` time units.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// Kinetic energy (1/2) ||u||_{L^2}^2 over the box.
    pub energy: f64,
    pub l2: f64,
    /// Homogeneous H^s seminorm ||(-Delta)^{s/2} u||_{L^2}.
    pub hs_semi: f64,
    /// ||(-Delta)^{s/2} u||_{L^q}.
    pub frac_lq_half: f64,
    /// ||(-Delta)^{s} u||_{L^q}.
    pub frac_lq_full: f64,
    /// ||(-Delta)^{1/2} u||_{L^q}, for norm-ratio series.
    pub half_lap_lq: f64,
    pub grad_linf: f64,
    pub eps_rate_s1: f64,
    pub eps_rate_frac: f64,
    pub criterion_accum: f64,
    pub grad2_accum: f64,
    /// Shell energies at this snapshot.
    pub e_k: Vec<f64>,
}

impl DiagnosticsRecord {
    pub const CSV_HEADER: &'static str =
        "t,energy,hs_semi,frac_lq_half,frac_lq_full,grad_linf,eps_rate,criterion_accum,grad2_accum";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.t,
            self.energy,
            self.hs_semi,
            self.frac_lq_half,
            self.frac_lq_full,
            self.grad_linf,
            self.eps_rate_frac,
            self.criterion_accum,
            self.grad2_accum
        )
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub final_state: SolverState,
    pub records: Vec<DiagnosticsRecord>,
}

fn record_of(state: &SolverState, cfg: &SolverConfig) -> Result<DiagnosticsRecord, SolverError> {
    let u_hat = &state.u;
    let spec: ShellSpectrum = spectrum_of_spec(u_hat, cfg.nu, cfg.s);
    let l2 = u_hat.l2_sq().sqrt();
    let hs_semi = spectral_seminorm(u_hat, cfg.s);
    let half = inverse(&apply_fractional(u_hat, cfg.s / 2.0))?;
    let frac_lq_half = grid_lq_norm(&half, cfg.q)?;
    let full = inverse(&apply_fractional(u_hat, cfg.s))?;
    let frac_lq_full = grid_lq_norm(&full, cfg.q)?;
    let half_lap = inverse(&apply_fractional(u_hat, 0.5))?;
    let half_lap_lq = grid_lq_norm(&half_lap, cfg.q)?;
    let grad = inverse(&gradient(u_hat))?;
    let n = u_hat.grid().total_points();
    let mut grad_linf = 0.0f64;
    for idx in 0..n {
        let mut acc = 0.0;
        for c in 0..grad.ncomp() {
            let v = grad.comp(c)[idx];
            acc += v * v;
        }
        grad_linf = grad_linf.max(acc);
    }
    Ok(DiagnosticsRecord {
        t: state.t,
        energy: state.energy(),
        l2,
        hs_semi,
        frac_lq_half,
        frac_lq_full,
        half_lap_lq,
        grad_linf: grad_linf.sqrt(),
        eps_rate_s1: spec.eps_rate_s1,
        eps_rate_frac: spec.eps_rate_frac,
        criterion_accum: state.criterion_accum,
        grad2_accum: state.grad2_accum,
        e_k: spec.e_k,
    })
}

/// Integrate to t_end, emitting a record at t = 0 and every record_every
/// time units (steps land exactly on record times). Deterministic for a
/// fixed configuration and initial field.
pub fn run(u0: &PhysField, cfg: &SolverConfig) -> Result<RunResult, SolverError> {
    cfg.validate()?;
    let mut state = SolverState::new(u0, cfg)?;
    let mut records = vec![record_of(&state, cfg)?];
    let mut record_index = 1u64;
    let tiny = 1e-12 * cfg.t_end.max(1.0);
    while state.t < cfg.t_end - tiny {
        let next_record = (record_index as f64) * cfg.record_every;
        let target = next_record.min(cfg.t_end);
        while state.t < target - tiny {
            let dt = policy_dt(&state, cfg)?.min(target - state.t);
            state = step_dt(&state, cfg, dt)?;
        }
        if (state.t - next_record).abs() <= tiny {
            records.push(record_of(&state, cfg)?);
            record_index += 1;
        } else if (state.t - cfg.t_end).abs() <= tiny {
            // final time is not a record multiple; keep the closing snapshot
            records.push(record_of(&state, cfg)?);
        }
    }
    Ok(RunResult {
        final_state: state,
        records,
    })
}
