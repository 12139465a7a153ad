//! Integrating-factor RK4 time step. The dissipation multiplier
//! exp(-nu |k|^{2s} dt) is applied exactly per mode, so purely linear
//! dynamics incur no time-discretization error at all.

use crate::field::{
    advect, apply_fractional, dealias, divergence_rel, forward, grid_lq_norm, inverse,
    leray_project, PhysField, SpecField,
};
use crate::formula::log_weight;

use super::config::{DtPolicy, SolverConfig};
use super::SolverError;

/// Instantaneous solver state: coefficient-space velocity plus the running
/// criterion and gradient-square integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    pub t: f64,
    pub u: SpecField,
    /// Running integral of ||(-Delta)^s u||_{L^q}^p prod (1+L_j(.))^{-delta_j}.
    pub criterion_accum: f64,
    /// Running integral of ||grad u||_{L^inf}^2.
    pub grad2_accum: f64,
    pub(crate) criterion_integrand: f64,
    pub(crate) grad2_integrand: f64,
}

impl SolverState {
    /// Build the state at t = 0. The initial field must be divergence-free
    /// within 1e-8 relative; residual divergence is projected away.
    pub fn new(u0: &PhysField, cfg: &SolverConfig) -> Result<Self, SolverError> {
        cfg.validate()?;
        let mut u_hat = forward(u0)?;
        let div = divergence_rel(&u_hat);
        if div > 1e-8 {
            return Err(SolverError::Config(format!(
                "initial data must be divergence-free: relative divergence {div:.3e}"
            )));
        }
        if cfg.dealias {
            dealias(&mut u_hat);
        }
        let u_hat = leray_project(&u_hat)?;
        let (criterion_integrand, grad2_integrand) = integrands(&u_hat, cfg)?;
        Ok(Self {
            t: 0.0,
            u: u_hat,
            criterion_accum: 0.0,
            grad2_accum: 0.0,
            criterion_integrand,
            grad2_integrand,
        })
    }

    pub fn energy(&self) -> f64 {
        0.5 * self.u.l2_sq()
    }
}

/// Criterion and gradient-square integrands of the current field.
pub(crate) fn integrands(u_hat: &SpecField, cfg: &SolverConfig) -> Result<(f64, f64), SolverError> {
    let frac = inverse(&apply_fractional(u_hat, cfg.s))?;
    let frac_lq = grid_lq_norm(&frac, cfg.q)?;
    let p = cfg.criterion_power();
    let weight = log_weight(frac_lq, &cfg.ladder)?;
    let criterion = frac_lq.powf(p) / weight;

    let grad = inverse(&crate::field::gradient(u_hat))?;
    let n = u_hat.grid().total_points();
    let mut worst = 0.0f64;
    for idx in 0..n {
        let mut acc = 0.0;
        for c in 0..grad.ncomp() {
            let v = grad.comp(c)[idx];
            acc += v * v;
        }
        worst = worst.max(acc);
    }
    Ok((criterion, worst))
}

/// Max pointwise speed, for the CFL policy.
fn max_speed(u_hat: &SpecField) -> Result<f64, SolverError> {
    let u = inverse(u_hat)?;
    let n = u.grid().total_points();
    let mut worst = 0.0f64;
    for idx in 0..n {
        worst = worst.max(u.magnitude_at(idx));
    }
    Ok(worst)
}

/// Nonlinear operator N(u) = -P dealias((u.grad) u) + forcing.
fn nonlinear(u_hat: &SpecField, cfg: &SolverConfig) -> Result<SpecField, SolverError> {
    let adv = advect(u_hat, u_hat, cfg.dealias)?;
    let mut n = leray_project(&adv)?;
    for v in n.data_mut() {
        *v = -*v;
    }
    if let Some(f) = cfg.forcing {
        if f.rate > 0.0 {
            let grid = u_hat.grid();
            let npts = grid.total_points();
            let mut band_energy = 0.0f64;
            for idx in 0..npts {
                let k = grid.wavevector(idx);
                let k_mag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                if k_mag >= f.k_min && k_mag <= f.k_max && k_mag > 0.0 {
                    for c in 0..u_hat.ncomp() {
                        band_energy += 0.5 * u_hat.comp(c)[idx].norm_sqr();
                    }
                }
            }
            if band_energy > 1e-30 {
                let gain = f.rate / (2.0 * band_energy);
                for idx in 0..npts {
                    let k = grid.wavevector(idx);
                    let k_mag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                    if k_mag >= f.k_min && k_mag <= f.k_max && k_mag > 0.0 {
                        for c in 0..u_hat.ncomp() {
                            let drive = u_hat.comp(c)[idx] * gain;
                            n.comp_mut(c)[idx] += drive;
                        }
                    }
                }
            }
        }
    }
    Ok(n)
}

/// Integrating factors exp(-nu |k|^{2s} dt) for the full and half step.
fn exp_factors(u_hat: &SpecField, cfg: &SolverConfig, dt: f64) -> (Vec<f64>, Vec<f64>) {
    let grid = u_hat.grid();
    let n = grid.total_points();
    let mut full = vec![0.0f64; n];
    let mut half = vec![0.0f64; n];
    for idx in 0..n {
        let k = grid.wavevector(idx);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let lam = if k2 == 0.0 {
            0.0
        } else {
            cfg.nu * k2.powf(cfg.s)
        };
        full[idx] = (-lam * dt).exp();
        half[idx] = (-lam * dt * 0.5).exp();
    }
    (full, half)
}

fn apply_factor(g: &SpecField, factor: &[f64]) -> SpecField {
    let mut out = g.clone();
    for c in 0..out.ncomp() {
        let comp = out.comp_mut(c);
        for (v, &f) in comp.iter_mut().zip(factor) {
            *v *= f;
        }
    }
    out
}

fn axpy(y: &mut SpecField, a: f64, x: &SpecField) {
    for (yv, &xv) in y.data_mut().iter_mut().zip(x.data()) {
        *yv += xv * a;
    }
}

/// One integrating-factor RK4 step of size dt.
pub(crate) fn step_dt(
    state: &SolverState,
    cfg: &SolverConfig,
    dt: f64,
) -> Result<SolverState, SolverError> {
    if !(dt > 1e-12) {
        return Err(SolverError::Stability { t: state.t });
    }
    let u = &state.u;
    let (e_full, e_half) = exp_factors(u, cfg, dt);

    let k1 = nonlinear(u, cfg)?;

    // stage 2: N(E_half (u + dt/2 k1))
    let mut s2 = u.clone();
    axpy(&mut s2, dt * 0.5, &k1);
    let s2 = apply_factor(&s2, &e_half);
    let k2 = nonlinear(&s2, cfg)?;

    // stage 3: N(E_half u + dt/2 k2)
    let mut s3 = apply_factor(u, &e_half);
    axpy(&mut s3, dt * 0.5, &k2);
    let k3 = nonlinear(&s3, cfg)?;

    // stage 4: N(E_full u + dt E_half k3)
    let mut s4 = apply_factor(u, &e_full);
    let k3_half = apply_factor(&k3, &e_half);
    axpy(&mut s4, dt, &k3_half);
    let k4 = nonlinear(&s4, cfg)?;

    // u' = E_full u + dt/6 (E_full k1 + 2 E_half (k2 + k3) + k4)
    let mut next = apply_factor(u, &e_full);
    let k1_full = apply_factor(&k1, &e_full);
    axpy(&mut next, dt / 6.0, &k1_full);
    let mut k23 = k2;
    for (a, &b) in k23.data_mut().iter_mut().zip(k3.data()) {
        *a += b;
    }
    let k23_half = apply_factor(&k23, &e_half);
    axpy(&mut next, dt / 3.0, &k23_half);
    axpy(&mut next, dt / 6.0, &k4);

    let mut next = leray_project(&next)?;
    if cfg.dealias {
        dealias(&mut next);
    }
    if next.data().iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(SolverError::Diverged { t: state.t + dt });
    }

    let (criterion_integrand, grad2_integrand) = integrands(&next, cfg)?;
    Ok(SolverState {
        t: state.t + dt,
        u: next,
        criterion_accum: state.criterion_accum
            + 0.5 * dt * (state.criterion_integrand + criterion_integrand),
        grad2_accum: state.grad2_accum + 0.5 * dt * (state.grad2_integrand + grad2_integrand),
        criterion_integrand,
        grad2_integrand,
    })
}

/// Step size the configuration policy asks for at this state.
pub(crate) fn policy_dt(state: &SolverState, cfg: &SolverConfig) -> Result<f64, SolverError> {
    match cfg.dt {
        DtPolicy::Fixed(dt) => Ok(dt),
        DtPolicy::Cfl(c) => {
            let speed = max_speed(&state.u)?;
            let grid = state.u.grid();
            let dx = (0..grid.rank())
                .map(|a| grid.spacing(a))
                .fold(f64::INFINITY, f64::min);
            if speed <= 1e-14 {
                Ok(cfg.record_every)
            } else {
                Ok(c * dx / speed)
            }
        }
    }
}

/// Advance one step, clamped so the run never overshoots t_end.
pub fn step(state: &SolverState, cfg: &SolverConfig) -> Result<SolverState, SolverError> {
    let dt = policy_dt(state, cfg)?.min(cfg.t_end - state.t);
    step_dt(state, cfg, dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid;
    use crate::solver::init::{make_shear, make_taylor_green_2d};

    #[test]
    fn zero_field_stays_zero() {
        let g = Grid::cube(8).unwrap();
        let cfg = SolverConfig::new(0.1, 0.75, DtPolicy::Fixed(0.01), 1.0).unwrap();
        let f = PhysField::zeros(g, 3);
        let state = SolverState::new(&f, &cfg).unwrap();
        let next = step(&state, &cfg).unwrap();
        assert_eq!(next.energy(), 0.0);
    }

    #[test]
    fn shear_mode_decays_exactly() {
        let g = Grid::cube(16).unwrap();
        let s = 0.75;
        let nu = 0.1;
        let cfg = SolverConfig::new(nu, s, DtPolicy::Fixed(0.05), 1.0).unwrap();
        let f = make_shear(g, 1, 1.0).unwrap();
        let mut state = SolverState::new(&f, &cfg).unwrap();
        for _ in 0..20 {
            state = step(&state, &cfg).unwrap();
        }
        // amplitude after t = 1 with |k| = 1: exp(-nu)
        let u = inverse(&state.u).unwrap();
        let expect = (-nu * 1.0f64).exp();
        let amp = u.max_abs();
        assert!(
            (amp - expect).abs() < 1e-10,
            "amplitude {amp} vs {expect}"
        );
    }

    #[test]
    fn vortex_array_decays_exactly_at_s_one() {
        let g = Grid::square(32).unwrap();
        let nu = 0.1;
        let cfg = SolverConfig::new(nu, 1.0, DtPolicy::Fixed(0.02), 1.0).unwrap();
        let f = make_taylor_green_2d(g, 1.0).unwrap();
        let mut state = SolverState::new(&f, &cfg).unwrap();
        for _ in 0..50 {
            state = step(&state, &cfg).unwrap();
        }
        let u = inverse(&state.u).unwrap();
        let decay = (-2.0 * nu * 1.0f64).exp();
        let expect = make_taylor_green_2d(g, decay).unwrap();
        let worst = u
            .data()
            .iter()
            .zip(expect.data())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(worst < 1e-6, "max error {worst}");
    }

    #[test]
    fn divergence_stays_negligible() {
        let g = Grid::cube(16).unwrap();
        let cfg = SolverConfig::new(0.05, 0.8, DtPolicy::Fixed(0.01), 1.0).unwrap();
        let f = crate::solver::init::make_abc(g, 1.0, 1.0, 1.0).unwrap();
        let mut state = SolverState::new(&f, &cfg).unwrap();
        for _ in 0..10 {
            state = step(&state, &cfg).unwrap();
            assert!(divergence_rel(&state.u) < 1e-10);
        }
    }

    #[test]
    fn rejects_divergent_initial_data() {
        let g = Grid::cube(8).unwrap();
        let cfg = SolverConfig::new(0.1, 0.75, DtPolicy::Fixed(0.01), 1.0).unwrap();
        let f = PhysField::from_fn(g, 3, |c, x, _, _| if c == 0 { x.sin() } else { 0.0 });
        assert!(SolverState::new(&f, &cfg).is_err());
    }
}
