//! Closed-form tables over parameter grids.

use std::fmt::Write as _;

use nslog::formula::{
    alpha_threshold, blowup_exponents, commutator_factors, dichotomy_omega, exceptional_geometry,
    multifractal_model, pathway_level, spectral_models, threshold_asymptote, ExponentPack,
    LogLadderParams, PathwayLevel, SpectralModelParams,
};

use crate::config::RunConfig;
use crate::manifest::RunRecorder;

use super::{num_err, CmdError};

fn lin_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

pub fn run(cfg: &RunConfig, rec: &mut RunRecorder) -> Result<(), CmdError> {
    let ladder: LogLadderParams = cfg.ladder.params().map_err(num_err)?;
    let ex = &cfg.exponents;
    let fb = &cfg.formulas;
    let pack = ExponentPack::new(ex.s, ex.q, ex.eta).map_err(num_err)?;

    // scalar exponent pack and blow-up exponents
    let blow = blowup_exponents(ex.s, ex.q, &ladder).map_err(num_err)?;
    let mut out = String::from("name,value\n");
    for (name, value) in [
        ("s", pack.s),
        ("q", pack.q),
        ("eta", pack.eta),
        ("theta", pack.theta),
        ("alpha_gn", pack.alpha_gn),
        ("mu", pack.mu),
        ("gamma_decay", pack.gamma_decay),
        ("p_scaling", pack.p_scaling),
        ("delta01", pack.delta01),
        ("beta_ode", pack.beta_ode),
        ("alpha_threshold", alpha_threshold(&ladder)),
        ("grad_exp_beta_form", blow.grad_exp_beta_form),
        ("grad_exp_explicit_form", blow.grad_exp_explicit_form),
        ("velocity_exp", blow.velocity_exp),
        ("filament_exp", blow.filament_exp),
        ("alignment_exp", blow.alignment_exp),
        ("singular_dim", blow.singular_dim),
    ] {
        let _ = writeln!(out, "{name},{value}");
    }
    rec.write_output("exponents.csv", out.as_bytes())?;
    rec.stage_ok("exponents");

    // threshold asymptote and ladder-depth selector over the s grid
    let mut out = String::from("s,phi_bound,pathway_level\n");
    for s in lin_grid(fb.s_min, fb.s_max, fb.s_count) {
        let phi = threshold_asymptote(s, fb.cq, &ladder).map_err(num_err)?;
        let level = match pathway_level(s, &ladder).map_err(num_err)? {
            PathwayLevel::Reachable(n) => n.to_string(),
            PathwayLevel::Unreachable => "unreachable".to_string(),
        };
        let _ = writeln!(out, "{s},{phi},{level}");
    }
    rec.write_output("threshold.csv", out.as_bytes())?;
    rec.stage_ok("threshold");

    // alpha against a uniform scaling of the improvement exponents
    let mut out = String::from("scale,alpha\n");
    for i in 0..=12 {
        let scale = i as f64 * 0.25;
        let scaled: Vec<f64> = cfg.ladder.deltas.iter().map(|d| d * scale).collect();
        let params =
            LogLadderParams::new(scaled, cfg.ladder.cs.clone(), cfg.ladder.c0, cfg.ladder.c3)
                .map_err(num_err)?;
        let _ = writeln!(out, "{scale},{}", alpha_threshold(&params));
    }
    rec.write_output("alpha_sweep.csv", out.as_bytes())?;
    rec.stage_ok("alpha_sweep");

    // exceptional-set geometry over the eps grid
    let mut out = String::from("eps,dim_bound,dim_raw,clamped,theta_eps\n");
    for eps in log_grid(fb.eps_min, fb.eps_max, fb.eps_count) {
        let g = exceptional_geometry(eps, &ladder).map_err(num_err)?;
        let _ = writeln!(
            out,
            "{eps},{},{},{},{}",
            g.dim_bound, g.dim_bound_raw, g.clamped, g.theta_eps
        );
    }
    rec.write_output("dimensions.csv", out.as_bytes())?;
    rec.stage_ok("dimensions");

    // structure-function exponents and the spectrum parabola
    let model = multifractal_model(ex.s, &ladder).map_err(num_err)?;
    let mut out = String::from("p,zeta,intermittency,zeta_quadratic,legendre_numeric\n");
    let mut p = 0.5;
    while p <= fb.p_max + 1e-9 {
        let _ = writeln!(
            out,
            "{p},{},{},{},{}",
            model.zeta(p),
            model.intermittency(p),
            model.zeta_quadratic(p),
            model.legendre_numeric(p)
        );
        p += 0.5;
    }
    rec.write_output("zeta.csv", out.as_bytes())?;
    rec.stage_ok("zeta");

    let halfwidth = (6.0 * model.sigma2 * model.shrink).sqrt().max(0.2) * 1.1;
    let mut out = String::from("h,d_of_h\n");
    for h in lin_grid(model.h0 - halfwidth, model.h0 + halfwidth, fb.h_count) {
        let _ = writeln!(out, "{h},{}", model.d_of_h(h));
    }
    rec.write_output("dh.csv", out.as_bytes())?;
    rec.stage_ok("dh");

    // spectral model curves; free constants stay at their unit defaults
    let n_levels = ladder.levels();
    let sm_params = SpectralModelParams::new(
        fb.k0,
        fb.k_max.max(2.0 * fb.k0),
        1.0,
        1.0,
        1.0,
        vec![1.0; n_levels],
        1.0,
    )
    .map_err(num_err)?;
    let sm = spectral_models(sm_params, ladder.clone(), ex.s, pack.gamma_decay).map_err(num_err)?;
    let mut out = String::from("k,flux_bound,model_spectrum,limiting_spectrum,psi_ratio\n");
    let psi = sm.psi_ratio(fb.t_model).map_err(num_err)?;
    for k in log_grid(fb.k0, fb.k_max, 64) {
        let _ = writeln!(
            out,
            "{k},{},{},{},{psi}",
            sm.flux_bound(k).map_err(num_err)?,
            sm.model_spectrum(k, fb.t_model).map_err(num_err)?,
            sm.limiting_spectrum(k, fb.t_model).map_err(num_err)?
        );
    }
    rec.write_output("models.csv", out.as_bytes())?;
    rec.stage_ok("models");

    // commutator weight pair along a z grid
    if ladder.levels() >= 1 {
        let mut out = String::from("z,f1,f2,product\n");
        for z in log_grid(1e-2, 1e6, 33) {
            let (f1, f2) = commutator_factors(z, &ladder).map_err(num_err)?;
            let _ = writeln!(out, "{z},{f1},{f2},{}", f1 * f2);
        }
        rec.write_output("factors.csv", out.as_bytes())?;
        rec.stage_ok("factors");
    }

    // dichotomy coefficient along a lambda grid
    let mut out = String::from("lambda,omega,branch\n");
    for lambda in log_grid(1.0, 1e6, 49) {
        let r = dichotomy_omega(lambda, ex.s, ex.q, &ladder).map_err(num_err)?;
        let _ = writeln!(out, "{lambda},{},{:?}", r.omega, r.branch);
    }
    rec.write_output("omega.csv", out.as_bytes())?;
    rec.stage_ok("omega");

    Ok(())
}
