//! Dichotomy sweep over the data-size parameter lambda, locating the
//! omega = 1 crossing by bisection.

use std::fmt::Write as _;

use nslog::formula::{dichotomy_omega, DichotomyBranch, ExponentPack, LogLadderParams};
use nslog::ode::{run_dichotomy, DichotomyOde, DichotomyOutcome};

use crate::config::RunConfig;
use crate::manifest::RunRecorder;

use super::{num_err, CmdError};

fn branch_name(b: DichotomyBranch) -> &'static str {
    match b {
        DichotomyBranch::GrowthRisk => "growth-risk",
        DichotomyBranch::Contracting => "contracting",
        DichotomyBranch::Marginal => "marginal",
    }
}

/// Bisect omega(lambda) = 1 between two bracketing abscissae to relative
/// width 1e-6.
pub(crate) fn bisect_crossing(
    mut lo: f64,
    mut hi: f64,
    s: f64,
    q: f64,
    ladder: &LogLadderParams,
) -> Result<(f64, usize), CmdError> {
    let omega_at = |lambda: f64| -> Result<f64, CmdError> {
        Ok(dichotomy_omega(lambda, s, q, ladder)
            .map_err(num_err)?
            .omega)
    };
    let f_lo = omega_at(lo)? - 1.0;
    let mut iterations = 0usize;
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        let f_mid = omega_at(mid)? - 1.0;
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 200 {
            break;
        }
    }
    Ok((0.5 * (lo + hi), iterations))
}

pub fn run(cfg: &RunConfig, rec: &mut RunRecorder) -> Result<(), CmdError> {
    let sb = &cfg.sweep;
    let ex = &cfg.exponents;
    let ladder = cfg.ladder.params().map_err(num_err)?;

    let lambdas: Vec<f64> = (0..sb.count)
        .map(|i| {
            let f = i as f64 / (sb.count - 1) as f64;
            if sb.log_grid {
                (sb.lambda_min.ln() + (sb.lambda_max.ln() - sb.lambda_min.ln()) * f).exp()
            } else {
                sb.lambda_min + (sb.lambda_max - sb.lambda_min) * f
            }
        })
        .collect();

    let beta = ExponentPack::new(ex.s, ex.q, 0.0).map_err(num_err)?.beta_ode;

    let mut out = if sb.with_ode {
        String::from("lambda,omega,branch,ode_outcome,threshold\n")
    } else {
        String::from("lambda,omega,branch\n")
    };
    let mut omegas = Vec::with_capacity(lambdas.len());
    for &lambda in &lambdas {
        let r = dichotomy_omega(lambda, ex.s, ex.q, &ladder).map_err(num_err)?;
        omegas.push(r.omega);
        if sb.with_ode {
            let ode =
                DichotomyOde::new(sb.y0, sb.c1, sb.c2, beta, r.omega).map_err(num_err)?;
            let run = run_dichotomy(&ode, sb.t_end, sb.tol).map_err(num_err)?;
            let outcome = match run.outcome {
                DichotomyOutcome::Global => "global",
                DichotomyOutcome::BlowUp => "blow_up",
            };
            let threshold = run
                .threshold
                .map(|t| t.to_string())
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{lambda},{},{},{outcome},{threshold}",
                r.omega,
                branch_name(r.branch)
            );
        } else {
            let _ = writeln!(out, "{lambda},{},{}", r.omega, branch_name(r.branch));
        }
    }
    rec.write_output("sweep.csv", out.as_bytes())?;
    rec.stage_ok("sweep");

    // first sign change of omega - 1 along the grid
    let mut crossing = None;
    for w in 0..lambdas.len() - 1 {
        let a = omegas[w] - 1.0;
        let b = omegas[w + 1] - 1.0;
        if a == 0.0 {
            crossing = Some((lambdas[w], 0));
            break;
        }
        if a * b < 0.0 {
            crossing = Some(bisect_crossing(
                lambdas[w],
                lambdas[w + 1],
                ex.s,
                ex.q,
                &ladder,
            )?);
            break;
        }
    }
    let mut out = String::from("found,lambda_star,omega_at_star,iterations\n");
    match crossing {
        Some((lambda_star, iterations)) => {
            let omega = dichotomy_omega(lambda_star, ex.s, ex.q, &ladder)
                .map_err(num_err)?
                .omega;
            let _ = writeln!(out, "true,{lambda_star},{omega},{iterations}");
        }
        None => {
            let _ = writeln!(out, "false,,,");
        }
    }
    rec.write_output("crossing.csv", out.as_bytes())?;
    rec.stage_ok("crossing");

    Ok(())
}
