//! Comparison-ODE and dichotomy-model studies.

use std::fmt::Write as _;

use nslog::ode::{
    fit_blowup_exponent, integrate, run_dichotomy, ComparisonOde, DichotomyOde, DichotomyOutcome,
    IntegrateOptions, Terminal,
};

use crate::config::{OdeKind, RunConfig};
use crate::manifest::RunRecorder;

use super::{num_err, CmdError};

pub fn run(cfg: &RunConfig, rec: &mut RunRecorder) -> Result<(), CmdError> {
    let ob = &cfg.ode;
    let opts = IntegrateOptions {
        ceiling: ob.ceiling,
        ..IntegrateOptions::default()
    };
    match ob.kind {
        OdeKind::Comparison => {
            let ode = ComparisonOde::new(ob.y0, ob.c, ob.mu).map_err(num_err)?;
            let t_star_closed = ode.blow_up_time();
            let traj = integrate(|t, y| ode.rhs(t, y), ob.y0, ob.t_end, ob.tol, opts)
                .map_err(num_err)?;

            let mut out = String::from("t,y\n");
            for (&t, &y) in traj.times.iter().zip(&traj.values) {
                let _ = writeln!(out, "{t},{y}");
            }
            rec.write_output("trajectory.csv", out.as_bytes())?;
            rec.stage_ok("trajectory");

            let mut out = String::from("t,closed_form,rel_err\n");
            for (&t, &y) in traj.times.iter().zip(&traj.values) {
                if let Ok(z) = ode.closed_form_z(t) {
                    let _ = writeln!(out, "{t},{z},{}", (y - z).abs() / z);
                }
            }
            rec.write_output("closed_form.csv", out.as_bytes())?;
            rec.stage_ok("closed_form");

            let mut out = String::from("name,value\n");
            let _ = writeln!(out, "t_star_closed,{t_star_closed}");
            match traj.terminal {
                Terminal::BlewUp(t_star) => {
                    let _ = writeln!(out, "terminal,blew_up");
                    let _ = writeln!(out, "t_star_estimate,{t_star}");
                    match fit_blowup_exponent(&traj, t_star) {
                        Ok(slope) => {
                            let _ = writeln!(out, "fitted_slope,{slope}");
                            let _ = writeln!(out, "expected_slope,{}", -1.0 / ob.mu);
                        }
                        Err(e) => {
                            let _ = writeln!(out, "fitted_slope_error,{e}");
                        }
                    }
                }
                Terminal::Completed => {
                    let _ = writeln!(out, "terminal,completed");
                }
                Terminal::HitZero(t) => {
                    let _ = writeln!(out, "terminal,hit_zero");
                    let _ = writeln!(out, "t_zero,{t}");
                }
            }
            rec.write_output("summary.csv", out.as_bytes())?;
            rec.stage_ok("summary");
        }
        OdeKind::Dichotomy => {
            let ode = DichotomyOde::new(ob.y0, ob.c1, ob.c2, ob.beta, ob.omega).map_err(num_err)?;
            let run = run_dichotomy(&ode, ob.t_end, ob.tol).map_err(num_err)?;
            let mut out = String::from("t,y\n");
            for (&t, &y) in run.trajectory.times.iter().zip(&run.trajectory.values) {
                let _ = writeln!(out, "{t},{y}");
            }
            rec.write_output("trajectory.csv", out.as_bytes())?;
            rec.stage_ok("trajectory");

            let mut out = String::from("name,value\n");
            let _ = writeln!(
                out,
                "outcome,{}",
                match run.outcome {
                    DichotomyOutcome::Global => "global",
                    DichotomyOutcome::BlowUp => "blow_up",
                }
            );
            if let Some(th) = run.threshold {
                let _ = writeln!(out, "threshold,{th}");
            }
            if let Terminal::BlewUp(t_star) = run.trajectory.terminal {
                let _ = writeln!(out, "t_star_estimate,{t_star}");
            }
            let _ = writeln!(out, "omega,{}", ob.omega);
            rec.write_output("summary.csv", out.as_bytes())?;
            rec.stage_ok("summary");
        }
    }
    Ok(())
}
