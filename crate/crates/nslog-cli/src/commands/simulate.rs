//! Time integration driver: build initial data, run the solver, write
//! records, snapshots, and companion audits.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use nslog::diag::{energy_flux, ratio_series, ratio_tail_slope, ShellSpectrum};
use nslog::field::{inverse, read_nsl1, write_nsl1, PhysField};
use nslog::formula::ExponentPack;
use nslog::solver::{
    admissibility_check, decay_audit, make_abc, make_cross_shear, make_random_divfree, make_shear,
    make_shell_datum, make_taylor_green_2d, run as solve, DiagnosticsRecord,
};

use crate::config::{InitKind, RunConfig};
use crate::manifest::RunRecorder;

use super::{build_grid, num_err, CmdError};

pub(crate) fn build_initial(
    cfg: &RunConfig,
    rec: &mut RunRecorder,
) -> Result<PhysField, CmdError> {
    let grid = build_grid(&cfg.grid)?;
    let ib = &cfg.init;
    let field = match ib.kind {
        InitKind::Shear => make_shear(grid, ib.k, ib.amp).map_err(num_err)?,
        InitKind::TaylorGreen => make_taylor_green_2d(grid, ib.amp).map_err(num_err)?,
        InitKind::Random => {
            make_random_divfree(grid, ib.slope, (ib.k_min, ib.k_max), cfg.seed).map_err(num_err)?
        }
        InitKind::Shell => {
            let mut f = make_shell_datum(grid, ib.r).map_err(num_err)?;
            f.scale(ib.amp);
            f
        }
        InitKind::CrossShear => make_cross_shear(grid, ib.amp).map_err(num_err)?,
        InitKind::Abc => make_abc(grid, ib.amp, ib.amp, ib.amp).map_err(num_err)?,
        InitKind::File => {
            let path = Path::new(&ib.path);
            rec.note_input(path)?;
            let mut reader = BufReader::new(File::open(path)?);
            read_nsl1(&mut reader)?
        }
    };
    Ok(field)
}

fn nsl1_bytes(f: &PhysField) -> Result<Vec<u8>, CmdError> {
    let mut buf = Vec::new();
    write_nsl1(f, &mut buf)?;
    Ok(buf)
}

fn records_csv(records: &[DiagnosticsRecord]) -> String {
    let mut out = String::from(DiagnosticsRecord::CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn run(cfg: &RunConfig, rec: &mut RunRecorder) -> Result<(), CmdError> {
    let u0 = build_initial(cfg, rec)?;
    rec.write_output("initial.nsl1", &nsl1_bytes(&u0)?)?;
    rec.stage_ok("initial_data");

    let ladder = cfg.ladder.params().map_err(num_err)?;
    let solver_cfg = cfg.solver.to_solver_config(ladder.clone()).map_err(num_err)?;

    let result = solve(&u0, &solver_cfg).map_err(num_err)?;
    rec.write_output("records.csv", records_csv(&result.records).as_bytes())?;
    rec.stage_ok("solve");

    let final_phys = inverse(&result.final_state.u)?;
    rec.write_output("final.nsl1", &nsl1_bytes(&final_phys)?)?;
    rec.stage_ok("final_snapshot");

    // norm-ratio series against the near-critical asymptote
    let series = ratio_series(&result.records);
    let mut out = String::from("t,ratio\n");
    for p in &series {
        let _ = writeln!(out, "{},{}", p.t, p.ratio);
    }
    rec.write_output("ratio.csv", out.as_bytes())?;
    rec.stage_ok("ratio");

    // shell spectrum with transfer and flux at the final time
    let spec: ShellSpectrum =
        energy_flux(&final_phys, solver_cfg.nu, solver_cfg.s).map_err(num_err)?;
    let mut out = String::from(ShellSpectrum::csv_header());
    out.push('\n');
    out.push_str(&spec.csv_rows());
    rec.write_output("spectrum.csv", out.as_bytes())?;
    rec.stage_ok("spectrum");

    let mut out = String::from("name,value\n");
    let _ = writeln!(out, "final_t,{}", result.final_state.t);
    let _ = writeln!(out, "final_energy,{}", result.final_state.energy());
    let _ = writeln!(out, "criterion_accum,{}", result.final_state.criterion_accum);
    let _ = writeln!(out, "grad2_accum,{}", result.final_state.grad2_accum);
    let _ = writeln!(out, "eps_rate_s1,{}", spec.eps_rate_s1);
    let _ = writeln!(out, "eps_rate_frac,{}", spec.eps_rate_frac);
    if let Some(slope) = ratio_tail_slope(&series, 0.5) {
        let _ = writeln!(out, "ratio_tail_slope,{slope}");
    }

    // admissibility and decay auditing need s strictly inside (1/2, 1)
    if solver_cfg.s < 1.0 {
        let adm =
            admissibility_check(&u0, solver_cfg.s, solver_cfg.q, &ladder).map_err(num_err)?;
        let _ = writeln!(out, "admissibility_lhs,{}", adm.lhs);
        let _ = writeln!(out, "admissibility_rhs,{}", adm.rhs);
        let _ = writeln!(out, "admissible,{}", adm.admissible);

        let pack =
            ExponentPack::new(solver_cfg.s, solver_cfg.q, cfg.exponents.eta).map_err(num_err)?;
        let audit = decay_audit(
            &result.records,
            &pack,
            cfg.solver.decay_c_env,
            cfg.solver.decay_beta_env,
        )
        .map_err(num_err)?;
        let _ = writeln!(out, "decay_violations,{}", audit.violations);
        let _ = writeln!(out, "decay_margin,{}", audit.margin);
        let _ = writeln!(out, "decay_gamma,{}", pack.gamma_decay);
    }
    rec.write_output("summary.csv", out.as_bytes())?;
    rec.stage_ok("summary");

    Ok(())
}
