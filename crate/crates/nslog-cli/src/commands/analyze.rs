//! Snapshot analysis driver: spectra, structure functions, exceptional
//! sets, alignment, local scaling, and model fits.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use nslog::diag::{
    alignment_statistics, box_counting_dimension, energy_flux, exceptional_set, flux_audit,
    local_scaling_histogram, spectrum_fit, structure_functions, ShellSpectrum,
};
use nslog::field::{read_nsl1, write_nsl1, PhysField};
use nslog::formula::{spectral_models, ExponentPack, SpectralModelParams};

use crate::config::RunConfig;
use crate::manifest::RunRecorder;

use super::{num_err, CmdError};

pub fn run(cfg: &RunConfig, rec: &mut RunRecorder) -> Result<(), CmdError> {
    let ab = &cfg.analyze;
    if ab.input.is_empty() {
        return Err(CmdError::Numerical(
            "analyze.input must name an NSL1 snapshot".into(),
        ));
    }
    let path = Path::new(&ab.input);
    rec.note_input(path)?;
    let field = {
        let mut reader = BufReader::new(File::open(path)?);
        read_nsl1(&mut reader)?
    };
    let grid = *field.grid();
    let ladder = cfg.ladder.params().map_err(num_err)?;
    let ex = &cfg.exponents;

    // spectrum, transfer, flux
    let spec: ShellSpectrum = energy_flux(&field, ab.nu, ex.s).map_err(num_err)?;
    let mut out = String::from(ShellSpectrum::csv_header());
    out.push('\n');
    out.push_str(&spec.csv_rows());
    rec.write_output("spectrum.csv", out.as_bytes())?;
    rec.stage_ok("spectrum");

    // structure functions on grid-commensurate separations
    let dx = grid.spacing(0);
    let seps: Vec<f64> = ab
        .separations_cells
        .iter()
        .map(|&c| c as f64 * dx)
        .collect();
    let table =
        structure_functions(&field, &ab.orders, &seps, ab.n_samples, cfg.seed).map_err(num_err)?;
    rec.write_output("structure.csv", table.csv().as_bytes())?;
    let mut out = String::from("p,zeta_fit\n");
    for (p, z) in table.orders.iter().zip(&table.zeta) {
        let _ = writeln!(out, "{p},{z}");
    }
    rec.write_output("structure_zeta.csv", out.as_bytes())?;
    rec.stage_ok("structure");

    // exceptional sets with box-counting dimension and mask snapshots
    let mut out = String::from(
        "eps,lambda_eps,lambda_chebyshev,measured_fraction,box_dimension,fit_residual\n",
    );
    for (i, &eps) in ab.eps_fractions.iter().enumerate() {
        let set = exceptional_set(&field, eps).map_err(num_err)?;
        let occupied = set.mask.iter().any(|&b| b);
        let (dim, residual) = if occupied {
            let bc = box_counting_dimension(&set.mask, grid.dims()).map_err(num_err)?;
            (bc.dimension.to_string(), bc.fit_residual.to_string())
        } else {
            ("".to_string(), "".to_string())
        };
        let _ = writeln!(
            out,
            "{eps},{},{},{},{dim},{residual}",
            set.lambda_eps, set.lambda_chebyshev, set.measured_fraction
        );
        // mask written as a single-component 0/1 snapshot
        let mut mask_field = PhysField::zeros(grid, 1);
        for (slot, &b) in mask_field.data_mut().iter_mut().zip(&set.mask) {
            *slot = if b { 1.0 } else { 0.0 };
        }
        let mut buf = Vec::new();
        write_nsl1(&mask_field, &mut buf)?;
        rec.write_output(&format!("mask_{i}.nsl1"), &buf)?;
    }
    rec.write_output("exceptional.csv", out.as_bytes())?;
    rec.stage_ok("exceptional");

    // alignment statistics (rank 3 only)
    let mut summary = String::from("name,value\n");
    if grid.rank() == 3 {
        let stats = alignment_statistics(&field).map_err(num_err)?;
        rec.write_output("alignment.csv", stats.csv().as_bytes())?;
        let _ = writeln!(summary, "mean_cos,{}", stats.mean_cos);
        let _ = writeln!(summary, "alignment_excluded,{}", stats.excluded);
        let _ = writeln!(summary, "max_strain_trace,{}", stats.max_trace);
        rec.stage_ok("alignment");
    } else {
        rec.stage_failed("alignment", "skipped: needs a rank-3 snapshot");
    }

    // local scaling exponents
    match local_scaling_histogram(&field, &ab.radii_cells, ab.h_bins) {
        Ok(ls) => {
            let mut out = String::from("h,density,d_of_h\n");
            for i in 0..ls.bin_centers.len() {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    ls.bin_centers[i], ls.density[i], ls.d_of_h_estimate[i]
                );
            }
            rec.write_output("localscale.csv", out.as_bytes())?;
            rec.stage_ok("localscale");
        }
        Err(e) => rec.stage_failed("localscale", &e.to_string()),
    }

    // spectrum fit against the log-corrected model
    let pack = ExponentPack::new(ex.s, ex.q, ex.eta).map_err(num_err)?;
    let eps_ref = if spec.eps_rate_frac > 0.0 {
        spec.eps_rate_frac
    } else {
        1.0
    };
    match spectrum_fit(
        &spec,
        (ab.fit_kmin, ab.fit_kmax),
        ladder.deltas(),
        ab.k0,
        eps_ref,
        pack.gamma_decay,
        0.0,
    ) {
        Ok(fit) => {
            let mut out = String::from("name,value\n");
            let _ = writeln!(out, "c_kolmogorov,{}", fit.c_kolmogorov);
            for (j, b) in fit.betas.iter().enumerate() {
                let _ = writeln!(out, "beta_{},{b}", j + 1);
            }
            let _ = writeln!(out, "residual,{}", fit.residual);
            let _ = writeln!(out, "regularized,{}", fit.regularized);
            rec.write_output("specfit.csv", out.as_bytes())?;
            rec.stage_ok("specfit");
        }
        Err(e) => rec.stage_failed("specfit", &e.to_string()),
    }

    // flux audit against the deviation bound
    if spec.eps_rate_frac > 0.0 {
        let k_nu = SpectralModelParams::kolmogorov_wavenumber(spec.eps_rate_frac, ab.nu);
        let sm_params = SpectralModelParams::new(
            ab.k0,
            k_nu.max(2.0 * ab.k0),
            spec.eps_rate_frac,
            ab.nu,
            1.0,
            vec![1.0; ladder.levels()],
            1.0,
        )
        .map_err(num_err)?;
        let model =
            spectral_models(sm_params, ladder.clone(), ex.s, pack.gamma_decay).map_err(num_err)?;
        match flux_audit(&spec, &model, (ab.fit_kmin, ab.fit_kmax)) {
            Ok(audit) => {
                let _ = writeln!(summary, "flux_fitted_c,{}", audit.fitted_c);
                let _ = writeln!(
                    summary,
                    "flux_bound_satisfied_fraction,{}",
                    audit.bound_satisfied_fraction
                );
                let _ = writeln!(
                    summary,
                    "flux_max_relative_deviation,{}",
                    audit.max_relative_deviation
                );
                rec.stage_ok("flux_audit");
            }
            Err(e) => rec.stage_failed("flux_audit", &e.to_string()),
        }
    }

    let _ = writeln!(summary, "total_energy_density,{}", spec.total_energy());
    let _ = writeln!(summary, "eps_rate_s1,{}", spec.eps_rate_s1);
    let _ = writeln!(summary, "eps_rate_frac,{}", spec.eps_rate_frac);
    rec.write_output("summary.csv", summary.as_bytes())?;
    rec.stage_ok("summary");

    Ok(())
}
