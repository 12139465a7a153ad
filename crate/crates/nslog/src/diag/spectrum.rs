//! Shell-binned energy spectrum, nonlinear transfer, and cascade flux.
//!
//! Bins are unit-width and centered on the integers; every coefficient
//! lands in the bin nearest its |k|, so the shell sums close exactly
//! against the total energy. All quantities are per unit volume.
//!
//! Sign conventions: T(kappa) is the rate of change of shell energy by the
//! nonlinearity, and Pi(kappa) = -sum_{kappa' <= kappa} T(kappa') is the
//! energy flux out of the ball [0, kappa]; a steady forced cascade then has
//! Pi equal to the dissipation rate in the inertial range.

use crate::field::{advect, divergence_rel, forward, C64, PhysField, SpecField};

use super::DiagError;

#[derive(Debug, Clone, PartialEq)]
pub struct ShellSpectrum {
    /// Bin centers 0, 1, 2, ...
    pub k_centers: Vec<f64>,
    /// Shell energy E(k) per unit volume.
    pub e_k: Vec<f64>,
    /// Nonlinear transfer T(k); zero unless computed by [`energy_flux`].
    pub transfer: Vec<f64>,
    /// Cascade flux Pi(k); zero unless computed by [`energy_flux`].
    pub flux: Vec<f64>,
    /// 2 nu sum k^2 E(k), the classical dissipation rate.
    pub eps_rate_s1: f64,
    /// 2 nu sum k^{2s} E(k), the dissipation rate of the fractional model.
    pub eps_rate_frac: f64,
}

impl ShellSpectrum {
    pub fn total_energy(&self) -> f64 {
        self.e_k.iter().sum()
    }

    pub fn csv_header() -> &'static str {
        "k,e_k,transfer,flux"
    }

    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for i in 0..self.k_centers.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.k_centers[i], self.e_k[i], self.transfer[i], self.flux[i]
            ));
        }
        out
    }
}

fn bin_count(grid: &crate::field::Grid) -> usize {
    let mut k2_max = 0.0f64;
    for a in 0..grid.rank() {
        let km = grid.k_phys(a, grid.dims()[a] / 2).abs();
        k2_max += km * km;
    }
    k2_max.sqrt().round() as usize + 2
}

/// Spectrum of a coefficient-space field.
pub fn spectrum_of_spec(u_hat: &SpecField, nu: f64, s: f64) -> ShellSpectrum {
    let grid = u_hat.grid();
    let n = grid.total_points();
    let bins = bin_count(grid);
    let mut e_k = vec![0.0f64; bins];
    let mut eps_s1 = 0.0f64;
    let mut eps_frac = 0.0f64;
    for idx in 0..n {
        let k = grid.wavevector(idx);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let k_mag = k2.sqrt();
        let mut half_sq = 0.0;
        for c in 0..u_hat.ncomp() {
            half_sq += 0.5 * u_hat.comp(c)[idx].norm_sqr();
        }
        let bin = k_mag.round() as usize;
        if bin < bins {
            e_k[bin] += half_sq;
        }
        eps_s1 += 2.0 * nu * k2 * half_sq;
        if k2 > 0.0 {
            eps_frac += 2.0 * nu * k2.powf(s) * half_sq;
        }
    }
    ShellSpectrum {
        k_centers: (0..bins).map(|i| i as f64).collect(),
        e_k,
        transfer: vec![0.0; bins],
        flux: vec![0.0; bins],
        eps_rate_s1: eps_s1,
        eps_rate_frac: eps_frac,
    }
}

/// Shell-binned energy spectrum of a sample-space field.
pub fn energy_spectrum(f: &PhysField, nu: f64, s: f64) -> Result<ShellSpectrum, DiagError> {
    let u_hat = forward(f)?;
    Ok(spectrum_of_spec(&u_hat, nu, s))
}

/// Spectrum plus nonlinear transfer and flux. The field must be
/// divergence-free; the transfer is computed from the dealiased advection
/// term, under which the shell sums conserve energy in total.
pub fn energy_flux(f: &PhysField, nu: f64, s: f64) -> Result<ShellSpectrum, DiagError> {
    let u_hat = forward(f)?;
    let div = divergence_rel(&u_hat);
    if div > 1e-8 {
        return Err(DiagError::Config(format!(
            "flux needs divergence-free input: relative divergence {div:.3e}"
        )));
    }
    let mut spec = spectrum_of_spec(&u_hat, nu, s);
    let adv = advect(&u_hat, &u_hat, true)?;
    let grid = u_hat.grid();
    let n = grid.total_points();
    let bins = spec.k_centers.len();
    for idx in 0..n {
        let k = grid.wavevector(idx);
        let k_mag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        let bin = k_mag.round() as usize;
        if bin >= bins {
            continue;
        }
        let mut dot = 0.0f64;
        for c in 0..u_hat.ncomp() {
            let a: C64 = u_hat.comp(c)[idx];
            let b: C64 = adv.comp(c)[idx];
            dot += a.re * b.re + a.im * b.im;
        }
        // dE_k/dt from the nonlinearity is Re(conj(u) . (-adv))
        spec.transfer[bin] -= dot;
    }
    let mut acc = 0.0f64;
    for i in 0..bins {
        acc += spec.transfer[i];
        spec.flux[i] = -acc;
    }
    Ok(spec)
}
