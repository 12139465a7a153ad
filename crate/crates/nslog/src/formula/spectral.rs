//! Model curves for the energy cascade: flux bound, log-corrected spectrum,
//! correction decay, and the near-critical limiting spectrum.

use std::f64::consts::E;

use super::ladder::LogLadderParams;
use super::{require, FormulaError};

/// Free parameters of the spectral models.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralModelParams {
    /// Largest inertial scale.
    pub k0: f64,
    /// Kolmogorov wavenumber bounding the inertial range from above.
    pub k_nu: f64,
    /// Energy dissipation rate epsilon(t) treated as constant over the fit.
    pub eps_rate: f64,
    /// Viscosity.
    pub nu: f64,
    /// Kolmogorov prefactor C.
    pub kolmogorov_c: f64,
    /// Initial correction amplitudes beta_{0,j}, one per ladder level.
    pub beta0: Vec<f64>,
    /// Dissipation-range constant c in the limiting spectrum.
    pub small_c: f64,
}

impl SpectralModelParams {
    pub fn new(
        k0: f64,
        k_nu: f64,
        eps_rate: f64,
        nu: f64,
        kolmogorov_c: f64,
        beta0: Vec<f64>,
        small_c: f64,
    ) -> Result<Self, FormulaError> {
        require(k0 > 0.0, "k0", k0, "must be > 0")?;
        require(k_nu > k0, "k_nu", k_nu, "must exceed k0")?;
        require(eps_rate > 0.0, "eps_rate", eps_rate, "must be > 0")?;
        require(nu > 0.0, "nu", nu, "must be > 0")?;
        require(kolmogorov_c > 0.0, "kolmogorov_c", kolmogorov_c, "must be > 0")?;
        for &b in &beta0 {
            require(b > 0.0, "beta0_j", b, "must be > 0")?;
        }
        require(small_c > 0.0, "small_c", small_c, "must be > 0")?;
        Ok(Self {
            k0,
            k_nu,
            eps_rate,
            nu,
            kolmogorov_c,
            beta0,
            small_c,
        })
    }

    /// Kolmogorov wavenumber eps^{1/4} nu^{-3/4}.
    pub fn kolmogorov_wavenumber(eps_rate: f64, nu: f64) -> f64 {
        eps_rate.powf(0.25) * nu.powf(-0.75)
    }
}

/// Bound/model evaluator for a fixed (params, ladder, s, gamma) tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralModel {
    pub params: SpectralModelParams,
    pub ladder: LogLadderParams,
    pub s: f64,
    pub gamma_decay: f64,
}

/// rho_1 = (2s-1)/(2s), rho_j = 1/j for j >= 2.
fn rho(j: usize, s: f64) -> f64 {
    if j == 1 {
        (2.0 * s - 1.0) / (2.0 * s)
    } else {
        1.0 / j as f64
    }
}

pub fn spectral_models(
    params: SpectralModelParams,
    ladder: LogLadderParams,
    s: f64,
    gamma_decay: f64,
) -> Result<SpectralModel, FormulaError> {
    require(s > 0.5 && s < 1.0, "s", s, "must lie in (1/2, 1)")?;
    require(gamma_decay > 0.0, "gamma_decay", gamma_decay, "must be > 0")?;
    if params.beta0.len() != ladder.levels() {
        return Err(FormulaError::LadderLengths {
            deltas: ladder.levels(),
            cs: params.beta0.len(),
        });
    }
    Ok(SpectralModel {
        params,
        ladder,
        s,
        gamma_decay,
    })
}

impl SpectralModel {
    /// Cascade flux deviation bound C eps / prod_j (1 + L_j(k/k0))^{delta_j rho_j}.
    ///
    /// Strictly decreasing in k whenever some delta_j > 0, and tends to 0 as
    /// k grows without bound.
    pub fn flux_bound(&self, k: f64) -> Result<f64, FormulaError> {
        require(k >= self.params.k0, "k", k, "must be >= k0")?;
        let x = k / self.params.k0;
        let mut den = 1.0;
        let mut lj = x;
        for (idx, &d) in self.ladder.deltas().iter().enumerate() {
            lj = (E + lj).ln();
            den *= (1.0 + lj).powf(d * rho(idx + 1, self.s));
        }
        Ok(self.params.kolmogorov_c * self.params.eps_rate / den)
    }

    /// Correction amplitude beta_j(t) = beta_{0,j} / (1 + gamma t)^{alpha_j},
    /// alpha_j = (2 gamma / 3) j / (j+1). Levels are 1-based.
    pub fn beta_decay(&self, j: usize, t: f64) -> Result<f64, FormulaError> {
        require(
            j >= 1 && j <= self.params.beta0.len(),
            "j",
            j as f64,
            "must index a ladder level",
        )?;
        require(t >= 0.0, "t", t, "must be >= 0")?;
        let alpha_j = self.correction_decay_exponent(j);
        Ok(self.params.beta0[j - 1] / (1.0 + self.gamma_decay * t).powf(alpha_j))
    }

    /// alpha_j = (2 gamma / 3) j / (j+1).
    pub fn correction_decay_exponent(&self, j: usize) -> f64 {
        (2.0 * self.gamma_decay / 3.0) * j as f64 / (j as f64 + 1.0)
    }

    /// Log-corrected inertial-range spectrum
    /// C eps^{2/3} k^{-5/3} (1 + sum_j beta_j(t) L_j(x) / prod_{i<=j} (1+L_i(x))^{1+delta_i}).
    pub fn model_spectrum(&self, k: f64, t: f64) -> Result<f64, FormulaError> {
        require(k >= self.params.k0, "k", k, "must be >= k0")?;
        require(t >= 0.0, "t", t, "must be >= 0")?;
        let x = k / self.params.k0;
        let mut sum = 0.0;
        let mut lj = x;
        let mut prod = 1.0;
        for (idx, &d) in self.ladder.deltas().iter().enumerate() {
            lj = (E + lj).ln();
            prod *= (1.0 + lj).powf(1.0 + d);
            let bj = self.beta_decay(idx + 1, t)?;
            sum += bj * lj / prod;
        }
        let lead = self.params.kolmogorov_c * self.params.eps_rate.powf(2.0 / 3.0) * k.powf(-5.0 / 3.0);
        Ok(lead * (1.0 + sum))
    }

    /// Near-critical limiting spectrum C eps^{2/3} k^{-5/3} exp(-c (nu t)^{1/2} k).
    pub fn limiting_spectrum(&self, k: f64, t: f64) -> Result<f64, FormulaError> {
        require(k > 0.0, "k", k, "must be > 0")?;
        require(t >= 0.0, "t", t, "must be >= 0")?;
        let lead = self.params.kolmogorov_c * self.params.eps_rate.powf(2.0 / 3.0) * k.powf(-5.0 / 3.0);
        let decay = (-self.params.small_c * (self.params.nu * t).sqrt() * k).exp();
        Ok(lead * decay)
    }

    /// Norm-ratio asymptote (nu t)^{-1/4}.
    pub fn psi_ratio(&self, t: f64) -> Result<f64, FormulaError> {
        require(t > 0.0, "t", t, "must be > 0")?;
        Ok((self.params.nu * t).powf(-0.25))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn model(deltas: &[f64], s: f64, gamma: f64) -> SpectralModel {
        let ladder = LogLadderParams::with_unit_constants(deltas.to_vec()).unwrap();
        let params = SpectralModelParams::new(
            2.0,
            100.0,
            1.0,
            1.0,
            1.0,
            vec![1.0; deltas.len()],
            1.0,
        )
        .unwrap();
        spectral_models(params, ladder, s, gamma).unwrap()
    }

    #[test]
    fn flux_bound_reference() {
        let m = model(&[1.0], 0.75, 1.0);
        // frozen oracle: (1 + ln(e+1))^{-1/3} at k = k0 with rho_1 = 1/3
        let v = m.flux_bound(2.0).unwrap();
        assert!(close(v, 0.7561217746567971, 1e-15));
        assert!(m.flux_bound(1.9).is_err());
    }

    #[test]
    fn flux_bound_decreasing_and_vanishing() {
        let m = model(&[1.0, 0.5], 0.6, 1.0);
        let mut prev = f64::INFINITY;
        for i in 0..40 {
            let k = 2.0 * 1.5f64.powi(i);
            let v = m.flux_bound(k).unwrap();
            assert!(v < prev);
            prev = v;
        }
        // the decay is logarithmic, so it is slow but unbounded
        assert!(m.flux_bound(2.0 * 1e12).unwrap() < 0.45);
        assert!(m.flux_bound(2.0 * 1e60).unwrap() < m.flux_bound(2.0 * 1e12).unwrap());
    }

    #[test]
    fn psi_ratio_reference() {
        let m = model(&[1.0], 0.75, 1.0);
        assert_eq!(m.psi_ratio(1.0).unwrap(), 1.0);
        assert!(close(m.psi_ratio(16.0).unwrap(), 0.5, 1e-15));
        assert!(m.psi_ratio(0.0).is_err());
    }

    #[test]
    fn spectrum_reduces_to_kolmogorov_when_corrections_die() {
        let m = model(&[1.0], 0.75, 2.0);
        let k: f64 = 8.0;
        let kolm = k.powf(-5.0 / 3.0);
        let late = m.model_spectrum(k, 1e9).unwrap();
        assert!(close(late, kolm, 1e-3));
        let early = m.model_spectrum(k, 0.0).unwrap();
        assert!(early > kolm);
    }

    #[test]
    fn beta_decay_matches_its_exponent() {
        let m = model(&[1.0, 1.0], 0.75, 1.5);
        for j in 1..=2 {
            let aj = m.correction_decay_exponent(j);
            let t1 = 3.0;
            let t2 = 11.0;
            let b1 = m.beta_decay(j, t1).unwrap();
            let b2 = m.beta_decay(j, t2).unwrap();
            let measured = (b1 / b2).ln() / ((1.0 + 1.5 * t2) / (1.0 + 1.5 * t1)).ln();
            assert!(close(measured, aj, 1e-12));
        }
    }

    #[test]
    fn limiting_spectrum_decays_in_time() {
        let m = model(&[1.0], 0.75, 1.0);
        let a = m.limiting_spectrum(4.0, 0.1).unwrap();
        let b = m.limiting_spectrum(4.0, 10.0).unwrap();
        assert!(a > b);
    }
}
