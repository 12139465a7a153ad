//! Fits of measured spectra and fluxes against the log-corrected model
//! curves.

use std::f64::consts::E;

use crate::formula::SpectralModel;

use super::spectrum::ShellSpectrum;
use super::DiagError;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumFit {
    /// Fitted Kolmogorov prefactor.
    pub c_kolmogorov: f64,
    /// Correction amplitudes beta_j at the snapshot time.
    pub betas: Vec<f64>,
    /// Amplitudes projected back to t = 0 with the supplied decay law.
    pub betas0: Vec<f64>,
    /// Root-mean-square relative residual over the fitted bins.
    pub residual: f64,
    /// Set when the normal equations were near-singular and a ridge term
    /// was added.
    pub regularized: bool,
}

/// Basis function L_j(x) / prod_{i<=j} (1 + L_i(x))^{1 + delta_i}.
fn correction_basis(x: f64, deltas: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(deltas.len());
    let mut lj = x;
    let mut prod = 1.0;
    for &d in deltas {
        lj = (E + lj).ln();
        prod *= (1.0 + lj).powf(1.0 + d);
        out.push(lj / prod);
    }
    out
}

/// Solve the symmetric system a x = b by Gaussian elimination with partial
/// pivoting; adds a ridge and retries once if a pivot collapses.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<(Vec<f64>, bool)> {
    let n = b.len();
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let mut regularized = false;
    'attempt: for attempt in 0..2 {
        if attempt == 1 {
            regularized = true;
            for (i, row) in a.iter_mut().enumerate() {
                row[i] += 1e-10 * scale.max(1e-300);
            }
        }
        let mut m = a.clone();
        let mut rhs = b.clone();
        let mut perm_ok = true;
        for col in 0..n {
            let (mut piv, mut best) = (col, m[col][col].abs());
            for row in (col + 1)..n {
                if m[row][col].abs() > best {
                    best = m[row][col].abs();
                    piv = row;
                }
            }
            if best <= 1e-13 * scale.max(1e-300) {
                perm_ok = false;
                break;
            }
            m.swap(col, piv);
            rhs.swap(col, piv);
            for row in (col + 1)..n {
                let f = m[row][col] / m[col][col];
                for k in col..n {
                    m[row][k] -= f * m[col][k];
                }
                rhs[row] -= f * rhs[col];
            }
        }
        if !perm_ok {
            continue 'attempt;
        }
        let mut x = vec![0.0f64; n];
        for row in (0..n).rev() {
            let mut acc = rhs[row];
            for k in (row + 1)..n {
                acc -= m[row][k] * x[k];
            }
            x[row] = acc / m[row][row];
        }
        if x.iter().all(|v| v.is_finite()) {
            return Some((x, regularized));
        }
    }
    let _ = (&mut a, &mut b);
    None
}

/// Least-squares fit of E(k) k^{5/3} eps^{-2/3} against {1, basis_j}; the
/// model prefactor is the constant term and beta_j the ratios.
#[allow(clippy::too_many_arguments)]
pub fn spectrum_fit(
    spec: &ShellSpectrum,
    k_range: (f64, f64),
    deltas: &[f64],
    k0: f64,
    eps_rate: f64,
    gamma_decay: f64,
    t: f64,
) -> Result<SpectrumFit, DiagError> {
    if !(k0 > 0.0 && eps_rate > 0.0) {
        return Err(DiagError::Config(
            "k0 and eps_rate must be positive".into(),
        ));
    }
    let mut ks = Vec::new();
    let mut ys = Vec::new();
    for (i, &k) in spec.k_centers.iter().enumerate() {
        if k >= k_range.0 && k <= k_range.1 && spec.e_k[i] > 0.0 && k > 0.0 {
            ks.push(k);
            ys.push(spec.e_k[i] * k.powf(5.0 / 3.0) * eps_rate.powf(-2.0 / 3.0));
        }
    }
    if ks.len() < 8 {
        return Err(DiagError::Config(format!(
            "need at least 8 populated bins in the range, found {}",
            ks.len()
        )));
    }
    let nb = deltas.len() + 1;
    let mut ata = vec![vec![0.0f64; nb]; nb];
    let mut atb = vec![0.0f64; nb];
    for (&k, &y) in ks.iter().zip(&ys) {
        let mut phi = vec![1.0f64];
        phi.extend(correction_basis(k / k0, deltas));
        for i in 0..nb {
            atb[i] += phi[i] * y;
            for j in 0..nb {
                ata[i][j] += phi[i] * phi[j];
            }
        }
    }
    let (coef, regularized) = solve_dense(ata, atb)
        .ok_or_else(|| DiagError::Estimator("normal equations are singular".into()))?;
    let c = coef[0];
    if !(c.is_finite() && c != 0.0) {
        return Err(DiagError::Estimator("degenerate prefactor".into()));
    }
    let betas: Vec<f64> = coef[1..].iter().map(|&a| a / c).collect();
    let betas0: Vec<f64> = betas
        .iter()
        .enumerate()
        .map(|(idx, &b)| {
            let j = (idx + 1) as f64;
            let alpha_j = (2.0 * gamma_decay / 3.0) * j / (j + 1.0);
            b * (1.0 + gamma_decay * t).powf(alpha_j)
        })
        .collect();

    let mut ss = 0.0f64;
    for (&k, &y) in ks.iter().zip(&ys) {
        let mut model = c;
        for (j, phi) in correction_basis(k / k0, deltas).into_iter().enumerate() {
            model += c * betas[j] * phi;
        }
        let rel = (model - y) / y;
        ss += rel * rel;
    }
    Ok(SpectrumFit {
        c_kolmogorov: c,
        betas,
        betas0,
        residual: (ss / ks.len() as f64).sqrt(),
        regularized,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxAudit {
    /// Smallest constant making |Pi - eps| <= C eps / weight hold on the range.
    pub fitted_c: f64,
    /// Fraction of bins satisfying the bound at C = 1.
    pub bound_satisfied_fraction: f64,
    /// max |Pi - eps| / eps over the range.
    pub max_relative_deviation: f64,
}

/// Audit a measured flux profile against the ladder-weighted deviation
/// bound. The reference dissipation rate is the model's eps_rate.
pub fn flux_audit(
    spec: &ShellSpectrum,
    model: &SpectralModel,
    k_range: (f64, f64),
) -> Result<FluxAudit, DiagError> {
    let eps = model.params.eps_rate;
    let c_model = model.params.kolmogorov_c;
    let mut fitted_c = 0.0f64;
    let mut satisfied = 0usize;
    let mut total = 0usize;
    let mut max_rel = 0.0f64;
    for (i, &k) in spec.k_centers.iter().enumerate() {
        if k < k_range.0 || k > k_range.1 || k < model.params.k0 {
            continue;
        }
        let bound = model
            .flux_bound(k)
            .map_err(|e| DiagError::Config(format!("flux bound: {e}")))?;
        // bound = C_model eps / weight, so weight = C_model eps / bound
        let weight = c_model * eps / bound;
        let dev = (spec.flux[i] - eps).abs();
        fitted_c = fitted_c.max(dev * weight / eps);
        if dev <= eps / weight {
            satisfied += 1;
        }
        total += 1;
        max_rel = max_rel.max(dev / eps);
    }
    if total == 0 {
        return Err(DiagError::Config(
            "no spectrum bins inside the audit range".into(),
        ));
    }
    Ok(FluxAudit {
        fitted_c,
        bound_satisfied_fraction: satisfied as f64 / total as f64,
        max_relative_deviation: max_rel,
    })
}
