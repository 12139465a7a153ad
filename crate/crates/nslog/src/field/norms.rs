//! Norms of physical fields: L2, fractional seminorms via Plancherel, grid
//! L^q quadrature of fractional derivatives, and the sup norm of the
//! gradient.
//!
//! L^q integrals use the uniform-grid Riemann sum, which is exact for even
//! integer q on band-limited data (the integrand is then itself a
//! trigonometric polynomial the grid resolves); for other q it is spectrally
//! accurate but not exact.

use super::data::{PhysField, SpecField};
use super::fft::{forward, inverse};
use super::ops::{apply_fractional, gradient};
use super::{require, FieldError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldNorms {
    /// ||u||_{L^2}.
    pub l2: f64,
    /// Homogeneous seminorm ||u||_{H^s} = ||(-Delta)^{s/2} u||_{L^2}.
    pub hs_semi: f64,
    /// ||(-Delta)^{s/2} u||_{L^q}.
    pub frac_lq_half: f64,
    /// ||(-Delta)^{s} u||_{L^q}.
    pub frac_lq_full: f64,
    /// max over grid points of the Frobenius norm of grad u.
    pub grad_linf: f64,
}

/// Grid L^q norm of the pointwise Euclidean magnitude; q may be infinite.
pub fn grid_lq_norm(f: &PhysField, q: f64) -> Result<f64, FieldError> {
    require(q >= 1.0, "q", q, "must be >= 1")?;
    let grid = f.grid();
    let n = grid.total_points();
    if q.is_infinite() {
        let mut worst = 0.0f64;
        for idx in 0..n {
            worst = worst.max(f.magnitude_at(idx));
        }
        return Ok(worst);
    }
    let cell = grid.volume() / n as f64;
    let mut acc = 0.0f64;
    for idx in 0..n {
        acc += f.magnitude_at(idx).powf(q);
    }
    Ok((acc * cell).powf(1.0 / q))
}

/// ||(-Delta)^a u||_{L^q} by multiplier application and grid quadrature.
pub fn fractional_lq_norm(f: &PhysField, a: f64, q: f64) -> Result<f64, FieldError> {
    require(a >= 0.0, "a", a, "must be >= 0")?;
    let spec = forward(f)?;
    let frac = if a == 0.0 {
        spec
    } else {
        apply_fractional(&spec, a)
    };
    grid_lq_norm(&inverse(&frac)?, q)
}

/// Spectral-side seminorm ||(-Delta)^{a/2} u||_{L^2} = sqrt(V sum |k|^{2a} |c_k|^2).
pub fn spectral_seminorm(spec: &SpecField, a: f64) -> f64 {
    let grid = spec.grid();
    let v = grid.volume();
    let n = grid.total_points();
    let mut acc = 0.0f64;
    for idx in 0..n {
        let k = grid.wavevector(idx);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 == 0.0 {
            continue;
        }
        let m = k2.powf(a);
        for c in 0..spec.ncomp() {
            acc += m * spec.comp(c)[idx].norm_sqr();
        }
    }
    (acc * v).sqrt()
}

/// Pointwise Frobenius norms of the gradient tensor.
pub fn gradient_magnitude(f: &PhysField) -> Result<Vec<f64>, FieldError> {
    let spec = forward(f)?;
    let grad = inverse(&gradient(&spec))?;
    let n = f.grid().total_points();
    let ncomp = grad.ncomp();
    let mut out = vec![0.0f64; n];
    for c in 0..ncomp {
        let comp = grad.comp(c);
        for (o, &g) in out.iter_mut().zip(comp) {
            *o += g * g;
        }
    }
    for o in &mut out {
        *o = o.sqrt();
    }
    Ok(out)
}

/// Full norm record for a velocity field at parameters (s, q).
pub fn norms(f: &PhysField, s: f64, q: f64) -> Result<FieldNorms, FieldError> {
    require(s > 0.0 && s <= 1.5, "s", s, "must lie in (0, 1.5]")?;
    require(q >= 1.0, "q", q, "must be >= 1")?;
    let spec = forward(f)?;
    let l2 = spec.l2_sq().sqrt();
    let hs_semi = spectral_seminorm(&spec, s);
    let half = inverse(&apply_fractional(&spec, s / 2.0))?;
    let frac_lq_half = grid_lq_norm(&half, q)?;
    let full = inverse(&apply_fractional(&spec, s))?;
    let frac_lq_full = grid_lq_norm(&full, q)?;
    let grad = gradient_magnitude(f)?;
    let grad_linf = grad.iter().fold(0.0f64, |m, &v| m.max(v));
    Ok(FieldNorms {
        l2,
        hs_semi,
        frac_lq_half,
        frac_lq_full,
        grad_linf,
    })
}
