//! Fourier-multiplier operators on coefficient fields.

use super::data::{C64, SpecField};
use super::{require, FieldError};

/// Apply |k|^{2s} per mode; the zero mode is annihilated.
pub fn apply_fractional(g: &SpecField, s: f64) -> SpecField {
    let grid = *g.grid();
    let n = grid.total_points();
    let mut out = g.clone();
    let mut mult = vec![0.0f64; n];
    for (idx, m) in mult.iter_mut().enumerate() {
        let k = grid.wavevector(idx);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        *m = if k2 == 0.0 { 0.0 } else { k2.powf(s) };
    }
    for c in 0..out.ncomp() {
        let comp = out.comp_mut(c);
        for (v, &m) in comp.iter_mut().zip(&mult) {
            *v *= m;
        }
    }
    out
}

/// Fractional Laplacian (-Delta)^s with s in (0, 1.5].
pub fn fractional_laplacian(g: &SpecField, s: f64) -> Result<SpecField, FieldError> {
    require(s > 0.0 && s <= 1.5, "s", s, "must lie in (0, 1.5]")?;
    Ok(apply_fractional(g, s))
}

/// Divergence-free projection I - k k^T / |k|^2 per mode; zero mode kept.
pub fn leray_project(g: &SpecField) -> Result<SpecField, FieldError> {
    let grid = *g.grid();
    let rank = grid.rank();
    if g.ncomp() != rank {
        return Err(FieldError::Precondition(format!(
            "projection needs {} components, field has {}",
            rank,
            g.ncomp()
        )));
    }
    let n = grid.total_points();
    let mut out = g.clone();
    for idx in 0..n {
        let k = grid.wavevector(idx);
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        if k2 == 0.0 {
            continue;
        }
        let mut dot = C64::new(0.0, 0.0);
        for c in 0..rank {
            dot += out.comp(c)[idx] * k[c];
        }
        let factor = dot / k2;
        for c in 0..rank {
            let v = out.comp_mut(c);
            v[idx] -= factor * k[c];
        }
    }
    Ok(out)
}

/// Spectral gradient: output component c*rank + a holds d u_c / d x_a.
pub fn gradient(g: &SpecField) -> SpecField {
    let grid = *g.grid();
    let rank = grid.rank();
    let n = grid.total_points();
    let mut out = SpecField::zeros(grid, g.ncomp() * rank);
    for c in 0..g.ncomp() {
        let src = g.comp(c);
        for a in 0..rank {
            let dst_index = c * rank + a;
            let dst = out.comp_mut(dst_index);
            for idx in 0..n {
                let k = grid.wavevector(idx);
                dst[idx] = src[idx] * C64::new(0.0, k[a]);
            }
        }
    }
    out
}

/// Spectral divergence of a rank-matched vector field.
pub fn divergence(g: &SpecField) -> Result<SpecField, FieldError> {
    let grid = *g.grid();
    let rank = grid.rank();
    if g.ncomp() != rank {
        return Err(FieldError::Precondition(format!(
            "divergence needs {} components, field has {}",
            rank,
            g.ncomp()
        )));
    }
    let n = grid.total_points();
    let mut out = SpecField::zeros(grid, 1);
    let dst = out.comp_mut(0);
    for idx in 0..n {
        let k = grid.wavevector(idx);
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..rank {
            acc += g.comp(a)[idx] * C64::new(0.0, k[a]);
        }
        dst[idx] = acc;
    }
    Ok(out)
}

/// Spectral curl. Rank 3 gives the vector curl; rank 2 gives the scalar
/// vorticity dz = dx u_y - dy u_x as a single component.
pub fn curl(g: &SpecField) -> Result<SpecField, FieldError> {
    let grid = *g.grid();
    let rank = grid.rank();
    if g.ncomp() != rank {
        return Err(FieldError::Precondition(format!(
            "curl needs {} components, field has {}",
            rank,
            g.ncomp()
        )));
    }
    let n = grid.total_points();
    if rank == 2 {
        let mut out = SpecField::zeros(grid, 1);
        let dst = out.comp_mut(0);
        for idx in 0..n {
            let k = grid.wavevector(idx);
            dst[idx] = g.comp(1)[idx] * C64::new(0.0, k[0]) - g.comp(0)[idx] * C64::new(0.0, k[1]);
        }
        return Ok(out);
    }
    let mut out = SpecField::zeros(grid, 3);
    for idx in 0..n {
        let k = grid.wavevector(idx);
        let u = [g.comp(0)[idx], g.comp(1)[idx], g.comp(2)[idx]];
        let i = C64::new(0.0, 1.0);
        let w = [
            i * (k[1] * u[2] - k[2] * u[1]),
            i * (k[2] * u[0] - k[0] * u[2]),
            i * (k[0] * u[1] - k[1] * u[0]),
        ];
        for c in 0..3 {
            out.comp_mut(c)[idx] = w[c];
        }
    }
    Ok(out)
}

/// Two-thirds rule: zero every mode with any |m_a| beyond n_a/3.
pub fn dealias(g: &mut SpecField) {
    let grid = *g.grid();
    let n = grid.total_points();
    let mut keep = vec![false; n];
    for (idx, k) in keep.iter_mut().enumerate() {
        *k = grid.dealias_keep(idx);
    }
    for c in 0..g.ncomp() {
        let comp = g.comp_mut(c);
        for (v, &k) in comp.iter_mut().zip(&keep) {
            if !k {
                *v = C64::new(0.0, 0.0);
            }
        }
    }
}
