//! Dyadic shell partition built from a smooth compactly supported radial
//! bump. Shell j >= 1 lives on |k| in (2^{j-1}, 2^{j+1}); shell 0 swallows
//! everything up to |k| = 2. The weights telescope, so they sum to exactly
//! 1 on every resolved mode.

use super::data::SpecField;
use super::FieldError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShellPartition;

/// Smooth exp(-1/t) glue.
fn bump(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// C-infinity cutoff: 1 for r <= 1, 0 for r >= 2, monotone between.
fn chi(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let up = bump(2.0 - r);
        up / (up + bump(r - 1.0))
    }
}

impl Default for ShellPartition {
    fn default() -> Self {
        Self::new()
    }
}

impl ShellPartition {
    pub fn new() -> Self {
        ShellPartition
    }

    /// Weight of shell j at radius |k|. The mean mode is excluded: the
    /// partition sums to 1 on every k != 0 and to 0 at k = 0.
    pub fn weight(&self, j: usize, k_mag: f64) -> f64 {
        if k_mag == 0.0 {
            0.0
        } else if j == 0 {
            chi(k_mag)
        } else {
            let scale = (1u64 << j) as f64;
            chi(k_mag / scale) - chi(k_mag * 2.0 / scale)
        }
    }

    /// Smallest shell count covering radius `k_max` entirely.
    pub fn shells_for(&self, k_max: f64) -> usize {
        let mut j = 0usize;
        while (1u64 << j) as f64 <= k_max.max(1.0) {
            j += 1;
        }
        j + 1
    }
}

/// Multiply the coefficients by the shell-j weight.
pub fn shell_project(
    g: &SpecField,
    j: usize,
    part: &ShellPartition,
) -> Result<SpecField, FieldError> {
    let grid = *g.grid();
    let n = grid.total_points();
    let mut out = g.clone();
    let mut w = vec![0.0f64; n];
    for (idx, slot) in w.iter_mut().enumerate() {
        let k = grid.wavevector(idx);
        let k_mag = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        *slot = part.weight(j, k_mag);
    }
    for c in 0..out.ncomp() {
        let comp = out.comp_mut(c);
        for (v, &weight) in comp.iter_mut().zip(&w) {
            *v *= weight;
        }
    }
    Ok(out)
}
