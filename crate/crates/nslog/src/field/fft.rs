//! Discrete Fourier transforms between sample space and coefficient space.
//!
//! Forward is normalized by 1/N so coefficients are Fourier-series
//! coefficients; inverse is the plain synthesis sum. Axis transforms batch
//! the grid lines and run them in parallel; scatter/gather stays
//! deterministic because every line is an independent pure computation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::data::{C64, PhysField, SpecField};
use super::FieldError;

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("fft plan cache");
    guard
        .entry((n, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(n)
            } else {
                planner.plan_fft_forward(n)
            }
        })
        .clone()
}

/// In-place transform of one component cube along `axis`.
fn fft_axis(data: &mut [C64], dims: [usize; 3], axis: usize, inverse: bool) {
    let n = dims[axis];
    if n == 1 {
        return;
    }
    let fft = plan(n, inverse);
    let [n0, n1, n2] = dims;
    match axis {
        2 => {
            data.par_chunks_mut(n2).for_each(|line| fft.process(line));
        }
        1 => {
            let n_lines = n0 * n2;
            let mut buf = vec![C64::new(0.0, 0.0); n_lines * n1];
            // gather: line (i0, i2) -> buf[(i0*n2+i2)*n1 + i1]
            buf.par_chunks_mut(n1).enumerate().for_each(|(l, line)| {
                let i0 = l / n2;
                let i2 = l % n2;
                for (i1, slot) in line.iter_mut().enumerate() {
                    *slot = data[(i0 * n1 + i1) * n2 + i2];
                }
            });
            buf.par_chunks_mut(n1).for_each(|line| fft.process(line));
            // scatter back, parallel over disjoint i0 blocks
            data.par_chunks_mut(n1 * n2).enumerate().for_each(|(i0, block)| {
                for i1 in 0..n1 {
                    for i2 in 0..n2 {
                        block[i1 * n2 + i2] = buf[(i0 * n2 + i2) * n1 + i1];
                    }
                }
            });
        }
        0 => {
            let n_lines = n1 * n2;
            let mut buf = vec![C64::new(0.0, 0.0); n_lines * n0];
            buf.par_chunks_mut(n0).enumerate().for_each(|(l, line)| {
                for (i0, slot) in line.iter_mut().enumerate() {
                    *slot = data[i0 * n_lines + l];
                }
            });
            buf.par_chunks_mut(n0).for_each(|line| fft.process(line));
            data.par_chunks_mut(n_lines).enumerate().for_each(|(i0, block)| {
                for (l, slot) in block.iter_mut().enumerate() {
                    *slot = buf[l * n0 + i0];
                }
            });
        }
        _ => unreachable!(),
    }
}

/// Sample space to coefficient space.
pub fn forward(f: &PhysField) -> Result<SpecField, FieldError> {
    if !f.all_finite() {
        return Err(FieldError::Data(
            "non-finite samples in physical field".into(),
        ));
    }
    let grid = *f.grid();
    let dims = grid.dims();
    let n = grid.total_points();
    let scale = 1.0 / n as f64;
    let mut out = SpecField::zeros(grid, f.ncomp());
    for c in 0..f.ncomp() {
        let src = f.comp(c);
        let dst = out.comp_mut(c);
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = C64::new(s * scale, 0.0);
        }
        for axis in 0..3 {
            fft_axis(dst, dims, axis, false);
        }
    }
    Ok(out)
}

/// Coefficient space to sample space; imaginary residue is discarded.
pub fn inverse(g: &SpecField) -> Result<PhysField, FieldError> {
    let grid = *g.grid();
    let dims = grid.dims();
    let mut out = PhysField::zeros(grid, g.ncomp());
    let mut work: Vec<C64> = Vec::new();
    for c in 0..g.ncomp() {
        work.clear();
        work.extend_from_slice(g.comp(c));
        for axis in 0..3 {
            fft_axis(&mut work, dims, axis, true);
        }
        let dst = out.comp_mut(c);
        for (d, s) in dst.iter_mut().zip(&work) {
            *d = s.re;
        }
    }
    if !out.all_finite() {
        return Err(FieldError::Data(
            "non-finite samples after inverse transform".into(),
        ));
    }
    Ok(out)
}
