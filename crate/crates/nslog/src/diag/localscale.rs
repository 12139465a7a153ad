//! Local scaling exponents of gradient increments and a coarse spectrum of
//! their level sets. Grid-limited by construction: the defining limit
//! r -> 0 is replaced by a regression over a handful of lattice radii, so
//! treat the output as a rough estimator.

use crate::field::{forward, gradient, inverse, PhysField};

use super::boxcount::box_counting_dimension;
use super::structure::least_squares_slope;
use super::DiagError;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalScaling {
    /// Per-point exponent h(x); NaN where increments vanish.
    pub h_values: Vec<f64>,
    /// Histogram bin centers over the observed h range.
    pub bin_centers: Vec<f64>,
    /// Normalized histogram density.
    pub density: Vec<f64>,
    /// Box-counting dimension of each bin's level set (NaN when empty).
    pub d_of_h_estimate: Vec<f64>,
}

/// Per-point regression of log |grad u(x + r) - grad u(x)| against log r
/// over the given lattice radii (in cells), increments averaged over the
/// +/- axis directions.
pub fn local_scaling_histogram(
    f: &PhysField,
    radii_cells: &[usize],
    n_bins: usize,
) -> Result<LocalScaling, DiagError> {
    if radii_cells.len() < 3 {
        return Err(DiagError::Config(
            "need at least 3 radii for the local regression".into(),
        ));
    }
    if radii_cells.iter().any(|&r| r == 0) {
        return Err(DiagError::Config("radii must be positive".into()));
    }
    if n_bins < 2 {
        return Err(DiagError::Config("need at least 2 histogram bins".into()));
    }
    let grid = *f.grid();
    let rank = grid.rank();
    let dims = grid.dims();
    let n = grid.total_points();
    let grad = inverse(&gradient(&forward(f)?))?;
    let ncomp = grad.ncomp();

    // mean Frobenius increment of the gradient tensor at each radius
    let mut h_values = vec![f64::NAN; n];
    let mut logs: Vec<(f64, Vec<f64>)> = Vec::new();
    for &r in radii_cells {
        let mut inc = vec![0.0f64; n];
        for axis in 0..rank {
            for sign in [1isize, -1] {
                for idx in 0..n {
                    let (i0, i1, i2) = grid.unravel(idx);
                    let mut pos = [i0, i1, i2];
                    let d = dims[axis] as isize;
                    let shifted = ((pos[axis] as isize + sign * r as isize) % d + d) % d;
                    pos[axis] = shifted as usize;
                    let jdx = grid.ravel(pos[0], pos[1], pos[2]);
                    let mut acc = 0.0;
                    for c in 0..ncomp {
                        let dv = grad.comp(c)[jdx] - grad.comp(c)[idx];
                        acc += dv * dv;
                    }
                    inc[idx] += acc.sqrt();
                }
            }
        }
        let r_phys = r as f64 * grid.spacing(0);
        let denom = (2 * rank) as f64;
        logs.push((
            r_phys.ln(),
            inc.into_iter().map(|v| (v / denom).ln()).collect(),
        ));
    }
    let xs: Vec<f64> = logs.iter().map(|(x, _)| *x).collect();
    let mut ys = vec![0.0f64; logs.len()];
    for idx in 0..n {
        let mut ok = true;
        for (row, (_, col)) in ys.iter_mut().zip(&logs) {
            let v = col[idx];
            if !v.is_finite() {
                ok = false;
                break;
            }
            *row = v;
        }
        if ok {
            if let Some(slope) = least_squares_slope(&xs, &ys) {
                h_values[idx] = slope;
            }
        }
    }

    // histogram over the observed range
    let finite: Vec<f64> = h_values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Err(DiagError::Estimator(
            "no finite local exponents (field may be constant)".into(),
        ));
    }
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(1e-12);
    let width = span / n_bins as f64;
    let mut hist = vec![0usize; n_bins];
    for &h in &finite {
        let b = (((h - lo) / width) as usize).min(n_bins - 1);
        hist[b] += 1;
    }
    let total = finite.len() as f64;
    let density: Vec<f64> = hist.iter().map(|&c| c as f64 / (total * width)).collect();
    let bin_centers: Vec<f64> = (0..n_bins)
        .map(|b| lo + (b as f64 + 0.5) * width)
        .collect();

    // coarse level-set dimension per bin
    let mut d_of_h = vec![f64::NAN; n_bins];
    for b in 0..n_bins {
        if hist[b] == 0 {
            continue;
        }
        let b_lo = lo + b as f64 * width;
        let b_hi = b_lo + width;
        let mask: Vec<bool> = h_values
            .iter()
            .map(|&h| h.is_finite() && h >= b_lo && (h < b_hi || (b == n_bins - 1 && h <= b_hi)))
            .collect();
        if let Ok(r) = box_counting_dimension(&mask, dims) {
            d_of_h[b] = r.dimension;
        }
    }

    Ok(LocalScaling {
        h_values,
        bin_centers,
        density,
        d_of_h_estimate: d_of_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid;
    use crate::solver::make_random_divfree;

    #[test]
    fn smooth_field_concentrates_near_one() {
        // gradient increments of a band-limited field scale linearly in r
        let g = Grid::cube(32).unwrap();
        let f = PhysField::from_fn(g, 3, |c, x, y, _| match c {
            0 => y.sin(),
            1 => x.cos(),
            _ => 0.0,
        });
        let out = local_scaling_histogram(&f, &[1, 2, 3], 20).unwrap();
        let finite: Vec<f64> = out.h_values.iter().copied().filter(|v| v.is_finite()).collect();
        let mean: f64 = finite.iter().sum::<f64>() / finite.len() as f64;
        assert!((mean - 1.0).abs() < 0.15, "mean h {mean}");
    }

    #[test]
    fn dimension_estimates_stay_bounded() {
        let g = Grid::cube(16).unwrap();
        let f = make_random_divfree(g, -5.0 / 3.0, (1.0, 5.0), 21).unwrap();
        let out = local_scaling_histogram(&f, &[1, 2, 3, 4], 12).unwrap();
        for &d in &out.d_of_h_estimate {
            if d.is_finite() {
                assert!(d <= 3.0 + 0.05);
                assert!(d >= -0.05);
            }
        }
        // density integrates to one
        let width = out.bin_centers[1] - out.bin_centers[0];
        let total: f64 = out.density.iter().map(|d| d * width).sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn needs_three_radii() {
        let g = Grid::cube(8).unwrap();
        let f = PhysField::zeros(g, 3);
        assert!(local_scaling_histogram(&f, &[1, 2], 10).is_err());
    }
}
