//! Box-counting dimension of voxel masks.

use super::structure::least_squares_slope;
use super::DiagError;

#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountResult {
    /// Box edge lengths in cells.
    pub sizes: Vec<usize>,
    /// Occupied boxes per size.
    pub counts: Vec<usize>,
    /// Least-squares slope of log N against log(1/size).
    pub dimension: f64,
    /// Root-mean-square residual of the fit in log space.
    pub fit_residual: f64,
}

/// Count occupied boxes at edge sizes {1, 2, 4, 8, 16} cells and fit the
/// scaling exponent.
pub fn box_counting_dimension(
    mask: &[bool],
    dims: [usize; 3],
) -> Result<BoxCountResult, DiagError> {
    let n_total = dims[0] * dims[1] * dims[2];
    if mask.len() != n_total {
        return Err(DiagError::Config(format!(
            "mask length {} does not match dims {:?}",
            mask.len(),
            dims
        )));
    }
    if !mask.iter().any(|&b| b) {
        return Err(DiagError::Estimator("mask is empty".into()));
    }
    let min_dim = dims.iter().copied().filter(|&d| d > 1).min().unwrap_or(1);
    let sizes: Vec<usize> = [1usize, 2, 4, 8, 16]
        .into_iter()
        .filter(|&s| s <= min_dim)
        .collect();
    let mut counts = Vec::with_capacity(sizes.len());
    for &s in &sizes {
        let b = [
            dims[0].div_ceil(s),
            dims[1].div_ceil(s),
            dims[2].div_ceil(s),
        ];
        let mut occ = vec![false; b[0] * b[1] * b[2]];
        for i0 in 0..dims[0] {
            for i1 in 0..dims[1] {
                for i2 in 0..dims[2] {
                    let idx = (i0 * dims[1] + i1) * dims[2] + i2;
                    if mask[idx] {
                        let bidx = ((i0 / s) * b[1] + i1 / s) * b[2] + i2 / s;
                        occ[bidx] = true;
                    }
                }
            }
        }
        counts.push(occ.iter().filter(|&&v| v).count());
    }
    let xs: Vec<f64> = sizes.iter().map(|&s| (1.0 / s as f64).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let dimension = least_squares_slope(&xs, &ys)
        .ok_or_else(|| DiagError::Estimator("degenerate size ladder".into()))?;
    // residual around the fitted line
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let intercept = my - dimension * mx;
    let mut ss = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let e = y - (intercept + dimension * x);
        ss += e * e;
    }
    Ok(BoxCountResult {
        sizes,
        counts,
        dimension,
        fit_residual: (ss / n).sqrt(),
    })
}
