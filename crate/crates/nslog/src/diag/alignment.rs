//! Vorticity alignment against the principal strain direction.

use crate::field::{curl, forward, gradient, inverse, PhysField};

use super::DiagError;

const N_ANGLE_BINS: usize = 18;

#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentStats {
    /// Counts over [0, 90] degrees in 5-degree bins.
    pub angle_histogram: Vec<usize>,
    /// Mean |cos| of the angle between vorticity and the principal strain
    /// eigenvector.
    pub mean_cos: f64,
    /// Points excluded for vanishing vorticity.
    pub excluded: usize,
    /// Largest |trace S| encountered; zero divergence keeps this tiny.
    pub max_trace: f64,
}

impl AlignmentStats {
    pub fn csv(&self) -> String {
        let mut out = String::from("bin_deg_lo,bin_deg_hi,count\n");
        for (i, &c) in self.angle_histogram.iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", i * 5, (i + 1) * 5, c));
        }
        out
    }
}

/// Jacobi eigen-decomposition of a symmetric 3x3 matrix; returns
/// (eigenvalues, eigenvectors as columns), unsorted.
fn jacobi3(mut a: [[f64; 3]; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let mut v = [[0.0; 3]; 3];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _ in 0..64 {
        // largest off-diagonal element
        let (mut p, mut q, mut biggest) = (0usize, 1usize, 0.0f64);
        for i in 0..3 {
            for j in (i + 1)..3 {
                if a[i][j].abs() > biggest {
                    biggest = a[i][j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if biggest < 1e-15 {
            break;
        }
        let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        let app = a[p][p];
        let aqq = a[q][q];
        let apq = a[p][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = 0.0;
        a[q][p] = 0.0;
        for i in 0..3 {
            if i != p && i != q {
                let aip = a[i][p];
                let aiq = a[i][q];
                a[i][p] = c * aip - s * aiq;
                a[p][i] = a[i][p];
                a[i][q] = s * aip + c * aiq;
                a[q][i] = a[i][q];
            }
        }
        for row in &mut v {
            let vip = row[p];
            let viq = row[q];
            row[p] = c * vip - s * viq;
            row[q] = s * vip + c * viq;
        }
    }
    ([a[0][0], a[1][1], a[2][2]], v)
}

/// Angle statistics between the vorticity and the eigenvector of the
/// largest strain eigenvalue, over all points with non-vanishing vorticity.
pub fn alignment_statistics(f: &PhysField) -> Result<AlignmentStats, DiagError> {
    let grid = f.grid();
    if grid.rank() != 3 {
        return Err(DiagError::Config("alignment needs a rank-3 field".into()));
    }
    let spec = forward(f)?;
    let grad = inverse(&gradient(&spec))?;
    let vort = inverse(&curl(&spec)?)?;
    let n = grid.total_points();

    let omega_max = (0..n).fold(0.0f64, |m, idx| m.max(vort.magnitude_at(idx)));
    let cutoff = 1e-12 * omega_max.max(f64::MIN_POSITIVE);

    let mut histogram = vec![0usize; N_ANGLE_BINS];
    let mut excluded = 0usize;
    let mut cos_sum = 0.0f64;
    let mut counted = 0usize;
    let mut max_trace = 0.0f64;

    for idx in 0..n {
        // grad component layout: c * 3 + a -> d u_c / d x_a
        let mut g = [[0.0f64; 3]; 3];
        for (c, row) in g.iter_mut().enumerate() {
            for (a, slot) in row.iter_mut().enumerate() {
                *slot = grad.comp(c * 3 + a)[idx];
            }
        }
        let mut strain = [[0.0f64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                strain[i][j] = 0.5 * (g[i][j] + g[j][i]);
            }
        }
        let (vals, vecs) = jacobi3(strain);
        max_trace = max_trace.max((vals[0] + vals[1] + vals[2]).abs());

        let w = [
            vort.comp(0)[idx],
            vort.comp(1)[idx],
            vort.comp(2)[idx],
        ];
        let w_mag = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt();
        if w_mag <= cutoff {
            excluded += 1;
            continue;
        }
        let mut top = 0usize;
        for i in 1..3 {
            if vals[i] > vals[top] {
                top = i;
            }
        }
        let e = [vecs[0][top], vecs[1][top], vecs[2][top]];
        let e_mag = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
        let cos = ((w[0] * e[0] + w[1] * e[1] + w[2] * e[2]) / (w_mag * e_mag))
            .abs()
            .min(1.0);
        cos_sum += cos;
        counted += 1;
        let angle_deg = cos.acos().to_degrees();
        let bin = ((angle_deg / 5.0) as usize).min(N_ANGLE_BINS - 1);
        histogram[bin] += 1;
    }

    Ok(AlignmentStats {
        angle_histogram: histogram,
        mean_cos: if counted == 0 {
            f64::NAN
        } else {
            cos_sum / counted as f64
        },
        excluded,
        max_trace,
    })
}
