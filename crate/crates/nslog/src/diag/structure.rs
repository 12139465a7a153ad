//! Velocity structure functions from longitudinal increments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PhysField;

use super::DiagError;

#[derive(Debug, Clone, PartialEq)]
pub struct StructureFunctionTable {
    /// Physical separations.
    pub separations: Vec<f64>,
    pub orders: Vec<f64>,
    /// values[i][j] = S_{orders[i]}(separations[j]).
    pub values: Vec<Vec<f64>>,
    /// Fitted scaling exponent per order over the positive-separation window.
    pub zeta: Vec<f64>,
    /// Window (r_min, r_max) the exponents were fitted on.
    pub fit_window: (f64, f64),
}

impl StructureFunctionTable {
    pub fn csv(&self) -> String {
        let mut out = String::from("r,p,s_p\n");
        for (i, &p) in self.orders.iter().enumerate() {
            for (j, &r) in self.separations.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", r, p, self.values[i][j]));
            }
        }
        out
    }
}

fn cells_for_separation(f: &PhysField, r: f64, axis: usize) -> Result<usize, DiagError> {
    let dx = f.grid().spacing(axis);
    let cells = r / dx;
    let rounded = cells.round();
    if (cells - rounded).abs() > 1e-9 * cells.max(1.0) || rounded < 0.0 {
        return Err(DiagError::Config(format!(
            "separation {r} is not a multiple of the grid spacing {dx} on axis {axis}"
        )));
    }
    Ok(rounded as usize)
}

/// Longitudinal structure functions along one axis: the increments of
/// component `axis` taken along direction `axis`.
pub fn structure_functions_axis(
    f: &PhysField,
    orders: &[f64],
    separations: &[f64],
    axis: usize,
    n_samples: usize,
    seed: u64,
) -> Result<StructureFunctionTable, DiagError> {
    build_table(f, orders, separations, Some(axis), n_samples, seed)
}

/// Longitudinal structure functions averaged over the grid axes.
/// `n_samples = 0` uses every grid point.
pub fn structure_functions(
    f: &PhysField,
    orders: &[f64],
    separations: &[f64],
    n_samples: usize,
    seed: u64,
) -> Result<StructureFunctionTable, DiagError> {
    build_table(f, orders, separations, None, n_samples, seed)
}

fn build_table(
    f: &PhysField,
    orders: &[f64],
    separations: &[f64],
    only_axis: Option<usize>,
    n_samples: usize,
    seed: u64,
) -> Result<StructureFunctionTable, DiagError> {
    if orders.is_empty() || separations.is_empty() {
        return Err(DiagError::Config(
            "orders and separations must be non-empty".into(),
        ));
    }
    for &p in orders {
        if !(p > 0.0) {
            return Err(DiagError::Config(format!("order p = {p} must be > 0")));
        }
    }
    let grid = f.grid();
    let rank = grid.rank();
    let axes: Vec<usize> = match only_axis {
        Some(a) if a < rank => vec![a],
        Some(a) => {
            return Err(DiagError::Config(format!(
                "axis {a} out of range for rank {rank}"
            )))
        }
        None => (0..rank).collect(),
    };
    let n = grid.total_points();
    let dims = grid.dims();

    let points: Vec<usize> = if n_samples == 0 || n_samples >= n {
        (0..n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n_samples).map(|_| rng.gen_range(0..n)).collect()
    };

    let mut values = vec![vec![0.0f64; separations.len()]; orders.len()];
    for (j, &r) in separations.iter().enumerate() {
        let mut acc = vec![0.0f64; orders.len()];
        let mut count = 0usize;
        for &axis in &axes {
            let cells = cells_for_separation(f, r, axis)?;
            let comp = f.comp(axis);
            for &idx in &points {
                let (i0, i1, i2) = grid.unravel(idx);
                let mut pos = [i0, i1, i2];
                pos[axis] = (pos[axis] + cells) % dims[axis];
                let shifted = grid.ravel(pos[0], pos[1], pos[2]);
                let diff = (comp[shifted] - comp[idx]).abs();
                for (o, &p) in orders.iter().enumerate() {
                    acc[o] += diff.powf(p);
                }
                count += 1;
            }
        }
        for (o, a) in acc.iter().enumerate() {
            values[o][j] = a / count as f64;
        }
    }

    // log-log fit over strictly positive separations and values
    let mut zeta = Vec::with_capacity(orders.len());
    let mut window = (f64::INFINITY, 0.0f64);
    for row in &values {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (j, &r) in separations.iter().enumerate() {
            if r > 0.0 && row[j] > 0.0 {
                xs.push(r.ln());
                ys.push(row[j].ln());
                window.0 = window.0.min(r);
                window.1 = window.1.max(r);
            }
        }
        zeta.push(least_squares_slope(&xs, &ys).unwrap_or(f64::NAN));
    }
    if !window.0.is_finite() {
        window = (0.0, 0.0);
    }
    Ok(StructureFunctionTable {
        separations: separations.to_vec(),
        orders: orders.to_vec(),
        values,
        zeta,
        fit_window: window,
    })
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Grid;

    #[test]
    fn trigonometric_identity_along_x() {
        // u = (sin x, 0, 0): S_2(r) along x is 1 - cos r exactly
        let g = Grid::cube(32).unwrap();
        let f = PhysField::from_fn(g, 3, |c, x, _, _| if c == 0 { x.sin() } else { 0.0 });
        let dx = g.spacing(0);
        let seps: Vec<f64> = (0..=8).map(|i| i as f64 * dx).collect();
        let t = structure_functions_axis(&f, &[2.0], &seps, 0, 0, 0).unwrap();
        for (j, &r) in seps.iter().enumerate() {
            let exact = 1.0 - r.cos();
            assert!(
                (t.values[0][j] - exact).abs() <= 1e-12 * exact.max(1.0),
                "r = {r}: {} vs {exact}",
                t.values[0][j]
            );
        }
        // zero separation gives exactly zero for every order
        assert_eq!(t.values[0][0], 0.0);
    }

    #[test]
    fn axis_average_dilutes_single_component() {
        let g = Grid::cube(16).unwrap();
        let f = PhysField::from_fn(g, 3, |c, x, _, _| if c == 0 { x.sin() } else { 0.0 });
        let dx = g.spacing(0);
        let seps = [2.0 * dx];
        let along_x = structure_functions_axis(&f, &[2.0], &seps, 0, 0, 0).unwrap();
        let avg = structure_functions(&f, &[2.0], &seps, 0, 0).unwrap();
        assert!((avg.values[0][0] - along_x.values[0][0] / 3.0).abs() < 1e-13);
    }

    #[test]
    fn increment_bound() {
        let g = Grid::cube(16).unwrap();
        let f = PhysField::from_fn(g, 3, |c, x, y, z| ((c + 1) as f64 * x + y).sin() * z.cos());
        let dx = g.spacing(0);
        let seps: Vec<f64> = (1..=4).map(|i| i as f64 * dx).collect();
        let t = structure_functions(&f, &[2.0], &seps, 0, 0).unwrap();
        // S_2(r) <= 2 <|u|^2> by Cauchy-Schwarz; component-wise bound is
        // 4 <u_a^2> <= 4 <|u|^2> / rank averaged over axes
        let mean_sq: f64 =
            f.data().iter().map(|v| v * v).sum::<f64>() / g.total_points() as f64;
        for &v in &t.values[0] {
            assert!(v <= 4.0 * mean_sq);
        }
    }

    #[test]
    fn incommensurate_separation_rejected() {
        let g = Grid::cube(16).unwrap();
        let f = PhysField::zeros(g, 3);
        assert!(structure_functions(&f, &[2.0], &[0.1], 0, 0).is_err());
    }

    #[test]
    fn sampled_subset_is_deterministic() {
        let g = Grid::cube(16).unwrap();
        let f = PhysField::from_fn(g, 3, |c, x, y, _| (x + c as f64).sin() * y.cos());
        let dx = g.spacing(0);
        let a = structure_functions(&f, &[1.0, 2.0], &[dx, 2.0 * dx], 100, 7).unwrap();
        let b = structure_functions(&f, &[1.0, 2.0], &[dx, 2.0 * dx], 100, 7).unwrap();
        assert_eq!(a, b);
    }
}
