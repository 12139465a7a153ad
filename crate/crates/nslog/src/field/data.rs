//! Field containers. Samples and coefficients are stored component-major,
//! row-major per component with the last axis fastest.

use rustfft::num_complex::Complex;

use super::grid::Grid;
use super::FieldError;

pub type C64 = Complex<f64>;

/// Real samples of a periodic field.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysField {
    grid: Grid,
    ncomp: usize,
    data: Vec<f64>,
}

impl PhysField {
    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        Self {
            grid,
            ncomp,
            data: vec![0.0; ncomp * grid.total_points()],
        }
    }

    /// Fill from a function of (component, x, y, z).
    pub fn from_fn<F: Fn(usize, f64, f64, f64) -> f64>(grid: Grid, ncomp: usize, f: F) -> Self {
        let mut out = Self::zeros(grid, ncomp);
        let [n0, n1, n2] = grid.dims();
        for c in 0..ncomp {
            for i0 in 0..n0 {
                let x = grid.coord(0, i0);
                for i1 in 0..n1 {
                    let y = grid.coord(1, i1);
                    for i2 in 0..n2 {
                        let z = grid.coord(2, i2);
                        out.data[c * grid.total_points() + grid.ravel(i0, i1, i2)] =
                            f(c, x, y, z);
                    }
                }
            }
        }
        out
    }

    pub fn from_data(grid: Grid, ncomp: usize, data: Vec<f64>) -> Result<Self, FieldError> {
        if data.len() != ncomp * grid.total_points() {
            return Err(FieldError::Data(format!(
                "expected {} samples, got {}",
                ncomp * grid.total_points(),
                data.len()
            )));
        }
        Ok(Self { grid, ncomp, data })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn comp(&self, c: usize) -> &[f64] {
        let n = self.grid.total_points();
        &self.data[c * n..(c + 1) * n]
    }

    pub fn comp_mut(&mut self, c: usize) -> &mut [f64] {
        let n = self.grid.total_points();
        &mut self.data[c * n..(c + 1) * n]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    /// Pointwise Euclidean magnitude across components at flat point index.
    pub fn magnitude_at(&self, idx: usize) -> f64 {
        let n = self.grid.total_points();
        (0..self.ncomp)
            .map(|c| {
                let v = self.data[c * n + idx];
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Complex Fourier coefficients of a periodic field, Fourier-series
/// normalized: u(x) = sum_k c_k exp(i k.x).
#[derive(Debug, Clone, PartialEq)]
pub struct SpecField {
    grid: Grid,
    ncomp: usize,
    data: Vec<C64>,
}

impl SpecField {
    pub fn zeros(grid: Grid, ncomp: usize) -> Self {
        Self {
            grid,
            ncomp,
            data: vec![C64::new(0.0, 0.0); ncomp * grid.total_points()],
        }
    }

    pub fn from_data(grid: Grid, ncomp: usize, data: Vec<C64>) -> Result<Self, FieldError> {
        if data.len() != ncomp * grid.total_points() {
            return Err(FieldError::Data(format!(
                "expected {} coefficients, got {}",
                ncomp * grid.total_points(),
                data.len()
            )));
        }
        Ok(Self { grid, ncomp, data })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn comp(&self, c: usize) -> &[C64] {
        let n = self.grid.total_points();
        &self.data[c * n..(c + 1) * n]
    }

    pub fn comp_mut(&mut self, c: usize) -> &mut [C64] {
        let n = self.grid.total_points();
        &mut self.data[c * n..(c + 1) * n]
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    /// Worst Hermitian-symmetry deviation |c(-k) - conj(c(k))| relative to
    /// the largest coefficient magnitude.
    pub fn hermitian_error(&self) -> f64 {
        let n = self.grid.total_points();
        let scale = self
            .data
            .iter()
            .fold(0.0f64, |m, v| m.max(v.norm()))
            .max(f64::MIN_POSITIVE);
        let mut worst = 0.0f64;
        for c in 0..self.ncomp {
            let comp = self.comp(c);
            for idx in 0..n {
                let conj_idx = self.grid.conj_index(idx);
                let dev = (comp[conj_idx] - comp[idx].conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst / scale
    }

    /// Project onto the Hermitian-symmetric subspace (real fields).
    /// Self-conjugate bins (zero and Nyquist combinations) become real.
    pub fn symmetrize(&mut self) {
        let grid = self.grid;
        let n = grid.total_points();
        for c in 0..self.ncomp {
            let comp = self.comp_mut(c);
            for idx in 0..n {
                let cj = grid.conj_index(idx);
                if cj < idx {
                    continue;
                }
                let avg = 0.5 * (comp[idx] + comp[cj].conj());
                if cj == idx {
                    comp[idx] = C64::new(avg.re, 0.0);
                } else {
                    comp[idx] = avg;
                    comp[cj] = avg.conj();
                }
            }
        }
    }

    pub fn scale(&mut self, factor: f64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    /// Spectral-side squared L2 norm: V sum |c_k|^2.
    pub fn l2_sq(&self) -> f64 {
        let v = self.grid.volume();
        v * self.data.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }
}
