//! Uniform periodic grids. Rank-2 grids are carried as rank-3 grids with a
//! trailing singleton axis so that every kernel has one code path.

use std::f64::consts::PI;

use super::FieldError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    rank: usize,
    npts: [usize; 3],
    box_len: [f64; 3],
}

const TWO_PI: f64 = 2.0 * PI;

impl Grid {
    /// General constructor; `npts` and `box_len` carry `rank` entries.
    pub fn new(rank: usize, npts: &[usize], box_len: &[f64]) -> Result<Self, FieldError> {
        if rank != 2 && rank != 3 {
            return Err(FieldError::Grid(format!("rank must be 2 or 3, got {rank}")));
        }
        if npts.len() != rank || box_len.len() != rank {
            return Err(FieldError::Grid(format!(
                "expected {rank} axis sizes and box lengths, got {} and {}",
                npts.len(),
                box_len.len()
            )));
        }
        let mut n = [1usize; 3];
        let mut b = [TWO_PI; 3];
        for a in 0..rank {
            if npts[a] < 8 || !npts[a].is_power_of_two() {
                return Err(FieldError::Grid(format!(
                    "axis {a} needs a power-of-two point count >= 8, got {}",
                    npts[a]
                )));
            }
            if !(box_len[a] > 0.0) || !box_len[a].is_finite() {
                return Err(FieldError::Grid(format!(
                    "axis {a} box length must be positive, got {}",
                    box_len[a]
                )));
            }
            n[a] = npts[a];
            b[a] = box_len[a];
        }
        Ok(Self {
            rank,
            npts: n,
            box_len: b,
        })
    }

    /// Cubic rank-3 grid on the 2-pi box.
    pub fn cube(n: usize) -> Result<Self, FieldError> {
        Self::new(3, &[n, n, n], &[TWO_PI, TWO_PI, TWO_PI])
    }

    /// Square rank-2 grid on the 2-pi box.
    pub fn square(n: usize) -> Result<Self, FieldError> {
        Self::new(2, &[n, n], &[TWO_PI, TWO_PI])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Per-axis point counts, trailing singleton axes included.
    pub fn dims(&self) -> [usize; 3] {
        self.npts
    }

    pub fn box_len(&self) -> [f64; 3] {
        self.box_len
    }

    pub fn total_points(&self) -> usize {
        self.npts[0] * self.npts[1] * self.npts[2]
    }

    pub fn volume(&self) -> f64 {
        (0..self.rank).map(|a| self.box_len[a]).product()
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.box_len[axis] / self.npts[axis] as f64
    }

    /// Physical coordinate of sample i along an axis.
    pub fn coord(&self, axis: usize, i: usize) -> f64 {
        i as f64 * self.spacing(axis)
    }

    /// Integer frequency of FFT bin i along an axis (negative half mapped down).
    pub fn freq(&self, axis: usize, i: usize) -> i64 {
        let n = self.npts[axis];
        if i <= n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// Physical wavenumber component 2 pi m / L; equal to the integer
    /// frequency on the default 2-pi box.
    pub fn k_phys(&self, axis: usize, i: usize) -> f64 {
        TWO_PI * self.freq(axis, i) as f64 / self.box_len[axis]
    }

    /// Wavevector (k0, k1, k2) of flat mode index `idx`.
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let (i0, i1, i2) = self.unravel(idx);
        [
            self.k_phys(0, i0),
            self.k_phys(1, i1),
            self.k_phys(2, i2),
        ]
    }

    pub fn ravel(&self, i0: usize, i1: usize, i2: usize) -> usize {
        (i0 * self.npts[1] + i1) * self.npts[2] + i2
    }

    pub fn unravel(&self, idx: usize) -> (usize, usize, usize) {
        let n12 = self.npts[1] * self.npts[2];
        let i0 = idx / n12;
        let r = idx % n12;
        (i0, r / self.npts[2], r % self.npts[2])
    }

    /// Flat index of the mode with negated wavevector.
    pub fn conj_index(&self, idx: usize) -> usize {
        let (i0, i1, i2) = self.unravel(idx);
        let neg = |i: usize, n: usize| if i == 0 { 0 } else { n - i };
        self.ravel(
            neg(i0, self.npts[0]),
            neg(i1, self.npts[1]),
            neg(i2, self.npts[2]),
        )
    }

    /// Per-axis two-thirds dealiasing limit on the integer frequency.
    pub fn dealias_limit(&self, axis: usize) -> i64 {
        (self.npts[axis] / 3) as i64
    }

    /// True when the mode passes the 2/3-rule mask.
    pub fn dealias_keep(&self, idx: usize) -> bool {
        let (i0, i1, i2) = self.unravel(idx);
        self.freq(0, i0).abs() <= self.dealias_limit(0)
            && self.freq(1, i1).abs() <= self.dealias_limit(1)
            && self.freq(2, i2).abs() <= self.dealias_limit(2)
    }

    /// Largest physical |k| representable after dealiasing.
    pub fn dealias_kmax(&self) -> f64 {
        let mut sum = 0.0;
        for a in 0..self.rank {
            let km = TWO_PI * self.dealias_limit(a) as f64 / self.box_len[a];
            sum += km * km;
        }
        sum.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rules() {
        assert!(Grid::cube(32).is_ok());
        assert!(Grid::square(64).is_ok());
        assert!(Grid::new(3, &[8, 8], &[1.0, 1.0]).is_err());
        assert!(Grid::new(3, &[8, 8, 12], &[1.0, 1.0, 1.0]).is_err());
        assert!(Grid::new(2, &[8, 4], &[1.0, 1.0]).is_err());
        assert!(Grid::new(1, &[8], &[1.0]).is_err());
    }

    #[test]
    fn frequencies_and_conjugates() {
        let g = Grid::cube(8).unwrap();
        assert_eq!(g.freq(0, 0), 0);
        assert_eq!(g.freq(0, 4), 4);
        assert_eq!(g.freq(0, 5), -3);
        assert_eq!(g.freq(0, 7), -1);
        for idx in 0..g.total_points() {
            let c = g.conj_index(idx);
            assert_eq!(g.conj_index(c), idx);
            let k = g.wavevector(idx);
            let kc = g.wavevector(c);
            for a in 0..3 {
                // Nyquist bins are their own conjugate
                let (i, _, _) = g.unravel(idx);
                let _ = i;
                if k[a].abs() < 4.0 {
                    assert_eq!(k[a], -kc[a]);
                }
            }
        }
    }

    #[test]
    fn rank2_has_singleton_axis() {
        let g = Grid::square(16).unwrap();
        assert_eq!(g.dims(), [16, 16, 1]);
        assert_eq!(g.total_points(), 256);
        assert_eq!(g.freq(2, 0), 0);
        let v: f64 = g.volume();
        assert!((v - (2.0 * PI) * (2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn dealias_mask() {
        let g = Grid::cube(32).unwrap();
        assert_eq!(g.dealias_limit(0), 10);
        let idx = g.ravel(11, 0, 0);
        assert!(!g.dealias_keep(idx));
        let idx = g.ravel(10, 5, 31);
        assert!(g.dealias_keep(idx));
    }
}
