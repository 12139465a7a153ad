//! The nested logarithm ladder L_j and the weights built from it.

use std::f64::consts::E;

use super::{require, FormulaError};

/// Ladder configuration: improvement exponents `deltas` (delta_j >= 0),
/// their companion constants `cs` (c_j > 0), and the two free constants
/// C0 (admissibility) and C3 (dichotomy).
#[derive(Debug, Clone, PartialEq)]
pub struct LogLadderParams {
    deltas: Vec<f64>,
    cs: Vec<f64>,
    c0: f64,
    c3: f64,
}

impl LogLadderParams {
    pub fn new(deltas: Vec<f64>, cs: Vec<f64>, c0: f64, c3: f64) -> Result<Self, FormulaError> {
        if deltas.len() != cs.len() {
            return Err(FormulaError::LadderLengths {
                deltas: deltas.len(),
                cs: cs.len(),
            });
        }
        for &d in &deltas {
            require(d >= 0.0 && d.is_finite(), "delta_j", d, "must be >= 0")?;
        }
        for &c in &cs {
            require(c > 0.0 && c.is_finite(), "c_j", c, "must be > 0")?;
        }
        require(c0 > 0.0 && c0.is_finite(), "c0", c0, "must be > 0")?;
        require(c3 > 0.0 && c3.is_finite(), "c3", c3, "must be > 0")?;
        Ok(Self {
            deltas,
            cs,
            c0,
            c3,
        })
    }

    /// Ladder with all c_j = 1 and C0 = C3 = 1.
    pub fn with_unit_constants(deltas: Vec<f64>) -> Result<Self, FormulaError> {
        let cs = vec![1.0; deltas.len()];
        Self::new(deltas, cs, 1.0, 1.0)
    }

    /// The empty ladder (n = 0): every weight degenerates to 1.
    pub fn empty() -> Self {
        Self {
            deltas: Vec::new(),
            cs: Vec::new(),
            c0: 1.0,
            c3: 1.0,
        }
    }

    pub fn levels(&self) -> usize {
        self.deltas.len()
    }

    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    pub fn cs(&self) -> &[f64] {
        &self.cs
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }

    /// Ladder truncated to its first `n` levels, constants carried over.
    pub fn prefix(&self, n: usize) -> Self {
        Self {
            deltas: self.deltas[..n].to_vec(),
            cs: self.cs[..n].to_vec(),
            c0: self.c0,
            c3: self.c3,
        }
    }
}

/// j-fold nested logarithm: L_0(x) = x, L_j(x) = ln(e + L_{j-1}(x)).
///
/// L_0 accepts any real; deeper levels require x >= 0 so that the value
/// stays in the monotone regime (then L_j >= 1 for j >= 1).
pub fn nested_log(j: u32, x: f64) -> Result<f64, FormulaError> {
    if j == 0 {
        return Ok(x);
    }
    require(x >= 0.0, "x", x, "must be >= 0 for levels j >= 1")?;
    let mut v = x;
    for _ in 0..j {
        v = (E + v).ln();
    }
    Ok(v)
}

/// Multiplicative improvement weight prod_{j=1..n} (1 + L_j(x))^{delta_j}.
///
/// Equals 1 for the empty ladder or all-zero deltas, and is non-decreasing
/// in x and in each delta_j.
pub fn log_weight(x: f64, params: &LogLadderParams) -> Result<f64, FormulaError> {
    require(x >= 0.0, "x", x, "must be >= 0")?;
    let mut acc = 1.0;
    let mut lj = x;
    for &d in params.deltas() {
        lj = (E + lj).ln();
        acc *= (1.0 + lj).powf(d);
    }
    Ok(acc)
}

/// Commutator weight pair (F1, F2):
/// F1(z) = L_1(z) prod_{j=2..n} (1 + L_j(z))^{-delta_j},
/// F2(z) = (1/L_1(z)) prod_{j=2..n} (1 + L_j(z))^{delta_j}.
///
/// delta_1 plays no role; the pair multiplies to 1 by construction.
pub fn commutator_factors(z: f64, params: &LogLadderParams) -> Result<(f64, f64), FormulaError> {
    if params.levels() == 0 {
        return Err(FormulaError::EmptyLadder);
    }
    require(z >= 0.0, "z", z, "must be >= 0")?;
    let l1 = (E + z).ln();
    let mut f1 = l1;
    let mut f2 = 1.0 / l1;
    let mut lj = l1;
    for &d in params.deltas().iter().skip(1) {
        lj = (E + lj).ln();
        let up = (1.0 + lj).powf(d);
        f1 /= up;
        f2 *= up;
    }
    Ok((f1, f2))
}
