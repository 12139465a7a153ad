//! Exceptional-set dimension bound and the vorticity alignment factor.

use std::f64::consts::E;

use super::ladder::LogLadderParams;
use super::{require, FormulaError};

/// Geometry of the region where the velocity gradient is exceptionally
/// large, at volume fraction `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExceptionalGeometry {
    /// Dimension bound clamped to [0, 3].
    pub dim_bound: f64,
    /// Unclamped value of the bound.
    pub dim_bound_raw: f64,
    /// True when the raw bound left [0, 3] and was clamped.
    pub clamped: bool,
    /// Alignment factor; tends to 0 with eps when any delta_j > 0.
    pub theta_eps: f64,
}

/// Evaluate the dimension bound
/// 3 - sum_j (delta_j/(1+delta_j)) L_{j-1}(1/eps) / (1 + L_j(1/eps))
/// with L_0(x) = x, and the alignment factor
/// prod_j eps^{(delta_j/(1+delta_j))/(1+j)} (1 + L_j(1/eps))^{-(delta_j/(1+delta_j)) j/(1+j)}.
///
/// The L_0 term makes the raw bound strongly negative for small eps; the
/// value is clamped to [0, 3] with `clamped` set, since a negative
/// dimension carries no information.
pub fn exceptional_geometry(
    eps: f64,
    params: &LogLadderParams,
) -> Result<ExceptionalGeometry, FormulaError> {
    require(eps > 0.0 && eps <= 1.0, "eps", eps, "must lie in (0, 1]")?;
    let inv_eps = 1.0 / eps;

    let mut dim = 3.0;
    let mut theta = 1.0;
    let mut l_prev = inv_eps;
    for (idx, &d) in params.deltas().iter().enumerate() {
        let j = (idx + 1) as f64;
        let l_next = (E + l_prev).ln();
        let frac = d / (1.0 + d);
        dim -= frac * l_prev / (1.0 + l_next);
        theta *= eps.powf(frac / (1.0 + j)) * (1.0 + l_next).powf(-frac * j / (1.0 + j));
        l_prev = l_next;
    }

    let clamped = !(0.0..=3.0).contains(&dim);
    Ok(ExceptionalGeometry {
        dim_bound: dim.clamp(0.0, 3.0),
        dim_bound_raw: dim,
        clamped,
        theta_eps: theta,
    })
}
