//! Adaptive embedded Runge-Kutta integration of scalar initial value
//! problems, with ceiling-based blow-up bracketing and zero-crossing
//! detection.

use super::{require, OdeError};

/// How an integration ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Terminal {
    /// Reached t_end.
    Completed,
    /// Crossed the ceiling with collapsing steps; payload is the bracketed
    /// blow-up time.
    BlewUp(f64),
    /// Crossed zero; payload is the interpolated crossing time.
    HitZero(f64),
}

/// Recorded solution samples. Times are strictly increasing; values are
/// finite and non-negative at every recorded point.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeTrajectory {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub terminal: Terminal,
}

impl OdeTrajectory {
    pub fn last_time(&self) -> f64 {
        *self.times.last().expect("trajectory is never empty")
    }

    pub fn last_value(&self) -> f64 {
        *self.values.last().expect("trajectory is never empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Value treated as numerical blow-up.
    pub ceiling: f64,
    /// Relative width to which the ceiling crossing is bracketed.
    pub bracket_rel: f64,
    /// Hard cap on accepted steps.
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            ceiling: 1e12,
            bracket_rel: 1e-4,
            max_steps: 2_000_000,
        }
    }
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 35.0 / 384.0 - 5179.0 / 57600.0;
const E3: f64 = 500.0 / 1113.0 - 7571.0 / 16695.0;
const E4: f64 = 125.0 / 192.0 - 393.0 / 640.0;
const E5: f64 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
const E6: f64 = 11.0 / 84.0 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

/// One embedded step from (t, y); returns (y5, error_estimate).
fn dp_step<F: Fn(f64, f64) -> f64>(rhs: &F, t: f64, y: f64, h: f64) -> (f64, f64) {
    let k1 = rhs(t, y);
    let k2 = rhs(t + C2 * h, y + h * A21 * k1);
    let k3 = rhs(t + C3 * h, y + h * (A31 * k1 + A32 * k2));
    let k4 = rhs(t + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3));
    let k5 = rhs(t + C5 * h, y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
    let k6 = rhs(
        t + h,
        y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
    );
    let y5 = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
    let k7 = rhs(t + h, y5);
    let err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
    (y5, err)
}

/// Integrate dy/dt = rhs(t, y) from y(0) = y0 up to t_end with local error
/// per step of order `tol`, recording every accepted step.
///
/// Termination:
/// * `Completed` at t_end;
/// * `BlewUp(t*)` when the solution exceeds `opts.ceiling` and the step size
///   collapses; t* is bracketed to relative width `opts.bracket_rel`;
/// * `HitZero(t)` when the solution crosses zero.
///
/// A step underflow with no ceiling crossing raises a stiffness error.
pub fn integrate<F: Fn(f64, f64) -> f64>(
    rhs: F,
    y0: f64,
    t_end: f64,
    tol: f64,
    opts: IntegrateOptions,
) -> Result<OdeTrajectory, OdeError> {
    require(y0.is_finite(), "y0", y0, "must be finite")?;
    require(t_end > 0.0 && t_end.is_finite(), "t_end", t_end, "must be > 0")?;
    require(tol > 0.0 && tol.is_finite(), "tol", tol, "must be > 0")?;
    require(y0 < opts.ceiling, "y0", y0, "must start below the ceiling")?;

    let mut times = vec![0.0];
    let mut values = vec![y0.max(0.0)];
    let mut t = 0.0f64;
    let mut y = y0;
    let mut h = (t_end / 100.0).min(1e-2).max(1e-10);

    for _ in 0..opts.max_steps {
        if t >= t_end {
            return Ok(OdeTrajectory {
                times,
                values,
                terminal: Terminal::Completed,
            });
        }
        h = h.min(t_end - t);
        let (y_new, err) = dp_step(&rhs, t, y, h);

        let ceiling_hit = !y_new.is_finite() || y_new >= opts.ceiling;
        if ceiling_hit {
            // shrink into the crossing; the bracket is [t, t + h]
            if h <= opts.bracket_rel * (t + h).max(f64::MIN_POSITIVE) {
                let t_star = t + h;
                return Ok(OdeTrajectory {
                    times,
                    values,
                    terminal: Terminal::BlewUp(t_star),
                });
            }
            h *= 0.5;
            continue;
        }

        let scale = tol * (1.0 + y.abs().max(y_new.abs()));
        let ratio = err.abs() / scale;
        if ratio <= 1.0 {
            t += h;
            y = y_new;
            if y <= 0.0 {
                // linear interpolation to the zero crossing inside the step
                let y_prev = *values.last().unwrap();
                let t_prev = *times.last().unwrap();
                let frac = if y_prev - y > 0.0 { y_prev / (y_prev - y) } else { 1.0 };
                let t_cross = t_prev + frac * (t - t_prev);
                times.push(t_cross);
                values.push(0.0);
                return Ok(OdeTrajectory {
                    times,
                    values,
                    terminal: Terminal::HitZero(t_cross),
                });
            }
            times.push(t);
            values.push(y);
            let grow = if ratio > 0.0 {
                (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                5.0
            };
            h *= grow;
        } else {
            h *= (0.9 * ratio.powf(-0.2)).clamp(0.1, 0.9);
            if h < 1e-14 * t.max(1.0) {
                return Err(OdeError::Stiffness { t });
            }
        }
    }
    Err(OdeError::Stiffness { t })
}
