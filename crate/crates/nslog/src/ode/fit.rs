//! Least-squares estimation of the blow-up exponent from a trajectory.

use super::integrate::OdeTrajectory;
use super::OdeError;

/// Default fitting window as fractions of t_star.
const WINDOW_LO: f64 = 0.5;
const WINDOW_HI: f64 = 0.99;
const MIN_SAMPLES: usize = 20;

/// Slope of log y against log(t_star - t) over the window
/// (lo_frac, hi_frac) * t_star.
///
/// A trajectory following y ~ (t_star - t)^{-1/mu} yields -1/mu.
pub fn fit_blowup_exponent_window(
    trajectory: &OdeTrajectory,
    t_star: f64,
    lo_frac: f64,
    hi_frac: f64,
) -> Result<f64, OdeError> {
    if !(t_star > 0.0) {
        return Err(OdeError::Fit {
            reason: "t_star must be positive",
        });
    }
    let lo = lo_frac * t_star;
    let hi = hi_frac * t_star;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &y) in trajectory.times.iter().zip(&trajectory.values) {
        if t > lo && t < hi && y > 0.0 && t < t_star {
            xs.push((t_star - t).ln());
            ys.push(y.ln());
        }
    }
    if xs.len() < MIN_SAMPLES {
        return Err(OdeError::Fit {
            reason: "fewer than 20 samples inside the fitting window",
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(OdeError::Fit {
            reason: "degenerate abscissae in the fitting window",
        });
    }
    Ok(sxy / sxx)
}

/// [`fit_blowup_exponent_window`] with the default (0.5, 0.99) window.
pub fn fit_blowup_exponent(trajectory: &OdeTrajectory, t_star: f64) -> Result<f64, OdeError> {
    fit_blowup_exponent_window(trajectory, t_star, WINDOW_LO, WINDOW_HI)
}
