//! The threshold model dY/dt = -C1 + C2 (1 - omega) Y^{1+beta}.

use super::integrate::{integrate, IntegrateOptions, OdeTrajectory, Terminal};
use super::{require, OdeError};

/// Model coefficients. The sign structure is carried entirely by
/// c2 (1 - omega).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DichotomyOde {
    pub y0: f64,
    pub c1: f64,
    pub c2: f64,
    pub beta: f64,
    pub omega: f64,
}

impl DichotomyOde {
    pub fn new(y0: f64, c1: f64, c2: f64, beta: f64, omega: f64) -> Result<Self, OdeError> {
        require(y0 > 0.0 && y0.is_finite(), "y0", y0, "must be > 0")?;
        require(c1 >= 0.0 && c1.is_finite(), "c1", c1, "must be >= 0")?;
        require(c2 > 0.0 && c2.is_finite(), "c2", c2, "must be > 0")?;
        require(beta > 0.0 && beta.is_finite(), "beta", beta, "must be > 0")?;
        require(omega >= 0.0 && omega.is_finite(), "omega", omega, "must be >= 0")?;
        Ok(Self {
            y0,
            c1,
            c2,
            beta,
            omega,
        })
    }

    pub fn rhs(&self, _t: f64, y: f64) -> f64 {
        -self.c1 + self.c2 * (1.0 - self.omega) * y.max(0.0).powf(1.0 + self.beta)
    }

    /// Unstable equilibrium (C1 / (C2 (1 - omega)))^{1/(1+beta)}; present
    /// only on the growth-risk side omega < 1.
    pub fn threshold(&self) -> Option<f64> {
        if self.omega < 1.0 {
            Some((self.c1 / (self.c2 * (1.0 - self.omega))).powf(1.0 / (1.0 + self.beta)))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DichotomyOutcome {
    /// Trajectory stayed bounded on [0, t_end] or decayed to zero.
    Global,
    /// Trajectory crossed the blow-up ceiling.
    BlowUp,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DichotomyRun {
    pub trajectory: OdeTrajectory,
    pub outcome: DichotomyOutcome,
    pub threshold: Option<f64>,
}

pub fn run_dichotomy(ode: &DichotomyOde, t_end: f64, tol: f64) -> Result<DichotomyRun, OdeError> {
    let trajectory = integrate(
        |t, y| ode.rhs(t, y),
        ode.y0,
        t_end,
        tol,
        IntegrateOptions::default(),
    )?;
    let outcome = match trajectory.terminal {
        Terminal::BlewUp(_) => DichotomyOutcome::BlowUp,
        Terminal::Completed | Terminal::HitZero(_) => DichotomyOutcome::Global,
    };
    Ok(DichotomyRun {
        trajectory,
        outcome,
        threshold: ode.threshold(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn damped_side_is_global() {
        // omega = 2: both terms negative, decay to zero
        let ode = DichotomyOde::new(10.0, 1.0, 1.0, 0.5, 2.0).unwrap();
        let run = run_dichotomy(&ode, 10.0, 1e-9).unwrap();
        assert_eq!(run.outcome, DichotomyOutcome::Global);
        assert_eq!(run.threshold, None);
        assert!(matches!(run.trajectory.terminal, Terminal::HitZero(_)));
    }

    #[test]
    fn growth_side_above_threshold_blows_up() {
        // omega = 0, y0 = 4 > threshold = 1: rhs starts at -1 + 8 > 0
        let ode = DichotomyOde::new(4.0, 1.0, 1.0, 0.5, 0.0).unwrap();
        let run = run_dichotomy(&ode, 10.0, 1e-9).unwrap();
        assert_eq!(run.outcome, DichotomyOutcome::BlowUp);
        assert_eq!(run.threshold, Some(1.0));
    }

    #[test]
    fn growth_side_below_threshold_decays() {
        let ode = DichotomyOde::new(0.5, 1.0, 1.0, 0.5, 0.0).unwrap();
        let run = run_dichotomy(&ode, 3.0, 1e-9).unwrap();
        assert_eq!(run.outcome, DichotomyOutcome::Global);
    }

    #[test]
    fn threshold_formula() {
        let ode = DichotomyOde::new(1.0, 2.0, 4.0, 1.0, 0.5).unwrap();
        // (2 / (4 * 0.5))^{1/2} = 1
        assert_eq!(ode.threshold(), Some(1.0));
    }
}
