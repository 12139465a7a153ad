//! Run configuration and its validation.

use crate::formula::LogLadderParams;

use super::SolverError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtPolicy {
    Fixed(f64),
    /// dt = cfl * dx_min / max |u|, recomputed every step.
    Cfl(f64),
}

/// Band-limited proportional forcing that injects energy at a constant rate
/// (per unit volume) into the shells k_min <= |k| <= k_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Forcing {
    pub k_min: f64,
    pub k_max: f64,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub nu: f64,
    /// Dissipation order; s = 1 is the classical equation.
    pub s: f64,
    pub dt: DtPolicy,
    pub t_end: f64,
    pub dealias: bool,
    pub forcing: Option<Forcing>,
    pub record_every: f64,
    /// Lebesgue index for the recorded fractional norms and the criterion
    /// integrand.
    pub q: f64,
    pub ladder: LogLadderParams,
}

impl SolverConfig {
    pub fn new(nu: f64, s: f64, dt: DtPolicy, t_end: f64) -> Result<Self, SolverError> {
        let cfg = Self {
            nu,
            s,
            dt,
            t_end,
            dealias: true,
            forcing: None,
            record_every: 0.01,
            q: 12.0,
            ladder: LogLadderParams::empty(),
        };
        cfg.validate_basic()?;
        Ok(cfg)
    }

    pub fn with_ladder(mut self, ladder: LogLadderParams) -> Self {
        self.ladder = ladder;
        self
    }

    pub fn with_q(mut self, q: f64) -> Result<Self, SolverError> {
        self.q = q;
        self.validate()?;
        Ok(self)
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Result<Self, SolverError> {
        self.forcing = Some(forcing);
        self.validate()?;
        Ok(self)
    }

    pub fn with_record_every(mut self, dt: f64) -> Result<Self, SolverError> {
        self.record_every = dt;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        self.validate_basic()?;
        if self.criterion_power() <= 0.0 {
            return Err(SolverError::Config(format!(
                "q = {} too small for the scaling relation at s = {}: the time exponent p = 2/(2s - 1 - 3/q) must be positive and finite",
                self.q, self.s
            )));
        }
        Ok(())
    }

    fn validate_basic(&self) -> Result<(), SolverError> {
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(SolverError::Config(format!("nu = {} must be > 0", self.nu)));
        }
        if !(self.s > 0.5 && self.s <= 1.0) {
            return Err(SolverError::Config(format!(
                "s = {} must lie in (1/2, 1]",
                self.s
            )));
        }
        match self.dt {
            DtPolicy::Fixed(dt) if !(dt > 0.0 && dt.is_finite()) => {
                return Err(SolverError::Config(format!("dt = {dt} must be > 0")));
            }
            DtPolicy::Cfl(c) if !(c > 0.0 && c < 1.0) => {
                return Err(SolverError::Config(format!(
                    "CFL number {c} must lie in (0, 1)"
                )));
            }
            _ => {}
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(SolverError::Config(format!(
                "t_end = {} must be >= 0",
                self.t_end
            )));
        }
        if !(self.record_every > 0.0) {
            return Err(SolverError::Config(format!(
                "record_every = {} must be > 0",
                self.record_every
            )));
        }
        if !(self.q > 3.0) {
            return Err(SolverError::Config(format!("q = {} must be > 3", self.q)));
        }
        if let Some(f) = self.forcing {
            if !(f.k_min >= 0.0 && f.k_max >= f.k_min && f.rate >= 0.0) {
                return Err(SolverError::Config(
                    "forcing needs 0 <= k_min <= k_max and rate >= 0".into(),
                ));
            }
        }
        Ok(())
    }

    /// Time exponent p of the criterion integral, from 2/p + 3/q = 2s - 1.
    pub fn criterion_power(&self) -> f64 {
        let gap = (2.0 * self.s - 1.0) - 3.0 / self.q;
        if gap <= 0.0 {
            f64::INFINITY * gap.signum()
        } else {
            2.0 / gap
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = SolverConfig::new(0.1, 0.75, DtPolicy::Fixed(0.01), 1.0).unwrap();
        assert!(cfg.dealias);
        assert_eq!(cfg.record_every, 0.01);
        assert!((cfg.criterion_power() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn validation_catches_bad_parameters() {
        assert!(SolverConfig::new(0.0, 0.75, DtPolicy::Fixed(0.01), 1.0).is_err());
        assert!(SolverConfig::new(0.1, 0.5, DtPolicy::Fixed(0.01), 1.0).is_err());
        assert!(SolverConfig::new(0.1, 1.1, DtPolicy::Fixed(0.01), 1.0).is_err());
        assert!(SolverConfig::new(0.1, 0.75, DtPolicy::Cfl(1.5), 1.0).is_err());
        // q = 4 puts the scaling exponent on the wrong side at s = 0.75
        assert!(SolverConfig::new(0.1, 0.75, DtPolicy::Fixed(0.01), 1.0)
            .unwrap()
            .with_q(4.0)
            .is_err());
    }

    #[test]
    fn classical_order_allowed() {
        assert!(SolverConfig::new(0.1, 1.0, DtPolicy::Cfl(0.4), 1.0).is_ok());
    }
}
