//! Closed-form solution of dZ/dt = C Z^{1+mu} and the algebraic decay
//! envelope it is compared against.

use super::{require, OdeError};

/// The comparison equation dZ/dt = C Z^{1+mu}, Z(0) = y0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonOde {
    pub y0: f64,
    pub c: f64,
    pub mu: f64,
}

impl ComparisonOde {
    pub fn new(y0: f64, c: f64, mu: f64) -> Result<Self, OdeError> {
        require(y0 > 0.0 && y0.is_finite(), "y0", y0, "must be > 0")?;
        require(c > 0.0 && c.is_finite(), "c", c, "must be > 0")?;
        require(mu > 0.0 && mu.is_finite(), "mu", mu, "must be > 0")?;
        Ok(Self { y0, c, mu })
    }

    /// Finite blow-up time 1 / (mu C y0^mu).
    pub fn blow_up_time(&self) -> f64 {
        1.0 / (self.mu * self.c * self.y0.powf(self.mu))
    }

    /// Z(t) = y0 / (1 - mu C y0^mu t)^{1/mu}; valid for t < blow_up_time.
    pub fn closed_form_z(&self, t: f64) -> Result<f64, OdeError> {
        require(t >= 0.0, "t", t, "must be >= 0")?;
        let t_star = self.blow_up_time();
        if t >= t_star {
            return Err(OdeError::BeyondBlowUp { t, t_star });
        }
        let denom = 1.0 - self.mu * self.c * self.y0.powf(self.mu) * t;
        Ok(self.y0 / denom.powf(1.0 / self.mu))
    }

    /// Right-hand side C y^{1+mu}, clamped at zero from below.
    pub fn rhs(&self, _t: f64, y: f64) -> f64 {
        self.c * y.max(0.0).powf(1.0 + self.mu)
    }
}

/// Algebraic decay envelope c y0 / (1 + beta t)^gamma.
pub fn decay_envelope(y0: f64, c: f64, beta: f64, gamma: f64, t: f64) -> Result<f64, OdeError> {
    require(y0 > 0.0, "y0", y0, "must be > 0")?;
    require(c > 0.0, "c", c, "must be > 0")?;
    require(beta > 0.0, "beta", beta, "must be > 0")?;
    require(gamma > 0.0, "gamma", gamma, "must be > 0")?;
    require(t >= 0.0, "t", t, "must be >= 0")?;
    Ok(c * y0 / (1.0 + beta * t).powf(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn closed_form_examples() {
        let ode = ComparisonOde::new(2.0, 1.0, 1.0).unwrap();
        assert_eq!(ode.closed_form_z(0.0).unwrap(), 2.0);
        assert!(close(ode.closed_form_z(0.4).unwrap(), 10.0, 1e-14));
        assert!(close(ode.blow_up_time(), 0.5, 1e-15));
        match ode.closed_form_z(0.5) {
            Err(OdeError::BeyondBlowUp { t_star, .. }) => assert!(close(t_star, 0.5, 1e-15)),
            other => panic!("expected blow-up error, got {other:?}"),
        }
    }

    #[test]
    fn closed_form_is_increasing() {
        let ode = ComparisonOde::new(0.5, 2.0, 0.7).unwrap();
        let t_star = ode.blow_up_time();
        let mut prev = 0.0;
        for i in 0..50 {
            let t = t_star * i as f64 / 51.0;
            let z = ode.closed_form_z(t).unwrap();
            assert!(z > prev);
            prev = z;
        }
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(decay_envelope(1.0, 1.0, 1.0, 2.0, 0.0).unwrap(), 1.0);
        assert!(close(decay_envelope(1.0, 1.0, 1.0, 2.0, 1.0).unwrap(), 0.25, 1e-15));
        assert!(decay_envelope(1.0, 1.0, 1.0, 2.0, 1e12).unwrap() < 1e-20);
        // agrees with the closed form at t = 0 when c = 1
        let ode = ComparisonOde::new(3.0, 1.0, 0.5).unwrap();
        assert_eq!(
            decay_envelope(3.0, 1.0, 1.0, 1.0, 0.0).unwrap(),
            ode.closed_form_z(0.0).unwrap()
        );
    }

    #[test]
    fn envelope_non_increasing() {
        let mut prev = f64::INFINITY;
        for i in 0..40 {
            let v = decay_envelope(2.0, 1.5, 0.3, 1.2, i as f64).unwrap();
            assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn constructor_domain() {
        assert!(ComparisonOde::new(0.0, 1.0, 1.0).is_err());
        assert!(ComparisonOde::new(1.0, -1.0, 1.0).is_err());
        assert!(ComparisonOde::new(1.0, 1.0, 0.0).is_err());
        assert!(decay_envelope(1.0, 1.0, 1.0, 2.0, -0.1).is_err());
    }
}
