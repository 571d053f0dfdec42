//! Physical constants of the transformed system and the shift slope `kappa`.

use crate::error::ModelError;

/// The four constants of the transformed system:
/// diffusion rate `d`, chemotactic sensitivity `chi`, chemical diffusivity
/// `eps`, and source strength `mu`.
///
/// The admissible regime is `d > 0`, `eps > 0`, and `chi * mu > 0`; the
/// bundled presets additionally sit in the `chi > 0`, `mu > 0` quadrant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub d: f64,
    pub chi: f64,
    pub eps: f64,
    pub mu: f64,
}

impl ModelParams {
    /// Construct a validated parameter set.
    pub fn new(d: f64, chi: f64, eps: f64, mu: f64) -> Result<Self, ModelError> {
        let p = Self { d, chi, eps, mu };
        p.validate()?;
        Ok(p)
    }

    /// Check the admissible regime. Rejects non-finite values, `d <= 0`,
    /// `eps <= 0`, and `chi * mu <= 0`.
    pub fn validate(&self) -> Result<(), ModelError> {
        let all_finite =
            self.d.is_finite() && self.chi.is_finite() && self.eps.is_finite() && self.mu.is_finite();
        if !all_finite {
            return Err(ModelError::InvalidParams("non-finite parameter".into()));
        }
        if self.d <= 0.0 {
            return Err(ModelError::InvalidParams(format!("d must be positive, got {}", self.d)));
        }
        if self.eps <= 0.0 {
            return Err(ModelError::InvalidParams(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if self.chi * self.mu <= 0.0 {
            return Err(ModelError::InvalidParams(format!(
                "chi*mu must be positive, got chi = {}, mu = {}",
                self.chi, self.mu
            )));
        }
        Ok(())
    }
}

/// Positive shift slope shared by all four steady-state families:
///
/// ```text
/// kappa = sqrt( mu chi^2 / (2 d eps (2 d + chi)) )
/// ```
///
/// Fails with a domain error when the radicand is not strictly positive
/// (degenerate source `mu = 0`, or `2d + chi <= 0`).
pub fn kappa(params: &ModelParams) -> Result<f64, ModelError> {
    let ModelParams { d, chi, eps, mu } = *params;
    let denom = 2.0 * d * eps * (2.0 * d + chi);
    if denom <= 0.0 {
        return Err(ModelError::Domain(format!(
            "kappa undefined: 2*d*eps*(2d+chi) = {denom} is not positive"
        )));
    }
    let radicand = mu * chi * chi / denom;
    if radicand <= 0.0 || !radicand.is_finite() {
        return Err(ModelError::Domain(format!(
            "kappa undefined: radicand {radicand} is not positive"
        )));
    }
    Ok(radicand.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn benchmark_params() -> ModelParams {
        ModelParams::new(2.0, 1.0, 0.5, 1.0).unwrap()
    }

    #[test]
    fn kappa_benchmark_value() {
        // d=2, chi=1, eps=0.5, mu=1 gives kappa = 1/sqrt(10).
        let k = kappa(&benchmark_params()).unwrap();
        assert_relative_eq!(k, 1.0 / 10.0_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn kappa_unit_case() {
        // d=1, chi=2, eps=1, mu=2: sqrt(2*4 / (2*1*1*4)) = 1.
        let p = ModelParams::new(1.0, 2.0, 1.0, 2.0).unwrap();
        assert_relative_eq!(kappa(&p).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn kappa_degenerate_source_is_domain_error() {
        // mu = 0 kills the steady gradient; the radicand vanishes.
        let p = ModelParams { d: 1.0, chi: 1.0, eps: 1.0, mu: 0.0 };
        assert!(matches!(kappa(&p), Err(ModelError::Domain(_))));
        // and the validated constructor rejects it outright
        assert!(ModelParams::new(1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn regime_is_enforced() {
        assert!(ModelParams::new(-1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(ModelParams::new(1.0, -1.0, 1.0, 1.0).is_err());
        // opposite-sign quadrant chi<0, mu<0 has chi*mu > 0 and passes validation
        assert!(ModelParams::new(1.0, -1.0, 1.0, -1.0).is_ok());
    }

    #[test]
    fn kappa_identity() {
        // kappa^2 * 2 d eps (2d + chi) = mu chi^2
        for (d, chi, eps, mu) in [
            (2.0, 1.0, 0.5, 1.0),
            (0.7, 0.3, 1.9, 2.4),
            (5.0, 4.0, 0.01, 0.25),
        ] {
            let p = ModelParams::new(d, chi, eps, mu).unwrap();
            let k = kappa(&p).unwrap();
            let lhs = k * k * 2.0 * d * eps * (2.0 * d + chi);
            assert_relative_eq!(lhs, mu * chi * chi, max_relative = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn kappa_identity_prop(
            d in 0.05f64..10.0,
            chi in 0.01f64..8.0,
            eps in 0.01f64..5.0,
            mu in 0.01f64..10.0,
        ) {
            let p = ModelParams::new(d, chi, eps, mu).unwrap();
            let k = kappa(&p).unwrap();
            let lhs = k * k * 2.0 * d * eps * (2.0 * d + chi);
            let rhs = mu * chi * chi;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
        }
    }
}
