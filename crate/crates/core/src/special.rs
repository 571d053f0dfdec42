//! Forward and inverse trigonometric/hyperbolic helpers.
//!
//! The steady-state families are built from `sec`, `csc`, `csch`, and `coth`
//! together with their principal inverses. `f64` provides none of these
//! directly, and the inverse branches matter: every inverse here returns the
//! branch that keeps the phase argument `a*x + b` inside the window the
//! analysis restricts to ((0, pi/2) for the trigonometric families, (0, inf)
//! for the hyperbolic one).

use crate::error::ModelError;

/// Slack for arguments that land a rounding error outside [-1, 1] before an
/// `asin`/`acos` call.
const BRANCH_SLACK: f64 = 1e-12;

#[inline]
pub fn sec(x: f64) -> f64 {
    1.0 / x.cos()
}

#[inline]
pub fn csc(x: f64) -> f64 {
    1.0 / x.sin()
}

#[inline]
pub fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

#[inline]
pub fn csch(x: f64) -> f64 {
    1.0 / x.sinh()
}

#[inline]
pub fn coth(x: f64) -> f64 {
    x.cosh() / x.sinh()
}

fn clamp_unit(x: f64, what: &str) -> Result<f64, ModelError> {
    if x.abs() <= 1.0 {
        Ok(x)
    } else if x.abs() <= 1.0 + BRANCH_SLACK {
        Ok(x.signum())
    } else {
        Err(ModelError::Domain(format!("{what}: |{x}| > 1")))
    }
}

/// Principal `sec^-1(y)` in [0, pi/2) for y >= 1.
pub fn arcsec(y: f64) -> Result<f64, ModelError> {
    if y < 1.0 {
        return Err(ModelError::Domain(format!("arcsec requires y >= 1, got {y}")));
    }
    Ok(clamp_unit(1.0 / y, "arcsec")?.acos())
}

/// Principal `csc^-1(y)` in (0, pi/2] for y >= 1.
pub fn arccsc(y: f64) -> Result<f64, ModelError> {
    if y < 1.0 {
        return Err(ModelError::Domain(format!("arccsc requires y >= 1, got {y}")));
    }
    Ok(clamp_unit(1.0 / y, "arccsc")?.asin())
}

/// Principal `cot^-1(y)` in (0, pi), defined for every real y.
pub fn arccot(y: f64) -> f64 {
    std::f64::consts::FRAC_PI_2 - y.atan()
}

/// `csch^-1(y)` for y > 0 (the positive branch, asinh(1/y)).
pub fn arccsch(y: f64) -> Result<f64, ModelError> {
    if y <= 0.0 {
        return Err(ModelError::Domain(format!("arccsch requires y > 0, got {y}")));
    }
    Ok((1.0 / y).asinh())
}

/// `coth^-1(y)` for |y| > 1, i.e. atanh(1/y).
pub fn arccoth(y: f64) -> Result<f64, ModelError> {
    if y.abs() <= 1.0 {
        return Err(ModelError::Domain(format!("arccoth requires |y| > 1, got {y}")));
    }
    Ok((1.0 / y).atanh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

    #[test]
    fn principal_branches_hit_known_angles() {
        // sec(pi/3) = 2, csc(pi/6) = 2
        assert_relative_eq!(arcsec(2.0).unwrap(), FRAC_PI_3, max_relative = 1e-15);
        assert_relative_eq!(arccsc(2.0).unwrap(), FRAC_PI_6, max_relative = 1e-15);
        assert_relative_eq!(arccsc(1.0).unwrap(), FRAC_PI_2, max_relative = 1e-15);
        assert_eq!(arcsec(1.0).unwrap(), 0.0);
    }

    #[test]
    fn hyperbolic_inverses_round_trip() {
        // csch(ln((1+sqrt 5)/2)) = 2
        let golden = ((1.0 + 5.0_f64.sqrt()) / 2.0).ln();
        assert_relative_eq!(arccsch(2.0).unwrap(), golden, max_relative = 1e-15);
        for y in [1.001, 1.5, 3.0, 50.0] {
            assert_relative_eq!(coth(arccoth(y).unwrap()), y, max_relative = 1e-12);
        }
        for x in [0.2, 0.7, 1.9] {
            assert_relative_eq!(arccsch(csch(x)).unwrap(), x, max_relative = 1e-12);
        }
    }

    #[test]
    fn arccot_is_principal() {
        assert_relative_eq!(arccot(0.0), FRAC_PI_2);
        assert!(arccot(3.0) > 0.0 && arccot(3.0) < FRAC_PI_2);
        assert!(arccot(-3.0) > FRAC_PI_2 && arccot(-3.0) < std::f64::consts::PI);
        assert_relative_eq!(cot(arccot(1.75)), 1.75, max_relative = 1e-14);
    }

    #[test]
    fn domain_violations_are_errors() {
        assert!(arcsec(0.5).is_err());
        assert!(arccsc(0.999).is_err());
        assert!(arccsch(0.0).is_err());
        assert!(arccsch(-2.0).is_err());
        assert!(arccoth(1.0).is_err());
        assert!(arccoth(-0.5).is_err());
    }

    #[test]
    fn near_unit_arguments_stay_finite() {
        let y = 1.0 / (1.0 - 1e-14);
        assert!(arccsc(y).unwrap().is_finite());
        assert!(arcsec(y).unwrap().is_finite());
    }
}
