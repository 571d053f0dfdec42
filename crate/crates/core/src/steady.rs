//! The four explicit steady-state families and everything derived from them.
//!
//! Each family is a pair `(ubar, vbar)` on the unit interval built from one
//! elementary function of the phase `s = a*x + b`:
//!
//! | family      | ubar         | vbar                      |
//! |-------------|--------------|---------------------------|
//! | `Power`     | `s^-2`       | `-2 a d / chi * s^-1`     |
//! | `SecTan`    | `sec^2 s`    | `+2 a d / chi * tan s`    |
//! | `CscCot`    | `csc^2 s`    | `-2 a d / chi * cot s`    |
//! | `CschCoth`  | `csch^2 s`   | `-2 a d / chi * coth s`   |
//!
//! Only the positive branch is implemented: `a = +kappa(params)` and `b > 0`.
//! For the two trigonometric families the phase is restricted to the window
//! `(0, pi/2)` on which both are bounded and strictly monotone.
//!
//! All derivatives are hand-derived closed forms (the third-order residual
//! needs them at full precision); the test suite checks every one of them
//! against central finite differences.

use crate::error::ModelError;
use crate::model::{kappa, ModelParams};
use crate::special;

/// Tag for one of the four explicit solution shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SteadyStateFamily {
    Power,
    SecTan,
    CscCot,
    CschCoth,
}

impl SteadyStateFamily {
    /// All four families, in table order.
    pub const ALL: [SteadyStateFamily; 4] = [
        SteadyStateFamily::Power,
        SteadyStateFamily::SecTan,
        SteadyStateFamily::CscCot,
        SteadyStateFamily::CschCoth,
    ];

    /// Short machine name, also accepted by [`SteadyStateFamily::parse`].
    pub fn name(&self) -> &'static str {
        match self {
            SteadyStateFamily::Power => "power",
            SteadyStateFamily::SecTan => "sec",
            SteadyStateFamily::CscCot => "csc",
            SteadyStateFamily::CschCoth => "csch",
        }
    }

    /// Human-readable function pair.
    pub fn label(&self) -> &'static str {
        match self {
            SteadyStateFamily::Power => "power",
            SteadyStateFamily::SecTan => "sec^2 & tan",
            SteadyStateFamily::CscCot => "csc^2 & cot",
            SteadyStateFamily::CschCoth => "csch^2 & coth",
        }
    }

    pub fn parse(s: &str) -> Result<Self, ModelError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "power" => Ok(SteadyStateFamily::Power),
            "sec" | "sectan" => Ok(SteadyStateFamily::SecTan),
            "csc" | "csccot" => Ok(SteadyStateFamily::CscCot),
            "csch" | "cschcoth" => Ok(SteadyStateFamily::CschCoth),
            other => Err(ModelError::InvalidConfig(format!("unknown family '{other}'"))),
        }
    }

    /// With a positive shift slope, `ubar` increases only for the secant
    /// family; it decreases for the other three. `vbar` increases for all.
    pub fn u_is_increasing(&self) -> bool {
        matches!(self, SteadyStateFamily::SecTan)
    }

    /// Whether the family's phase must stay inside `(0, pi/2)`.
    pub fn needs_phase_window(&self) -> bool {
        matches!(self, SteadyStateFamily::SecTan | SteadyStateFamily::CscCot)
    }
}

impl std::fmt::Display for SteadyStateFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One explicit steady state: a family plus the shift coefficients of its
/// phase `s = a*x + b` and the parameters it solves the system for.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub family: SteadyStateFamily,
    /// Shift slope; equals `+kappa(params)` for a valid state.
    pub a: f64,
    /// Shift offset, positive.
    pub b: f64,
    pub params: ModelParams,
}

/// Pointwise values of a steady state and its derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyJet {
    pub u: f64,
    pub u_x: f64,
    pub u_xx: f64,
    pub u_xxx: f64,
    pub v: f64,
    pub v_x: f64,
    pub v_xx: f64,
}

impl SteadyJet {
    /// Jet of a constant pair `(u, v) = (k, 0)`, which solves the steady
    /// system trivially.
    pub fn constant(k: f64) -> Self {
        SteadyJet { u: k, u_x: 0.0, u_xx: 0.0, u_xxx: 0.0, v: 0.0, v_x: 0.0, v_xx: 0.0 }
    }
}

/// Sign classification of the inferred degradation rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaClass {
    Zero,
    Negative,
    Positive,
}

impl SigmaClass {
    /// Class a family must produce: power pairs with a vanishing rate, the
    /// trigonometric families with a negative one, the hyperbolic with a
    /// positive one.
    pub fn expected(family: SteadyStateFamily) -> Self {
        match family {
            SteadyStateFamily::Power => SigmaClass::Zero,
            SteadyStateFamily::SecTan | SteadyStateFamily::CscCot => SigmaClass::Negative,
            SteadyStateFamily::CschCoth => SigmaClass::Positive,
        }
    }

    fn of(sigma: f64, scale: f64) -> Self {
        if sigma.abs() <= 1e-9 * scale {
            SigmaClass::Zero
        } else if sigma < 0.0 {
            SigmaClass::Negative
        } else {
            SigmaClass::Positive
        }
    }
}

/// Concentration-profile descriptor recovered from a steady state: the
/// anchor value `c(0)` and the degradation rate `sigma` the untransformed
/// system must carry for the state to solve it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CbarProfile {
    pub family: SteadyStateFamily,
    pub c0: f64,
    pub sigma: f64,
}

impl CbarProfile {
    pub fn sigma_class(&self) -> SigmaClass {
        SigmaClass::of(self.sigma, 1.0)
    }
}

impl SteadyState {
    /// Build a validated steady state on the positive branch: the slope is
    /// set to `+kappa(params)`, the offset must be positive, and for the
    /// trigonometric families the whole phase window `[b, a + b]` must fit
    /// inside `(0, pi/2)`.
    pub fn new(
        family: SteadyStateFamily,
        b: f64,
        params: ModelParams,
    ) -> Result<Self, ModelError> {
        params.validate()?;
        let a = kappa(&params)?;
        if b <= 0.0 || !b.is_finite() {
            return Err(ModelError::Domain(format!("shift offset b must be positive, got {b}")));
        }
        if family.needs_phase_window() && a + b >= std::f64::consts::FRAC_PI_2 {
            return Err(ModelError::Domain(format!(
                "phase window violated: a + b = {} >= pi/2",
                a + b
            )));
        }
        Ok(SteadyState { family, a, b, params })
    }

    /// Assemble a state without validation. Intended for perturbation
    /// studies (wrong slope, degenerate parameters); evaluation still
    /// enforces pointwise domain restrictions.
    pub fn from_parts(
        family: SteadyStateFamily,
        a: f64,
        b: f64,
        params: ModelParams,
    ) -> Self {
        SteadyState { family, a, b, params }
    }

    /// Phase argument `s = a*x + b`.
    #[inline]
    pub fn phase(&self, x: f64) -> f64 {
        self.a * x + self.b
    }

    fn checked_phase(&self, x: f64) -> Result<f64, ModelError> {
        let s = self.phase(x);
        let ok = match self.family {
            SteadyStateFamily::Power | SteadyStateFamily::CschCoth => s > 0.0,
            SteadyStateFamily::SecTan | SteadyStateFamily::CscCot => {
                s > 0.0 && s < std::f64::consts::FRAC_PI_2
            }
        };
        if ok {
            Ok(s)
        } else {
            Err(ModelError::Domain(format!(
                "phase {s} at x = {x} outside the {} family's domain",
                self.family
            )))
        }
    }

    /// Steady pair `(ubar, vbar)` at `x`.
    pub fn eval(&self, x: f64) -> Result<(f64, f64), ModelError> {
        let j = self.jet(x)?;
        Ok((j.u, j.v))
    }

    /// First and second derivative of `ubar` plus first derivative of
    /// `vbar`, all in closed form.
    pub fn derivs(&self, x: f64) -> Result<(f64, f64, f64), ModelError> {
        let j = self.jet(x)?;
        Ok((j.u_x, j.u_xx, j.v_x))
    }

    /// Full derivative jet at `x`.
    pub fn jet(&self, x: f64) -> Result<SteadyJet, ModelError> {
        let s = self.checked_phase(x)?;
        let a = self.a;
        let a2 = a * a;
        let a3 = a2 * a;
        // amplitude of the v-component, 2 a d / chi
        let g = 2.0 * a * self.params.d / self.params.chi;
        let jet = match self.family {
            SteadyStateFamily::Power => {
                let inv = 1.0 / s;
                let u = inv * inv;
                SteadyJet {
                    u,
                    u_x: -2.0 * a * u * inv,
                    u_xx: 6.0 * a2 * u * u,
                    u_xxx: -24.0 * a3 * u * u * inv,
                    v: -g * inv,
                    v_x: g * a * inv * inv,
                    v_xx: -2.0 * g * a2 * inv * inv * inv,
                }
            }
            SteadyStateFamily::SecTan => {
                let sec2 = special::sec(s) * special::sec(s);
                let tan = s.tan();
                SteadyJet {
                    u: sec2,
                    u_x: 2.0 * a * sec2 * tan,
                    u_xx: 2.0 * a2 * sec2 * (2.0 * tan * tan + sec2),
                    u_xxx: 8.0 * a3 * sec2 * tan * (tan * tan + 2.0 * sec2),
                    v: g * tan,
                    v_x: g * a * sec2,
                    v_xx: 2.0 * g * a2 * sec2 * tan,
                }
            }
            SteadyStateFamily::CscCot => {
                let csc2 = special::csc(s) * special::csc(s);
                let cot = special::cot(s);
                SteadyJet {
                    u: csc2,
                    u_x: -2.0 * a * csc2 * cot,
                    u_xx: 2.0 * a2 * csc2 * (2.0 * cot * cot + csc2),
                    u_xxx: -8.0 * a3 * csc2 * cot * (cot * cot + 2.0 * csc2),
                    v: -g * cot,
                    v_x: g * a * csc2,
                    v_xx: -2.0 * g * a2 * csc2 * cot,
                }
            }
            SteadyStateFamily::CschCoth => {
                let csch2 = special::csch(s) * special::csch(s);
                let coth = special::coth(s);
                SteadyJet {
                    u: csch2,
                    u_x: -2.0 * a * csch2 * coth,
                    u_xx: 2.0 * a2 * csch2 * (2.0 * coth * coth + csch2),
                    u_xxx: -8.0 * a3 * csch2 * coth * (coth * coth + 2.0 * csch2),
                    v: -g * coth,
                    v_x: g * a * csch2,
                    v_xx: -2.0 * g * a2 * csch2 * coth,
                }
            }
        };
        Ok(jet)
    }

    /// Defect of the gradient relation `vbar = (d/chi) ubar_x / ubar`;
    /// identically zero (to rounding) for every valid state.
    pub fn ansatz_residual(&self, x: f64) -> Result<f64, ModelError> {
        let j = self.jet(x)?;
        Ok(j.v - self.params.d / self.params.chi * j.u_x / j.u)
    }

    /// Left-hand side of the third-order equation satisfied by `ubar`:
    ///
    /// ```text
    /// eps d chi u''' u^2 - eps d (3 chi - 2 d) u'' u' u
    ///   + 2 eps d (chi - d) u'^3 - mu chi^2 u' u^3
    /// ```
    pub fn ode_residual(&self, x: f64) -> Result<f64, ModelError> {
        let j = self.jet(x)?;
        Ok(ode_residual_from_jet(&self.params, &j))
    }

    /// Residual pair of the steady system itself:
    /// `r1 = d u_xx - chi (u v)_x`, `r2 = eps v_xx + 2 eps v v_x - mu u_x`.
    pub fn steady_system_residual(&self, x: f64) -> Result<(f64, f64), ModelError> {
        let j = self.jet(x)?;
        Ok(steady_residual_from_jet(&self.params, &j))
    }

    /// Evaluate the pointwise degradation rate
    /// `sigma(x) = eps (vbar_x + vbar^2) - mu ubar` on `sample_count`
    /// uniform points, assert its constancy, and return the mean.
    ///
    /// Non-constancy signals a state whose slope is not `kappa`.
    pub fn infer_sigma(&self, sample_count: usize) -> Result<CbarProfile, ModelError> {
        if sample_count < 3 {
            return Err(ModelError::InsufficientSamples(format!(
                "infer_sigma needs at least 3 samples, got {sample_count}"
            )));
        }
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut sum = 0.0;
        let mut mu_scale = 0.0;
        let n = sample_count - 1;
        for i in 0..sample_count {
            let x = i as f64 / n as f64;
            let j = self.jet(x)?;
            let sigma = self.params.eps * (j.v_x + j.v * j.v) - self.params.mu * j.u;
            min = min.min(sigma);
            max = max.max(sigma);
            sum += sigma;
            mu_scale += (self.params.mu * j.u).abs();
        }
        let mean = sum / sample_count as f64;
        let spread = max - min;
        let limit = 1e-8 * (1.0 + mean.abs());
        if spread >= limit {
            return Err(ModelError::SigmaNotConstant { spread, limit });
        }
        let class_scale = (mu_scale / sample_count as f64).max(1.0);
        if SigmaClass::of(mean, class_scale) != SigmaClass::expected(self.family) {
            return Err(ModelError::Domain(format!(
                "sigma = {mean} has the wrong sign for the {} family",
                self.family
            )));
        }
        Ok(CbarProfile { family: self.family, c0: 1.0, sigma: mean })
    }

    /// Concentration profile `cbar(x) = c0 * exp(int_0^x vbar)` via the
    /// closed-form antiderivative of `vbar` for this family.
    pub fn reconstruct_cbar(&self, c0: f64, x: f64) -> Result<f64, ModelError> {
        if c0 <= 0.0 || !c0.is_finite() {
            return Err(ModelError::Domain(format!("anchor c0 must be positive, got {c0}")));
        }
        let s1 = self.checked_phase(x)?;
        let s0 = self.b;
        let p = 2.0 * self.params.d / self.params.chi;
        let ratio = match self.family {
            SteadyStateFamily::Power => s0 / s1,
            SteadyStateFamily::SecTan => s0.cos() / s1.cos(),
            SteadyStateFamily::CscCot => s0.sin() / s1.sin(),
            SteadyStateFamily::CschCoth => s0.sinh() / s1.sinh(),
        };
        Ok(c0 * ratio.powf(p))
    }
}

/// `r1 = d u_xx - chi (u v)_x` and `r2 = eps v_xx + 2 eps v v_x - mu u_x`
/// for an arbitrary derivative jet. Constants with `v = 0` give `(0, 0)`.
pub fn steady_residual_from_jet(params: &ModelParams, j: &SteadyJet) -> (f64, f64) {
    let r1 = params.d * j.u_xx - params.chi * (j.u_x * j.v + j.u * j.v_x);
    let r2 = params.eps * j.v_xx + 2.0 * params.eps * j.v * j.v_x - params.mu * j.u_x;
    (r1, r2)
}

/// Third-order residual evaluated on an arbitrary jet.
pub fn ode_residual_from_jet(params: &ModelParams, j: &SteadyJet) -> f64 {
    let ModelParams { d, chi, eps, mu } = *params;
    eps * d * chi * j.u_xxx * j.u * j.u
        - eps * d * (3.0 * chi - 2.0 * d) * j.u_xx * j.u_x * j.u
        + 2.0 * eps * d * (chi - d) * j.u_x * j.u_x * j.u_x
        - mu * chi * chi * j.u_x * j.u * j.u * j.u
}

/// Magnitude of the largest additive term in the third-order residual;
/// residual tolerances are taken relative to this (the secant and cosecant
/// members blow up toward the window edge, so absolute tolerances carry no
/// information there).
pub fn ode_residual_scale(params: &ModelParams, j: &SteadyJet) -> f64 {
    let ModelParams { d, chi, eps, mu } = *params;
    let t1 = (eps * d * chi * j.u_xxx * j.u * j.u).abs();
    let t2 = (eps * d * (3.0 * chi - 2.0 * d) * j.u_xx * j.u_x * j.u).abs();
    let t3 = (2.0 * eps * d * (chi - d) * j.u_x * j.u_x * j.u_x).abs();
    let t4 = (mu * chi * chi * j.u_x * j.u * j.u * j.u).abs();
    t1.max(t2).max(t3).max(t4).max(1.0)
}

/// Largest-term magnitudes for the two components of the steady system.
pub fn steady_residual_scale(params: &ModelParams, j: &SteadyJet) -> (f64, f64) {
    let s1 = (params.d * j.u_xx)
        .abs()
        .max((params.chi * j.u_x * j.v).abs())
        .max((params.chi * j.u * j.v_x).abs())
        .max(1.0);
    let s2 = (params.eps * j.v_xx)
        .abs()
        .max((2.0 * params.eps * j.v * j.v_x).abs())
        .max((params.mu * j.u_x).abs())
        .max(1.0);
    (s1, s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    fn params() -> ModelParams {
        ModelParams::new(2.0, 1.0, 0.5, 1.0).unwrap()
    }

    fn kap() -> f64 {
        1.0 / 10.0_f64.sqrt()
    }

    /// The four benchmark members anchored at u(0) = 4.
    fn benchmark_states() -> Vec<SteadyState> {
        let p = params();
        vec![
            SteadyState::new(SteadyStateFamily::Power, 0.5, p).unwrap(),
            SteadyState::new(SteadyStateFamily::SecTan, FRAC_PI_3, p).unwrap(),
            SteadyState::new(SteadyStateFamily::CscCot, FRAC_PI_6, p).unwrap(),
            SteadyState::new(
                SteadyStateFamily::CschCoth,
                ((1.0 + 5.0_f64.sqrt()) / 2.0).ln(),
                p,
            )
            .unwrap(),
        ]
    }

    #[test]
    fn power_matches_boundary_table() {
        let ss = SteadyState::new(SteadyStateFamily::Power, 0.5, params()).unwrap();
        let (u0, v0) = ss.eval(0.0).unwrap();
        assert_relative_eq!(u0, 4.0, max_relative = 1e-14);
        assert_relative_eq!(v0, -8.0 / 10.0_f64.sqrt(), max_relative = 1e-14);
        let (u1, v1) = ss.eval(1.0).unwrap();
        let root10 = 10.0_f64.sqrt();
        assert_relative_eq!(u1, 40.0 / ((root10 + 2.0) * (root10 + 2.0)), max_relative = 1e-14);
        assert_relative_eq!(v1, -8.0 / (root10 + 2.0), max_relative = 1e-14);
    }

    #[test]
    fn sec_matches_boundary_table() {
        let ss = SteadyState::new(SteadyStateFamily::SecTan, FRAC_PI_3, params()).unwrap();
        let (u0, v0) = ss.eval(0.0).unwrap();
        assert_relative_eq!(u0, 4.0, max_relative = 1e-14);
        assert_relative_eq!(v0, 4.0 * 3.0_f64.sqrt() / 10.0_f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn power_first_derivative_value() {
        // u_x(0) = -2 kappa b^-3 = -16/sqrt(10) for b = 1/2
        let ss = SteadyState::new(SteadyStateFamily::Power, 0.5, params()).unwrap();
        let (u_x, _, _) = ss.derivs(0.0).unwrap();
        assert_relative_eq!(u_x, -16.0 / 10.0_f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-6;
        for ss in benchmark_states() {
            for i in 1..=9 {
                let x = i as f64 / 10.0;
                let j = ss.jet(x).unwrap();
                let at = |y: f64| ss.jet(y).unwrap();
                // first derivatives against differences of the values
                let u_x_fd = (at(x + h).u - at(x - h).u) / (2.0 * h);
                let v_x_fd = (at(x + h).v - at(x - h).v) / (2.0 * h);
                assert!((j.u_x - u_x_fd).abs() < 1e-6 * (1.0 + j.u_x.abs()), "{}", ss.family);
                assert!((j.v_x - v_x_fd).abs() < 1e-6 * (1.0 + j.v_x.abs()), "{}", ss.family);
                // higher derivatives against differences one level down
                let u_xx_fd = (at(x + h).u_x - at(x - h).u_x) / (2.0 * h);
                let u_xxx_fd = (at(x + h).u_xx - at(x - h).u_xx) / (2.0 * h);
                let v_xx_fd = (at(x + h).v_x - at(x - h).v_x) / (2.0 * h);
                assert!((j.u_xx - u_xx_fd).abs() < 1e-5 * (1.0 + j.u_xx.abs()), "{}", ss.family);
                assert!((j.u_xxx - u_xxx_fd).abs() < 1e-5 * (1.0 + j.u_xxx.abs()), "{}", ss.family);
                assert!((j.v_xx - v_xx_fd).abs() < 1e-5 * (1.0 + j.v_xx.abs()), "{}", ss.family);
            }
        }
    }

    #[test]
    fn monotonicity_table() {
        for ss in benchmark_states() {
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                let j = ss.jet(x).unwrap();
                if ss.family.u_is_increasing() {
                    assert!(j.u_x > 0.0, "{} u_x at {x}", ss.family);
                } else {
                    assert!(j.u_x < 0.0, "{} u_x at {x}", ss.family);
                }
                assert!(j.v_x > 0.0, "{} v_x at {x}", ss.family);
            }
        }
    }

    #[test]
    fn ansatz_residual_vanishes() {
        for ss in benchmark_states() {
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                let r = ss.ansatz_residual(x).unwrap();
                assert!(r.abs() < 1e-12, "{} at {x}: {r}", ss.family);
            }
        }
    }

    #[test]
    fn ansatz_detects_mismatched_offset() {
        // vbar built with b + 0.1 against ubar with b: the gradient relation
        // no longer closes.
        let ss = SteadyState::new(SteadyStateFamily::Power, 0.5, params()).unwrap();
        let x = 0.5;
        let j = ss.jet(x).unwrap();
        let g = 2.0 * ss.a * ss.params.d / ss.params.chi;
        let v_wrong = -g / (ss.a * x + ss.b + 0.1);
        let residual = v_wrong - ss.params.d / ss.params.chi * j.u_x / j.u;
        assert!(residual.abs() > 1e-2);
    }

    #[test]
    fn ode_residual_vanishes_on_all_families() {
        for ss in benchmark_states() {
            for i in 0..5 {
                let x = i as f64 * 0.25;
                let j = ss.jet(x).unwrap();
                let r = ss.ode_residual(x).unwrap();
                let scale = ode_residual_scale(&ss.params, &j);
                assert!(r.abs() < 1e-9 * scale, "{} at {x}: {r} vs scale {scale}", ss.family);
            }
        }
    }

    #[test]
    fn ode_residual_detects_wrong_slope() {
        // For the power family the residual collapses to
        //   4 eps d (2d + chi) a (kappa^2 - a^2) s^-9,
        // which is the independent check for a perturbed slope.
        let p = params();
        let a = 1.1 * kap();
        let ss = SteadyState::from_parts(SteadyStateFamily::Power, a, 0.5, p);
        for x in [0.0, 0.3, 0.9] {
            let s = ss.phase(x);
            let expected =
                4.0 * p.eps * p.d * (2.0 * p.d + p.chi) * a * (kap() * kap() - a * a) / s.powi(9);
            let r = ss.ode_residual(x).unwrap();
            assert_relative_eq!(r, expected, max_relative = 1e-10);
            assert!(r.abs() > 1e-3);
        }
    }

    #[test]
    fn ode_residual_nonzero_without_source() {
        // mu = 0 leaves no kappa to balance the cubic terms.
        let p = ModelParams { d: 1.0, chi: 1.0, eps: 1.0, mu: 0.0 };
        let ss = SteadyState::from_parts(SteadyStateFamily::Power, 0.4, 0.5, p);
        assert!(ss.ode_residual(0.5).unwrap().abs() > 1e-3);
    }

    #[test]
    fn steady_system_residual_vanishes() {
        for ss in benchmark_states() {
            for i in 0..9 {
                let x = i as f64 / 8.0;
                let j = ss.jet(x).unwrap();
                let (r1, r2) = ss.steady_system_residual(x).unwrap();
                let (s1, s2) = steady_residual_scale(&ss.params, &j);
                assert!(r1.abs() < 1e-9 * s1, "{} r1 at {x}", ss.family);
                assert!(r2.abs() < 1e-9 * s2, "{} r2 at {x}", ss.family);
            }
        }
    }

    #[test]
    fn constants_solve_the_steady_system() {
        let (r1, r2) = steady_residual_from_jet(&params(), &SteadyJet::constant(3.7));
        assert_eq!((r1, r2), (0.0, 0.0));
    }

    #[test]
    fn steady_residual_grows_linearly_in_offset_mismatch() {
        // Perturb b only inside the v-component and sweep the perturbation.
        let ss = SteadyState::new(SteadyStateFamily::Power, 0.5, params()).unwrap();
        let x = 0.5;
        let base = ss.jet(x).unwrap();
        let g = 2.0 * ss.a * ss.params.d / ss.params.chi;
        let magnitude = |delta: f64| {
            let s = ss.a * x + ss.b + delta;
            let j = SteadyJet {
                v: -g / s,
                v_x: g * ss.a / (s * s),
                v_xx: -2.0 * g * ss.a * ss.a / (s * s * s),
                ..base
            };
            let (r1, r2) = steady_residual_from_jet(&ss.params, &j);
            r1.abs().max(r2.abs())
        };
        let m1 = magnitude(1e-4);
        let m2 = magnitude(1e-3);
        let m3 = magnitude(1e-2);
        assert!(m2 / m1 > 8.0 && m2 / m1 < 12.0, "ratio {}", m2 / m1);
        assert!(m3 / m2 > 8.0 && m3 / m2 < 12.0, "ratio {}", m3 / m2);
    }

    #[test]
    fn sigma_classification() {
        let expect = [0.0, -0.8, -0.8, 0.8];
        for (ss, want) in benchmark_states().iter().zip(expect) {
            let profile = ss.infer_sigma(101).unwrap();
            if want == 0.0 {
                assert!(profile.sigma.abs() < 1e-10, "{}: {}", ss.family, profile.sigma);
                assert_eq!(profile.sigma_class(), SigmaClass::Zero);
            } else {
                assert_abs_diff_eq!(profile.sigma, want, epsilon = 1e-8);
            }
            assert_eq!(profile.c0, 1.0);
        }
    }

    #[test]
    fn sigma_rejects_wrong_slope() {
        let ss = SteadyState::from_parts(SteadyStateFamily::Power, 1.1 * kap(), 0.5, params());
        assert!(matches!(ss.infer_sigma(101), Err(ModelError::SigmaNotConstant { .. })));
    }

    #[test]
    fn sigma_needs_three_samples() {
        let ss = SteadyState::new(SteadyStateFamily::Power, 0.5, params()).unwrap();
        assert!(matches!(ss.infer_sigma(2), Err(ModelError::InsufficientSamples(_))));
    }

    #[test]
    fn cbar_anchor_and_power_value() {
        for ss in benchmark_states() {
            assert_eq!(ss.reconstruct_cbar(2.5, 0.0).unwrap(), 2.5);
        }
        let ss = SteadyState::new(SteadyStateFamily::Power, 0.5, params()).unwrap();
        let expected = (0.5 / (0.5 + kap())).powi(4);
        assert_relative_eq!(ss.reconstruct_cbar(1.0, 1.0).unwrap(), expected, max_relative = 1e-13);
    }

    #[test]
    fn cbar_log_derivative_recovers_v() {
        let h = 1e-6;
        for ss in benchmark_states() {
            let x = 0.5;
            let lnc = |y: f64| ss.reconstruct_cbar(1.0, y).unwrap().ln();
            let fd = (lnc(x + h) - lnc(x - h)) / (2.0 * h);
            let (_, v) = ss.eval(x).unwrap();
            assert_abs_diff_eq!(fd, v, epsilon = 1e-8);
        }
    }

    /// Adaptive Simpson quadrature, used as the independent oracle for the
    /// closed-form antiderivatives.
    fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64) {
            let m = 0.5 * (a + b);
            let fm = f(m);
            ((b - a) / 6.0 * (fa + 4.0 * fm + fb), fm)
        }
        #[allow(clippy::too_many_arguments)]
        fn recurse(
            f: &impl Fn(f64) -> f64,
            a: f64,
            fa: f64,
            b: f64,
            fb: f64,
            whole: f64,
            fm: f64,
            tol: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let (left, flm) = simpson(f, a, fa, m, fm);
            let (right, frm) = simpson(f, m, fm, b, fb);
            let delta = left + right - whole;
            if depth == 0 || delta.abs() <= 15.0 * tol {
                left + right + delta / 15.0
            } else {
                recurse(f, a, fa, m, fm, left, flm, tol / 2.0, depth - 1)
                    + recurse(f, m, fm, b, fb, right, frm, tol / 2.0, depth - 1)
            }
        }
        let fa = f(a);
        let fb = f(b);
        let (whole, fm) = simpson(f, a, fa, b, fb);
        recurse(f, a, fa, b, fb, whole, fm, tol, 40)
    }

    #[test]
    fn cbar_matches_quadrature_of_v() {
        for ss in benchmark_states() {
            for x in [0.25, 0.6, 1.0] {
                let integral =
                    adaptive_simpson(&|y| ss.eval(y).unwrap().1, 0.0, x, 1e-13);
                let closed = ss.reconstruct_cbar(1.0, x).unwrap();
                assert_relative_eq!(closed, integral.exp(), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn domain_violations() {
        let p = params();
        // phase window: kappa + b must stay below pi/2 for the trig pairs
        assert!(SteadyState::new(SteadyStateFamily::SecTan, 1.5, p).is_err());
        // negative offset rejected
        assert!(SteadyState::new(SteadyStateFamily::Power, -0.5, p).is_err());
        // evaluation outside the window errors instead of wrapping
        let ss = SteadyState::new(SteadyStateFamily::CscCot, FRAC_PI_6, p).unwrap();
        assert!(ss.eval(5.0).is_err());
        assert!(ss.eval(-2.0).is_err());
        let pw = SteadyState::new(SteadyStateFamily::Power, 0.5, p).unwrap();
        assert!(pw.eval(-2.0).is_err());
        assert!(pw.reconstruct_cbar(0.0, 0.5).is_err());
    }
}
