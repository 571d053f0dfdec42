//! Admissibility of boundary data per steady-state family.
//!
//! Each family ties the four Dirichlet values `(alpha1, alpha2, beta1,
//! beta2)` to the shift coefficients through a chain of relations: the
//! offset `b` comes from the left cell-density value, the right value must
//! sit one `kappa` further along the inverse of the profile function, and
//! the two gradient values must satisfy the analogous inverse relation.
//! [`derive_boundary`] walks the chain forward from `alpha1`;
//! [`validate_state`] checks given boundary data against every link, in the
//! inverted form the relations are stated in (not a rearrangement), with a
//! relative tolerance of 1e-9.
//!
//! [`stability_gate`] evaluates the per-family sufficient condition for the
//! non-positivity of the stability quantity `L(x)` (see
//! [`crate::diagnostics::script_l`]), expressed through the threshold
//! `lambda = (4d - 2chi) / (2d - 3chi)`.

use crate::error::ModelError;
use crate::model::{kappa, ModelParams};
use crate::special;
use crate::steady::SteadyStateFamily;
use std::f64::consts::FRAC_PI_2;

/// Relative tolerance for the chain-relation checks.
const CHAIN_RTOL: f64 = 1e-9;

/// Dirichlet data for the transformed system: `u(0) = alpha1`,
/// `u(1) = alpha2`, `v(0) = beta1`, `v(1) = beta2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl BoundaryData {
    /// Construct validated boundary data. The cell density must be positive
    /// on both ends and genuinely non-constant (`alpha1 != alpha2`).
    pub fn new(alpha1: f64, alpha2: f64, beta1: f64, beta2: f64) -> Result<Self, ModelError> {
        let b = Self { alpha1, alpha2, beta1, beta2 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let finite = self.alpha1.is_finite()
            && self.alpha2.is_finite()
            && self.beta1.is_finite()
            && self.beta2.is_finite();
        if !finite {
            return Err(ModelError::InvalidConfig("non-finite boundary value".into()));
        }
        if self.alpha1 <= 0.0 || self.alpha2 <= 0.0 {
            return Err(ModelError::InvalidConfig(format!(
                "boundary cell density must be positive: alpha1 = {}, alpha2 = {}",
                self.alpha1, self.alpha2
            )));
        }
        if self.alpha1 == self.alpha2 {
            return Err(ModelError::InvalidConfig(format!(
                "constant boundary density alpha1 = alpha2 = {} is excluded",
                self.alpha1
            )));
        }
        Ok(())
    }
}

/// A single named constraint failure.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `alpha1` (or `alpha2`) is not a positive real.
    NonpositiveAlpha { which: &'static str, value: f64 },
    /// The secant/cosecant families require `alpha >= 1`.
    AlphaBelowOne { which: &'static str, value: f64 },
    /// Derived offset is not positive (left density exactly 1 for the
    /// secant family).
    NonpositiveOffset { b: f64 },
    /// `kappa + b` reaches `pi/2`, leaving the admissible phase window.
    PhaseWindow { kappa_plus_b: f64 },
    /// A chain relation does not close: `lhs` should equal `rhs`.
    ChainMismatch { relation: &'static str, lhs: f64, rhs: f64 },
    /// A chain relation cannot even be evaluated for these values.
    ChainUndefined { relation: &'static str, value: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonpositiveAlpha { which, value } => {
                write!(f, "{which} must be positive, got {value}")
            }
            Violation::AlphaBelowOne { which, value } => {
                write!(f, "{which} >= 1 required, got {value}")
            }
            Violation::NonpositiveOffset { b } => {
                write!(f, "derived offset b = {b} is not positive")
            }
            Violation::PhaseWindow { kappa_plus_b } => {
                write!(f, "kappa + b = {kappa_plus_b} >= pi/2 leaves the phase window")
            }
            Violation::ChainMismatch { relation, lhs, rhs } => {
                write!(f, "{relation}: {lhs} != {rhs} (|diff| = {:e})", (lhs - rhs).abs())
            }
            Violation::ChainUndefined { relation, value } => {
                write!(f, "{relation} undefined for value {value}")
            }
        }
    }
}

/// Outcome of deriving or validating boundary data for one family.
///
/// `violations` is empty exactly when every constraint of the family holds;
/// `b` and `boundary` are present whenever they could be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub family: SteadyStateFamily,
    pub b: Option<f64>,
    pub boundary: Option<BoundaryData>,
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verdict of the per-family stability condition on the boundary values.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityGate {
    /// Threshold `(4d - 2chi) / (2d - 3chi)`; `None` when `2d = 3chi`.
    pub lambda: Option<f64>,
    pub satisfied: bool,
    /// The row/branch of the condition table that produced the verdict.
    pub condition_used: &'static str,
}

fn rel_close(lhs: f64, rhs: f64) -> bool {
    (lhs - rhs).abs() <= CHAIN_RTOL * lhs.abs().max(rhs.abs()).max(1.0)
}

/// Offset from the left density value: the inverse of the family's profile
/// function at `sqrt(alpha1)`.
fn offset_from_alpha1(family: SteadyStateFamily, alpha1: f64) -> Result<f64, ModelError> {
    let root = alpha1.sqrt();
    match family {
        SteadyStateFamily::Power => Ok(1.0 / root),
        SteadyStateFamily::SecTan => special::arcsec(root),
        SteadyStateFamily::CscCot => special::arccsc(root),
        SteadyStateFamily::CschCoth => special::arccsch(root),
    }
}

/// `beta1` from the offset, per the family's gradient formula at `x = 0`.
fn beta1_from_offset(family: SteadyStateFamily, params: &ModelParams, k: f64, b: f64) -> f64 {
    let g = 2.0 * k * params.d / params.chi;
    match family {
        SteadyStateFamily::Power => -g / b,
        SteadyStateFamily::SecTan => g * b.tan(),
        SteadyStateFamily::CscCot => -g * special::cot(b),
        SteadyStateFamily::CschCoth => -g * special::coth(b),
    }
}

/// Derive the full boundary quadruple of `family` from the left density
/// value alone. Constraint failures are reported as violations, never as
/// errors; `Err` is reserved for an invalid parameter set.
pub fn derive_boundary(
    family: SteadyStateFamily,
    params: &ModelParams,
    alpha1: f64,
) -> Result<AdmissibilityReport, ModelError> {
    params.validate()?;
    let k = kappa(params)?;
    let mut violations = Vec::new();

    if alpha1 <= 0.0 || !alpha1.is_finite() {
        violations.push(Violation::NonpositiveAlpha { which: "alpha1", value: alpha1 });
        return Ok(AdmissibilityReport { family, b: None, boundary: None, violations });
    }
    if family.needs_phase_window() && alpha1 < 1.0 {
        violations.push(Violation::AlphaBelowOne { which: "alpha1", value: alpha1 });
        return Ok(AdmissibilityReport { family, b: None, boundary: None, violations });
    }

    let b = offset_from_alpha1(family, alpha1)?;
    if b <= 0.0 {
        violations.push(Violation::NonpositiveOffset { b });
        return Ok(AdmissibilityReport { family, b: Some(b), boundary: None, violations });
    }
    if family.needs_phase_window() && k + b >= FRAC_PI_2 {
        violations.push(Violation::PhaseWindow { kappa_plus_b: k + b });
        return Ok(AdmissibilityReport { family, b: Some(b), boundary: None, violations });
    }

    let s1 = b + k;
    let g = 2.0 * k * params.d / params.chi;
    let (alpha2, beta2) = match family {
        SteadyStateFamily::Power => (1.0 / (s1 * s1), -g / s1),
        SteadyStateFamily::SecTan => {
            let sec = special::sec(s1);
            (sec * sec, g * s1.tan())
        }
        SteadyStateFamily::CscCot => {
            let csc = special::csc(s1);
            (csc * csc, -g * special::cot(s1))
        }
        SteadyStateFamily::CschCoth => {
            let csch = special::csch(s1);
            (csch * csch, -g * special::coth(s1))
        }
    };
    let beta1 = beta1_from_offset(family, params, k, b);
    let boundary = BoundaryData { alpha1, alpha2, beta1, beta2 };

    Ok(AdmissibilityReport { family, b: Some(b), boundary: Some(boundary), violations })
}

/// Check given boundary data against every constraint of `family`:
/// positivity/range of the density values, the phase window, and the three
/// chain relations (right density, left gradient, gradient chain), each in
/// its stated inverse form with a relative tolerance of 1e-9.
///
/// All failures are report entries; the function itself only fails on an
/// invalid parameter set.
pub fn validate_state(
    family: SteadyStateFamily,
    params: &ModelParams,
    boundary: &BoundaryData,
) -> Result<AdmissibilityReport, ModelError> {
    params.validate()?;
    let k = kappa(params)?;
    let mut violations = Vec::new();

    for (which, value) in [("alpha1", boundary.alpha1), ("alpha2", boundary.alpha2)] {
        if value <= 0.0 || !value.is_finite() {
            violations.push(Violation::NonpositiveAlpha { which, value });
        } else if family.needs_phase_window() && value < 1.0 {
            violations.push(Violation::AlphaBelowOne { which, value });
        }
    }
    let alpha1_usable = boundary.alpha1 > 0.0
        && boundary.alpha1.is_finite()
        && (!family.needs_phase_window() || boundary.alpha1 >= 1.0);
    if !alpha1_usable {
        return Ok(AdmissibilityReport {
            family,
            b: None,
            boundary: Some(*boundary),
            violations,
        });
    }

    let b = offset_from_alpha1(family, boundary.alpha1)?;
    if b <= 0.0 {
        violations.push(Violation::NonpositiveOffset { b });
    }
    if family.needs_phase_window() && k + b >= FRAC_PI_2 {
        violations.push(Violation::PhaseWindow { kappa_plus_b: k + b });
    }

    // right-density chain, inverted form
    let alpha2_ok =
        boundary.alpha2 > 0.0 && (!family.needs_phase_window() || boundary.alpha2 >= 1.0);
    if alpha2_ok {
        let (relation, lhs) = match family {
            SteadyStateFamily::Power => {
                ("alpha2^(-1/2) = kappa + alpha1^(-1/2)", 1.0 / boundary.alpha2.sqrt())
            }
            SteadyStateFamily::SecTan => (
                "arcsec(sqrt(alpha2)) = arcsec(sqrt(alpha1)) + kappa",
                special::arcsec(boundary.alpha2.sqrt())?,
            ),
            SteadyStateFamily::CscCot => (
                "arccsc(sqrt(alpha2)) = arccsc(sqrt(alpha1)) + kappa",
                special::arccsc(boundary.alpha2.sqrt())?,
            ),
            SteadyStateFamily::CschCoth => (
                "arccsch(sqrt(alpha2)) = arccsch(sqrt(alpha1)) + kappa",
                special::arccsch(boundary.alpha2.sqrt())?,
            ),
        };
        let rhs = b + k;
        if !rel_close(lhs, rhs) {
            violations.push(Violation::ChainMismatch { relation, lhs, rhs });
        }
    }

    // left gradient value
    let beta1_expected = beta1_from_offset(family, params, k, b);
    if !rel_close(boundary.beta1, beta1_expected) {
        violations.push(Violation::ChainMismatch {
            relation: "beta1 from offset formula",
            lhs: boundary.beta1,
            rhs: beta1_expected,
        });
    }

    // gradient chain, inverted form
    let g = 2.0 * k * params.d;
    match family {
        SteadyStateFamily::Power => {
            let relation = "1/beta2 = 1/beta1 - chi/(2d)";
            if boundary.beta1 == 0.0 || boundary.beta2 == 0.0 {
                violations.push(Violation::ChainUndefined {
                    relation,
                    value: if boundary.beta2 == 0.0 { boundary.beta2 } else { boundary.beta1 },
                });
            } else {
                let lhs = 1.0 / boundary.beta2;
                let rhs = 1.0 / boundary.beta1 - params.chi / (2.0 * params.d);
                if !rel_close(lhs, rhs) {
                    violations.push(Violation::ChainMismatch { relation, lhs, rhs });
                }
            }
        }
        SteadyStateFamily::SecTan => {
            let relation = "atan(beta2 chi/(2 kappa d)) = atan(beta1 chi/(2 kappa d)) + kappa";
            let lhs = (boundary.beta2 * params.chi / g).atan();
            let rhs = (boundary.beta1 * params.chi / g).atan() + k;
            if !rel_close(lhs, rhs) {
                violations.push(Violation::ChainMismatch { relation, lhs, rhs });
            }
        }
        SteadyStateFamily::CscCot => {
            let relation = "arccot(-beta2 chi/(2 kappa d)) = arccot(-beta1 chi/(2 kappa d)) + kappa";
            let lhs = special::arccot(-boundary.beta2 * params.chi / g);
            let rhs = special::arccot(-boundary.beta1 * params.chi / g) + k;
            if !rel_close(lhs, rhs) {
                violations.push(Violation::ChainMismatch { relation, lhs, rhs });
            }
        }
        SteadyStateFamily::CschCoth => {
            let relation =
                "arccoth(-beta2 chi/(2 kappa d)) = arccoth(-beta1 chi/(2 kappa d)) + kappa";
            let t1 = -boundary.beta1 * params.chi / g;
            let t2 = -boundary.beta2 * params.chi / g;
            if t1.abs() <= 1.0 || t2.abs() <= 1.0 {
                violations.push(Violation::ChainUndefined {
                    relation,
                    value: if t2.abs() <= 1.0 { t2 } else { t1 },
                });
            } else {
                let lhs = special::arccoth(t2)?;
                let rhs = special::arccoth(t1)? + k;
                if !rel_close(lhs, rhs) {
                    violations.push(Violation::ChainMismatch { relation, lhs, rhs });
                }
            }
        }
    }

    Ok(AdmissibilityReport { family, b: Some(b), boundary: Some(*boundary), violations })
}

/// Evaluate the family's sufficient stability condition on the boundary
/// values and report the threshold `lambda` alongside the verdict.
///
/// The equality edge `2d = 3chi` leaves `lambda` undefined; only the rows
/// with a non-strict inequality can pass there.
pub fn stability_gate(
    family: SteadyStateFamily,
    params: &ModelParams,
    boundary: &BoundaryData,
) -> Result<StabilityGate, ModelError> {
    params.validate()?;
    let d = params.d;
    let chi = params.chi;
    let lambda = if 2.0 * d == 3.0 * chi {
        None
    } else {
        Some((4.0 * d - 2.0 * chi) / (2.0 * d - 3.0 * chi))
    };

    let gate = match family {
        SteadyStateFamily::Power => StabilityGate {
            lambda,
            satisfied: 3.0 * chi <= 2.0 * d,
            condition_used: "power: 3 chi <= 2 d",
        },
        SteadyStateFamily::SecTan => {
            let strict = 3.0 * chi < 2.0 * d;
            let satisfied = strict && lambda.is_some_and(|l| boundary.alpha1 >= l);
            StabilityGate {
                lambda,
                satisfied,
                condition_used: "sec: 3 chi < 2 d and alpha1 >= lambda",
            }
        }
        SteadyStateFamily::CscCot => {
            let strict = 3.0 * chi < 2.0 * d;
            let satisfied = strict && lambda.is_some_and(|l| boundary.alpha2 >= l);
            StabilityGate {
                lambda,
                satisfied,
                condition_used: "csc: 3 chi < 2 d and alpha2 >= lambda",
            }
        }
        SteadyStateFamily::CschCoth => {
            if 3.0 * chi <= 2.0 * d {
                StabilityGate { lambda, satisfied: true, condition_used: "csch: 3 chi <= 2 d" }
            } else {
                let in_band = 6.0 * d > 3.0 * chi;
                let satisfied =
                    in_band && lambda.is_some_and(|l| boundary.alpha1 <= -l);
                StabilityGate {
                    lambda,
                    satisfied,
                    condition_used: "csch: 6 d > 3 chi > 2 d and alpha1 <= -lambda",
                }
            }
        }
    };
    Ok(gate)
}

/// The gap `F(alpha) = arccsc(sqrt(alpha)) - arccsch(sqrt(alpha))` whose
/// strict monotonicity on `[1, inf)` makes the cosecant and hyperbolic
/// members mutually exclusive for shared boundary data.
pub fn exclusivity_gap(alpha: f64) -> Result<f64, ModelError> {
    if alpha < 1.0 || alpha.is_nan() {
        return Err(ModelError::Domain(format!("exclusivity gap needs alpha >= 1, got {alpha}")));
    }
    let root = alpha.sqrt();
    Ok(special::arccsc(root)? - special::arccsch(root)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, FRAC_PI_2, PI};

    fn params() -> ModelParams {
        ModelParams::new(2.0, 1.0, 0.5, 1.0).unwrap()
    }

    fn kap() -> f64 {
        1.0 / 10.0_f64.sqrt()
    }

    /// Boundary rows of the benchmark table, derived per family at
    /// alpha1 = 4 (plus the row matching no family).
    fn benchmark_rows() -> Vec<(SteadyStateFamily, BoundaryData)> {
        SteadyStateFamily::ALL
            .iter()
            .map(|&f| {
                let rep = derive_boundary(f, &params(), 4.0).unwrap();
                (f, rep.boundary.unwrap())
            })
            .collect()
    }

    fn undiscovered_row() -> BoundaryData {
        BoundaryData::new(4.0, 21.0, -0.7, 0.7).unwrap()
    }

    #[test]
    fn derive_power_row() {
        let rep = derive_boundary(SteadyStateFamily::Power, &params(), 4.0).unwrap();
        assert!(rep.is_admissible());
        let root10 = 10.0_f64.sqrt();
        assert_relative_eq!(rep.b.unwrap(), 0.5, max_relative = 1e-14);
        let bd = rep.boundary.unwrap();
        assert_relative_eq!(bd.alpha2, 40.0 / ((root10 + 2.0) * (root10 + 2.0)), max_relative = 1e-12);
        assert_relative_eq!(bd.beta1, -8.0 / root10, max_relative = 1e-12);
        assert_relative_eq!(bd.beta2, -8.0 / (root10 + 2.0), max_relative = 1e-12);
    }

    #[test]
    fn derive_csc_row() {
        let rep = derive_boundary(SteadyStateFamily::CscCot, &params(), 4.0).unwrap();
        assert!(rep.is_admissible());
        assert_relative_eq!(rep.b.unwrap(), FRAC_PI_6, max_relative = 1e-14);
        let bd = rep.boundary.unwrap();
        let expect_a2 = special::csc(kap() + FRAC_PI_6).powi(2);
        assert_relative_eq!(bd.alpha2, expect_a2, max_relative = 1e-12);
        assert_relative_eq!(
            bd.beta1,
            -4.0 * 3.0_f64.sqrt() / 10.0_f64.sqrt(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn derive_sec_and_csch_rows() {
        let rep = derive_boundary(SteadyStateFamily::SecTan, &params(), 4.0).unwrap();
        assert!(rep.is_admissible());
        assert_relative_eq!(rep.b.unwrap(), FRAC_PI_3, max_relative = 1e-14);
        let bd = rep.boundary.unwrap();
        assert_relative_eq!(bd.beta1, 4.0 * 3.0_f64.sqrt() / 10.0_f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(bd.beta2, 4.0 / 10.0_f64.sqrt() * (kap() + FRAC_PI_3).tan(), max_relative = 1e-12);

        let rep = derive_boundary(SteadyStateFamily::CschCoth, &params(), 4.0).unwrap();
        assert!(rep.is_admissible());
        let golden = ((1.0 + 5.0_f64.sqrt()) / 2.0).ln();
        assert_relative_eq!(rep.b.unwrap(), golden, max_relative = 1e-14);
        let bd = rep.boundary.unwrap();
        // coth(b) = sqrt(5) at this offset, so beta1 = -4 sqrt(5)/sqrt(10) = -2 sqrt(2)
        assert_relative_eq!(bd.beta1, -2.0 * 2.0_f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(
            bd.beta2,
            -4.0 / 10.0_f64.sqrt() * special::coth(kap() + golden),
            max_relative = 1e-12
        );
    }

    #[test]
    fn derive_rejects_small_alpha_for_trig() {
        let rep = derive_boundary(SteadyStateFamily::SecTan, &params(), 0.5).unwrap();
        assert!(!rep.is_admissible());
        assert!(matches!(rep.violations[0], Violation::AlphaBelowOne { .. }));
        assert!(rep.b.is_none());
    }

    #[test]
    fn derive_rejects_nonpositive_alpha() {
        let rep = derive_boundary(SteadyStateFamily::Power, &params(), -4.0).unwrap();
        assert!(matches!(rep.violations[0], Violation::NonpositiveAlpha { .. }));
    }

    #[test]
    fn derive_rejects_phase_window_overflow() {
        // the secant offset grows with alpha1; at 60 it no longer leaves
        // room for a kappa-wide window below pi/2
        let rep = derive_boundary(SteadyStateFamily::SecTan, &params(), 60.0).unwrap();
        assert!(rep.violations.iter().any(|v| matches!(v, Violation::PhaseWindow { .. })));
    }

    #[test]
    fn validate_accepts_exactly_the_matching_family() {
        let rows = benchmark_rows();
        for (row_family, bd) in &rows {
            for family in SteadyStateFamily::ALL {
                let rep = validate_state(family, &params(), bd).unwrap();
                if family == *row_family {
                    assert!(
                        rep.is_admissible(),
                        "{family} should accept its own row: {:?}",
                        rep.violations
                    );
                } else {
                    assert!(!rep.is_admissible(), "{family} must reject the {row_family} row");
                }
            }
        }
    }

    #[test]
    fn validate_rejects_undiscovered_row_for_all_families() {
        for family in SteadyStateFamily::ALL {
            let rep = validate_state(family, &params(), &undiscovered_row()).unwrap();
            assert!(!rep.is_admissible(), "{family} must reject the undiscovered row");
        }
    }

    #[test]
    fn validate_flags_zero_beta2_as_undefined_chain() {
        let rep = derive_boundary(SteadyStateFamily::Power, &params(), 4.0).unwrap();
        let mut bd = rep.boundary.unwrap();
        bd.beta2 = 0.0;
        let rep = validate_state(SteadyStateFamily::Power, &params(), &bd).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, Violation::ChainUndefined { .. })));
    }

    #[test]
    fn gate_verdicts_on_benchmark_rows() {
        for (family, bd) in benchmark_rows() {
            let gate = stability_gate(family, &params(), &bd).unwrap();
            assert_eq!(gate.lambda, Some(6.0));
            match family {
                SteadyStateFamily::Power | SteadyStateFamily::CschCoth => {
                    assert!(gate.satisfied, "{family} gate should hold");
                }
                SteadyStateFamily::SecTan | SteadyStateFamily::CscCot => {
                    // alpha values ~4 and ~1.8 both sit below lambda = 6
                    assert!(!gate.satisfied, "{family} gate should fail at these values");
                }
            }
        }
    }

    #[test]
    fn gate_equality_edge_has_undefined_lambda() {
        // 2d = 3chi: only the non-strict rows can pass.
        let p = ModelParams::new(3.0, 2.0, 1.0, 1.0).unwrap();
        let bd = derive_boundary(SteadyStateFamily::Power, &p, 4.0).unwrap().boundary.unwrap();
        let gate = stability_gate(SteadyStateFamily::Power, &p, &bd).unwrap();
        assert_eq!(gate.lambda, None);
        assert!(gate.satisfied);
        let gate = stability_gate(SteadyStateFamily::SecTan, &p, &bd).unwrap();
        assert!(!gate.satisfied);
        let gate = stability_gate(SteadyStateFamily::CschCoth, &p, &bd).unwrap();
        assert!(gate.satisfied);
    }

    #[test]
    fn exclusivity_gap_values() {
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(exclusivity_gap(4.0).unwrap(), FRAC_PI_6 - phi.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            exclusivity_gap(1.0).unwrap(),
            FRAC_PI_2 - 1.0_f64.asinh(),
            epsilon = 1e-15
        );
        assert!(exclusivity_gap(4.0).unwrap() > exclusivity_gap(9.0).unwrap());
        assert!(exclusivity_gap(0.5).is_err());
    }

    #[test]
    fn round_trip_over_anchor_values() {
        // Derive then validate must close for every family and a spread of
        // admissible anchors (where the phase window allows them).
        for family in SteadyStateFamily::ALL {
            for alpha1 in [1.5, 2.0, 4.0, 10.0] {
                let rep = derive_boundary(family, &params(), alpha1).unwrap();
                if rep.violations.iter().any(|v| matches!(v, Violation::PhaseWindow { .. })) {
                    continue;
                }
                assert!(rep.is_admissible(), "{family} at alpha1 = {alpha1}");
                let check = validate_state(family, &params(), &rep.boundary.unwrap()).unwrap();
                assert!(
                    check.is_admissible(),
                    "{family} at alpha1 = {alpha1}: {:?}",
                    check.violations
                );
            }
        }
    }

    proptest! {
        #[test]
        fn round_trip_prop(family_idx in 0usize..4, alpha1 in 1.0001f64..40.0) {
            let family = SteadyStateFamily::ALL[family_idx];
            let rep = derive_boundary(family, &params(), alpha1).unwrap();
            prop_assume!(rep.is_admissible());
            let check = validate_state(family, &params(), &rep.boundary.unwrap()).unwrap();
            prop_assert!(check.is_admissible(), "violations: {:?}", check.violations);
        }

        #[test]
        fn exclusivity_gap_strictly_decreasing(a in 1.0f64..100.0, delta in 1e-3f64..50.0) {
            let b = (a + delta).min(100.0);
            prop_assume!(b > a);
            prop_assert!(exclusivity_gap(a).unwrap() > exclusivity_gap(b).unwrap());
        }

        #[test]
        fn derived_rows_never_reach_the_window_edge(alpha1 in 1.0001f64..12.0) {
            // within the admissible anchor range the derived phase stays
            // strictly inside (0, pi/2) for the trig members
            let rep = derive_boundary(SteadyStateFamily::CscCot, &params(), alpha1).unwrap();
            if let Some(b) = rep.b {
                if rep.is_admissible() {
                    prop_assert!(b + kap() < FRAC_PI_2);
                    prop_assert!(b > 0.0 && b < PI);
                }
            }
        }
    }
}
