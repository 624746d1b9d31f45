//! Closed-form phase analysis: which regime a parameter point is in, the
//! exact or asymptotic moments available there, and the limit of the
//! rescaled standard deviation.
//!
//! | regime | condition | `σ(X_t)` grows like |
//! |---|---|---|
//! | ballistic | `c0 = s0s1`, `c1 ≠ 0` | `t` |
//! | diffusive, `c1 = 0` | `c0 = s0s1`, `c1 = 0` | `√t` with constant 1 |
//! | diffusive | `c0 ≠ s0s1` | `√t` |

use std::f64::consts::PI;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::simulate::MomentReport;
use crate::walk::WalkParameters;

/// Default band half-width for the case tests.
pub const DEFAULT_EPS: f64 = 1e-12;

/// Radicands down to this are clamped to zero rather than reported.
const RADICAND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseKind {
    BallisticCaseA,
    DiffusiveCaseAC1Zero,
    DiffusiveGeneric,
}

impl PhaseKind {
    /// Label used in CSV and JSON output.
    pub fn label(self) -> &'static str {
        match self {
            PhaseKind::BallisticCaseA => "ballistic",
            PhaseKind::DiffusiveCaseAC1Zero => "diffusive_c1_zero",
            PhaseKind::DiffusiveGeneric => "diffusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PhaseSubcase {
    ParityS0C1Zero,
    C0Zero,
    Generic,
    NotApplicable,
}

impl PhaseSubcase {
    pub fn label(self) -> &'static str {
        match self {
            PhaseSubcase::ParityS0C1Zero => "parity_s0c1_zero",
            PhaseSubcase::C0Zero => "c0_zero",
            PhaseSubcase::Generic => "generic",
            PhaseSubcase::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhaseClass {
    pub kind: PhaseKind,
    pub subcase: PhaseSubcase,
}

impl fmt::Display for PhaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.kind.label(), self.subcase.label())
    }
}

/// The limit of `σ(X_t)/t^e` with its regime.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseReport {
    pub theta0: f64,
    pub theta1: f64,
    pub p: f64,
    pub class: PhaseClass,
    pub scaling_exponent: f64,
    pub limit_constant: f64,
}

impl PhaseReport {
    /// Diffusive with a zero constant: the walker stays confined.
    pub fn bounded_motion(&self) -> bool {
        self.class.kind == PhaseKind::DiffusiveGeneric && self.limit_constant <= DEFAULT_EPS
    }
}

impl Serialize for PhaseReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PhaseReport", 8)?;
        s.serialize_field("theta0", &self.theta0)?;
        s.serialize_field("theta1", &self.theta1)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("case", self.class.kind.label())?;
        s.serialize_field("subcase", self.class.subcase.label())?;
        s.serialize_field("scaling_exponent", &self.scaling_exponent)?;
        s.serialize_field("limit_constant", &self.limit_constant)?;
        s.serialize_field("bounded_motion", &self.bounded_motion())?;
        s.end()
    }
}

/// Independent of `p`.
pub fn classify(params: &WalkParameters, eps: f64) -> PhaseClass {
    let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
    let (kind, subcase) = if (c0 - s0 * s1).abs() <= eps {
        if c1.abs() > eps {
            (PhaseKind::BallisticCaseA, PhaseSubcase::NotApplicable)
        } else {
            (PhaseKind::DiffusiveCaseAC1Zero, PhaseSubcase::NotApplicable)
        }
    } else if (s0 * c1).abs() <= eps {
        (PhaseKind::DiffusiveGeneric, PhaseSubcase::ParityS0C1Zero)
    } else if c0.abs() <= eps {
        (PhaseKind::DiffusiveGeneric, PhaseSubcase::C0Zero)
    } else {
        (PhaseKind::DiffusiveGeneric, PhaseSubcase::Generic)
    };
    PhaseClass { kind, subcase }
}

fn wrong_case(expected: &'static str, found: PhaseClass) -> Error {
    Error::WrongCase {
        expected,
        found: found.to_string(),
    }
}

fn require(
    params: &WalkParameters,
    expected: &'static str,
    ok: impl Fn(PhaseClass) -> bool,
) -> Result<()> {
    let class = classify(params, DEFAULT_EPS);
    if ok(class) {
        Ok(())
    } else {
        Err(wrong_case(expected, class))
    }
}

/// Exact moments on `c0 = s0s1`.
pub fn moments_case_a(params: &WalkParameters, t: usize) -> Result<MomentReport> {
    require(params, "c0 = s0s1", |c| {
        c.kind != PhaseKind::DiffusiveGeneric
    })?;
    let (s0, c1, s1, p) = (params.s0(), params.c1(), params.s1(), params.p());
    let tf = t as f64;
    let (s0sq, c1sq, s1sq) = (s0 * s0, c1 * c1, s1 * s1);
    let e1 = (2.0 * p - 1.0) * s0sq * c1sq * tf;
    let quad = s0sq * s0sq * c1sq * (1.0 + 3.0 * s1sq);
    let lin = s0sq * (1.0 + s1sq - s0sq * c1sq * (1.0 + 3.0 * s1sq));
    let e2 = quad * tf * tf + lin * tf;
    let var_quad = s0sq * s0sq * c1sq * (1.0 + 3.0 * s1sq - (2.0 * p - 1.0).powi(2) * c1sq);
    let sigma = (var_quad * tf * tf + lin * tf).max(0.0).sqrt();
    Ok(MomentReport { t, e1, e2, sigma })
}

/// Exact moments for `c0 ≠ s0s1`, `s0c1 = 0`; they depend on the parity of `t`.
pub fn moments_case_b(params: &WalkParameters, t: usize) -> Result<MomentReport> {
    require(params, "c0 ≠ s0s1 with s0c1 = 0", |c| {
        c.subcase == PhaseSubcase::ParityS0C1Zero
    })?;
    let (c0, s0, p) = (params.c0(), params.s0(), params.p());
    let tf = t as f64;
    let a = 2.0 * c0 * c0 - 1.0;
    let slope = 4.0 * c0 * c0 * s0 * s0;
    Ok(if t.is_multiple_of(2) {
        MomentReport {
            t,
            e1: 0.0,
            e2: slope * tf,
            sigma: 2.0 * (c0 * s0).abs() * tf.sqrt(),
        }
    } else {
        MomentReport {
            t,
            e1: (2.0 * p - 1.0) * a,
            e2: slope * tf + a * a,
            sigma: 2.0 * (c0 * c0 * s0 * s0 * tf + p * (1.0 - p) * a * a).sqrt(),
        }
    })
}

/// Large-`t` behaviour on `c0 = 0`: `E(X_t) → e1_limit` and
/// `E(X_t²) ≈ e2_slope·t + e2_offset`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseCAsymptotics {
    pub e1_limit: f64,
    pub e2_slope: f64,
    pub e2_offset: f64,
}

impl CaseCAsymptotics {
    /// `σ(X_t) ≈ √(e2_slope·t + e2_offset − e1_limit²)`.
    pub fn sigma(&self, t: usize) -> f64 {
        (self.e2_slope * t as f64 + self.e2_offset - self.e1_limit * self.e1_limit)
            .max(0.0)
            .sqrt()
    }
}

pub fn moments_case_c_asymptotic(params: &WalkParameters) -> Result<CaseCAsymptotics> {
    require(params, "c0 = 0 with c0 ≠ s0s1", |c| {
        c.subcase == PhaseSubcase::C0Zero
    })?;
    let (c1, s1, p) = (params.c1(), params.s1(), params.p());
    let s1sq = s1 * s1;
    let tilt = 1.0 - 2.0 * s1sq;
    Ok(CaseCAsymptotics {
        e1_limit: (2.0 * p - 1.0) * tilt / (2.0 * s1sq),
        e2_slope: c1 * c1 / s1sq,
        e2_offset: -tilt / (2.0 * s1sq * s1sq),
    })
}

/// `lim σ(X_t)/√t` for `c0 ≠ s0s1`.
pub fn diffusion_constant(params: &WalkParameters) -> Result<f64> {
    require(params, "c0 ≠ s0s1", |c| {
        c.kind == PhaseKind::DiffusiveGeneric
    })?;
    diffusion_formula(params)
}

fn diffusion_formula(params: &WalkParameters) -> Result<f64> {
    let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
    let radicand = c1 * c1
        + 4.0 * c0 * c0 * s1 * s1
        + 4.0 * c0 * s0 * s1 * (c1 * c1 - 2.0 * c0 * c0 * s1 * s1);
    if radicand < -RADICAND_SLACK {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(s0.abs() * radicand.max(0.0).sqrt() / (c0 - s0 * s1).abs())
}

/// `lim σ(X_t)/t` for the ballistic regime.
pub fn ballistic_constant(params: &WalkParameters) -> Result<f64> {
    require(params, "c0 = s0s1 with c1 ≠ 0", |c| {
        c.kind == PhaseKind::BallisticCaseA
    })?;
    ballistic_formula(params)
}

fn ballistic_formula(params: &WalkParameters) -> Result<f64> {
    let (s0, c1, s1, p) = (params.s0(), params.c1(), params.s1(), params.p());
    let radicand = 1.0 + 3.0 * s1 * s1 - (2.0 * p - 1.0).powi(2) * c1 * c1;
    if radicand < -RADICAND_SLACK {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(s0 * s0 * c1.abs() * radicand.max(0.0).sqrt())
}

pub fn sigma_limit(params: &WalkParameters) -> Result<PhaseReport> {
    sigma_limit_with(params, DEFAULT_EPS)
}

/// [`sigma_limit`] with the case bands widened to `eps`. Inside a band the
/// case-A constants are evaluated at the actual parameters.
pub fn sigma_limit_with(params: &WalkParameters, eps: f64) -> Result<PhaseReport> {
    let class = classify(params, eps);
    let (scaling_exponent, limit_constant) = match class.kind {
        PhaseKind::BallisticCaseA => (1.0, ballistic_formula(params)?),
        PhaseKind::DiffusiveCaseAC1Zero => (0.5, 1.0),
        PhaseKind::DiffusiveGeneric => (0.5, diffusion_formula(params)?),
    };
    Ok(PhaseReport {
        theta0: params.theta0(),
        theta1: params.theta1(),
        p: params.p(),
        class,
        scaling_exponent,
        limit_constant,
    })
}

/// The `θ1 ∈ [0, 2π)` with `c0 = s0s1` and `c1 ≠ 0`, ascending.
///
/// With `r = arcsin(c0/s0)` the branches are `r` and `π − r` for
/// `θ0 ∈ (π/4, π/2] ∪ (5π/4, 3π/2]`, and `π − r` and `2π + r` for
/// `θ0 ∈ (π/2, 3π/4) ∪ (3π/2, 7π/4)`. Elsewhere the set is empty.
pub fn ballistic_set(theta0: f64) -> Vec<f64> {
    let theta0 = crate::walk::reduce_angle(theta0);
    let in_open_closed = |lo: f64, hi: f64| theta0 > lo && theta0 <= hi;
    let in_open = |lo: f64, hi: f64| theta0 > lo && theta0 < hi;
    let upper = in_open_closed(PI / 4.0, PI / 2.0) || in_open_closed(5.0 * PI / 4.0, 1.5 * PI);
    let lower = in_open(PI / 2.0, 0.75 * PI) || in_open(1.5 * PI, 1.75 * PI);
    if !upper && !lower {
        return Vec::new();
    }
    let (s0, c0) = theta0.sin_cos();
    let r = (c0 / s0).clamp(-1.0, 1.0).asin();
    let mut out = if upper {
        vec![r, PI - r]
    } else {
        vec![PI - r, 2.0 * PI + r]
    };
    out.retain(|&t1| (0.0..2.0 * PI).contains(&t1) && t1.cos().abs() > DEFAULT_EPS);
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= DEFAULT_EPS);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::{evolve, moments};
    use crate::walk::ballistic_theta1;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn params(t0: f64, t1: f64, p: f64) -> WalkParameters {
        WalkParameters::new(t0, t1, p).unwrap()
    }

    fn fig1(p: f64) -> WalkParameters {
        let t0 = 2.0 * PI / 7.0;
        params(t0, ballistic_theta1(t0).unwrap(), p)
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify(&fig1(0.5), DEFAULT_EPS).kind,
            PhaseKind::BallisticCaseA
        );
        assert_eq!(
            classify(&params(FRAC_PI_4, FRAC_PI_2, 0.5), DEFAULT_EPS).kind,
            PhaseKind::DiffusiveCaseAC1Zero
        );
        let c = classify(&params(FRAC_PI_6, FRAC_PI_3, 0.5), DEFAULT_EPS);
        assert_eq!(
            (c.kind, c.subcase),
            (PhaseKind::DiffusiveGeneric, PhaseSubcase::Generic)
        );
        assert_eq!(
            classify(&params(FRAC_PI_3, FRAC_PI_2, 0.5), DEFAULT_EPS).subcase,
            PhaseSubcase::ParityS0C1Zero
        );
        assert_eq!(
            classify(&params(FRAC_PI_2, FRAC_PI_3, 0.5), DEFAULT_EPS).subcase,
            PhaseSubcase::C0Zero
        );
    }

    #[test]
    fn case_a_values() {
        let m = moments_case_a(&fig1(0.75), 500).unwrap();
        assert_abs_diff_eq!(m.e1, 55.63, epsilon = 0.01);
        let sim = moments(&evolve(&fig1(0.75), 60));
        let closed = moments_case_a(&fig1(0.75), 60).unwrap();
        assert_abs_diff_eq!(sim.e1, closed.e1, epsilon = 1e-9);
        assert_abs_diff_eq!(sim.e2, closed.e2, epsilon = 1e-8 * closed.e2);
        assert_abs_diff_eq!(sim.sigma, closed.sigma, epsilon = 1e-8 * closed.sigma);

        let diag = moments_case_a(&params(FRAC_PI_2, 0.0, 0.9), 10).unwrap();
        assert_abs_diff_eq!(diag.e1, 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(diag.e2, 100.0, epsilon = 1e-12);
        assert!(moments_case_a(&params(FRAC_PI_6, FRAC_PI_3, 0.5), 1).is_err());
    }

    #[test]
    fn case_b_values() {
        let pr = params(FRAC_PI_3, FRAC_PI_2, 0.75);
        let m1 = moments_case_b(&pr, 1).unwrap();
        assert_abs_diff_eq!(m1.e1, -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m1.e2, 1.0, epsilon = 1e-15);
        let m2 = moments_case_b(&pr, 2).unwrap();
        assert_abs_diff_eq!(m2.e1, 0.0);
        assert_abs_diff_eq!(m2.e2, 1.5, epsilon = 1e-15);
        assert!(matches!(
            moments_case_b(&fig1(0.5), 2),
            Err(Error::WrongCase { .. })
        ));
    }

    #[test]
    fn case_c_values() {
        let a = moments_case_c_asymptotic(&params(FRAC_PI_2, FRAC_PI_3, 0.75)).unwrap();
        assert_abs_diff_eq!(a.e1_limit, -1.0 / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.e2_slope, 1.0 / 3.0, epsilon = 1e-12);
        let a = moments_case_c_asymptotic(&params(FRAC_PI_2, FRAC_PI_4, 0.75)).unwrap();
        assert_abs_diff_eq!(a.e1_limit, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.e2_slope, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.e2_offset, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn limit_constants() {
        let d = |t0, t1| diffusion_constant(&params(t0, t1, 0.5)).unwrap();
        assert_abs_diff_eq!(d(FRAC_PI_6, FRAC_PI_3), 1.258306, epsilon = 1e-6);
        assert_abs_diff_eq!(d(FRAC_PI_2, FRAC_PI_3), 0.577350, epsilon = 1e-6);
        assert_abs_diff_eq!(d(FRAC_PI_3, FRAC_PI_2), 0.866025, epsilon = 1e-6);
        for (p, reference) in [(0.5, 0.628932), (0.75, 0.619012)] {
            let b = ballistic_constant(&fig1(p)).unwrap();
            // the six-digit values were rounded from truncated intermediates
            assert_abs_diff_eq!(b, reference, epsilon = 5e-5);
            let far = moments_case_a(&fig1(p), 100_000_000).unwrap();
            assert_abs_diff_eq!(b, far.sigma / 1e8, epsilon = 1e-7);
        }
        for p in [0.0, 1.0] {
            assert_abs_diff_eq!(ballistic_constant(&params(FRAC_PI_2, 0.0, p)).unwrap(), 0.0);
        }
    }

    #[test]
    fn sigma_limit_reports() {
        let r = sigma_limit(&params(FRAC_PI_4, FRAC_PI_2, 0.5)).unwrap();
        assert_eq!((r.scaling_exponent, r.limit_constant), (0.5, 1.0));
        let r = sigma_limit(&fig1(0.75)).unwrap();
        assert_eq!(r.scaling_exponent, 1.0);
        assert_abs_diff_eq!(r.limit_constant, 0.619012, epsilon = 5e-5);

        let confined = sigma_limit(&params(FRAC_PI_2, FRAC_PI_2, 0.5)).unwrap();
        assert!(confined.bounded_motion());
        let json = serde_json::to_string(&confined).unwrap();
        let keys = [
            "theta0",
            "theta1",
            "p",
            "case",
            "subcase",
            "scaling_exponent",
            "limit_constant",
            "bounded_motion",
        ];
        let positions: Vec<usize> = keys
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(json.contains("\"bounded_motion\":true"));
    }

    #[test]
    fn ballistic_set_examples() {
        let t0 = 2.0 * PI / 7.0;
        let set = ballistic_set(t0);
        assert_eq!(set.len(), 2);
        assert_abs_diff_eq!(set[0], 0.92310, epsilon = 1e-5);
        assert_abs_diff_eq!(set[1], PI - set[0], epsilon = 1e-15);
        for t1 in set {
            let pr = params(t0, t1, 0.5);
            assert!((pr.c0() - pr.s0() * pr.s1()).abs() < 1e-12 && pr.c1().abs() > 1e-12);
        }
        assert!(ballistic_set(PI / 8.0).is_empty());
        assert!(ballistic_set(FRAC_PI_4).is_empty());
        for t0 in [0.6 * PI, 1.3 * PI, 1.6 * PI, FRAC_PI_2, 1.5 * PI] {
            let set = ballistic_set(t0);
            assert_eq!(set.len(), 2, "θ0 = {t0}");
            for t1 in set {
                let pr = params(t0, t1, 0.5);
                assert!((pr.c0() - pr.s0() * pr.s1()).abs() < 1e-12);
            }
        }
    }
}
