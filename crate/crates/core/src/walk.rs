//! Model definition: the two coin angles, the mixing weight of the initial
//! coin state, the Kraus pair `P`/`Q`, and the angle grammar used on the
//! command line.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::smallmat::{Mat2, Vec4};

/// Parameters of one walk: angles `θ0`, `θ1` in `[0, 2π)` and the weight `p`
/// of `|0⟩⟨0|` in the initial coin state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WalkParameters {
    theta0: f64,
    theta1: f64,
    p: f64,
    #[serde(skip)]
    c0: f64,
    #[serde(skip)]
    s0: f64,
    #[serde(skip)]
    c1: f64,
    #[serde(skip)]
    s1: f64,
}

impl WalkParameters {
    pub fn new(theta0: f64, theta1: f64, p: f64) -> Result<Self> {
        for (name, theta) in [("theta0", theta0), ("theta1", theta1)] {
            if !(0.0..TAU).contains(&theta) {
                return Err(Error::InvalidParameter(format!(
                    "{name} = {theta} is outside [0, 2π)"
                )));
            }
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "p = {p} is outside [0, 1]"
            )));
        }
        let (s0, c0) = theta0.sin_cos();
        let (s1, c1) = theta1.sin_cos();
        Ok(Self {
            theta0,
            theta1,
            p,
            c0,
            s0,
            c1,
            s1,
        })
    }

    /// Same angles, different initial weight.
    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(self.theta0, self.theta1, p)
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }
    pub fn theta1(&self) -> f64 {
        self.theta1
    }
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn c0(&self) -> f64 {
        self.c0
    }
    pub fn s0(&self) -> f64 {
        self.s0
    }
    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn s1(&self) -> f64 {
        self.s1
    }
}

/// The local operations: `P` acts before a step to the left, `Q` before a
/// step to the right. `P†P + Q†Q = I`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrausPair {
    pub p: Mat2,
    pub q: Mat2,
}

impl KrausPair {
    /// `‖P†P + Q†Q − I‖_max`.
    pub fn trace_defect(&self) -> f64 {
        let sum = self.p.adjoint() * self.p + self.q.adjoint() * self.q;
        (sum - Mat2::identity()).max_abs()
    }
}

pub fn build_kraus(params: &WalkParameters) -> KrausPair {
    let (c0, s0, c1, s1) = (params.c0, params.s0, params.c1, params.s1);
    KrausPair {
        p: Mat2::from_real([[0.0, c0], [s0 * s1, -s0 * c1]]),
        q: Mat2::from_real([[s0 * c1, s0 * s1], [c0, 0.0]]),
    }
}

/// The vectorised initial coin state `(p, 1−p, 0, 0)`.
pub fn initial_state_vector(params: &WalkParameters) -> Vec4 {
    Vec4::from_real([params.p, 1.0 - params.p, 0.0, 0.0])
}

/// Reduces an angle into `[0, 2π)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Principal-branch `θ1 = arcsin(c0/s0)`, the ballistic partner of `θ0`,
/// mapped into `[0, 2π)`.
pub fn ballistic_theta1(theta0: f64) -> Result<f64> {
    let (s0, c0) = theta0.sin_cos();
    if s0.abs() < 1e-15 {
        return Err(Error::DivisionByZero(format!(
            "c0/s0 at theta0 = {theta0} (sin theta0 = 0)"
        )));
    }
    let ratio = c0 / s0;
    if ratio.abs() > 1.0 + 1e-15 {
        return Err(Error::OutOfRange(format!(
            "no ballistic theta1 for theta0 = {theta0}: |c0/s0| = {:.6} > 1; \
             theta0 must lie in [pi/4, 3pi/4] or [5pi/4, 7pi/4]",
            ratio.abs()
        )));
    }
    Ok(reduce_angle(ratio.clamp(-1.0, 1.0).asin()))
}

/// A parsed angle.
///
/// Rational multiples of π are kept symbolically so reduction modulo 2π is
/// exact and the textual form round-trips.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AngleSpec {
    Radians(f64),
    /// `num·π/den`, with `0 ≤ num < 2·den` and `gcd(num, den) = 1`.
    PiFraction {
        num: i64,
        den: i64,
    },
    /// `arcsin(c0/s0)`, resolved against `θ0` by [`ballistic_theta1`].
    BallisticArcsin,
}

impl AngleSpec {
    fn pi_fraction(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero("angle denominator".into()));
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(2 * den);
        let g = gcd(num, den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Ok(AngleSpec::PiFraction { num, den })
    }

    /// The angle in radians, or `None` for the unresolved arcsin token.
    pub fn radians(&self) -> Option<f64> {
        match *self {
            AngleSpec::Radians(x) => Some(x),
            AngleSpec::PiFraction { num, den } => Some(num as f64 * PI / den as f64),
            AngleSpec::BallisticArcsin => None,
        }
    }

    /// Resolves the angle, using `theta0` for the arcsin token.
    pub fn resolve(&self, theta0: Option<f64>) -> Result<f64> {
        match (self.radians(), theta0) {
            (Some(x), _) => Ok(x),
            (None, Some(t0)) => ballistic_theta1(t0),
            (None, None) => Err(Error::InvalidParameter(
                "arcsin(c0/s0) can only be used for theta1".into(),
            )),
        }
    }
}

impl fmt::Display for AngleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AngleSpec::Radians(x) => write!(f, "{x:?}"),
            AngleSpec::PiFraction { num, den } => write!(f, "{num}*pi/{den}"),
            AngleSpec::BallisticArcsin => f.write_str("arcsin(c0/s0)"),
        }
    }
}

impl FromStr for AngleSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_angle(s)
    }
}

/// Parses a decimal literal, `a*pi/b`, `pi/b`, `a*pi`, `pi`, or the token
/// `arcsin(c0/s0)`. Results are reduced into `[0, 2π)`.
pub fn parse_angle(text: &str) -> Result<AngleSpec> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse {
        what: "angle",
        text: text.to_string(),
    };
    if compact.is_empty() {
        return Err(bad());
    }
    if compact.eq_ignore_ascii_case("arcsin(c0/s0)") {
        return Ok(AngleSpec::BallisticArcsin);
    }
    let lower = compact.to_ascii_lowercase().replace('π', "pi");
    if let Some(at) = lower.find("pi") {
        let head = &lower[..at];
        let tail = &lower[at + 2..];
        let num: i64 = match head {
            "" => 1,
            "-" => -1,
            _ => head
                .strip_suffix('*')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?,
        };
        let den: i64 = match tail {
            "" => 1,
            _ => tail
                .strip_prefix('/')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?,
        };
        return AngleSpec::pi_fraction(num, den);
    }
    let x: f64 = lower.parse().map_err(|_| bad())?;
    if !x.is_finite() {
        return Err(bad());
    }
    Ok(AngleSpec::Radians(reduce_angle(x)))
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
