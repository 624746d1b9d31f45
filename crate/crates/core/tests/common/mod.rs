#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI, TAU};

use oqw::phases::{classify, PhaseKind, DEFAULT_EPS};
use oqw::walk::{ballistic_theta1, WalkParameters};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn params(theta0: f64, theta1: f64, p: f64) -> WalkParameters {
    WalkParameters::new(theta0, theta1, p).expect("valid parameters")
}

/// The four parameter sets behind the distribution figures, in figure order.
pub fn figure_sets(p: f64) -> [(&'static str, WalkParameters); 4] {
    let t0 = 2.0 * PI / 7.0;
    [
        (
            "2pi/7, arcsin(c0/s0)",
            params(t0, ballistic_theta1(t0).unwrap(), p),
        ),
        ("pi/3, pi/2", params(FRAC_PI_3, FRAC_PI_2, p)),
        ("pi/2, pi/3", params(FRAC_PI_2, FRAC_PI_3, p)),
        ("pi/6, pi/3", params(FRAC_PI_6, FRAC_PI_3, p)),
    ]
}

pub fn random_angle(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.0..TAU)
}

pub fn random_params(rng: &mut impl Rng) -> WalkParameters {
    params(
        random_angle(rng),
        random_angle(rng),
        rng.gen_range(0.0..=1.0),
    )
}

/// A random point with `c0 ≠ s0s1`.
pub fn random_generic(rng: &mut impl Rng) -> WalkParameters {
    loop {
        let pr = random_params(rng);
        if classify(&pr, DEFAULT_EPS).kind == PhaseKind::DiffusiveGeneric {
            return pr;
        }
    }
}

/// The closed form `λ₁″(0) = −s0²{c1² + 4c0²s1² + 4c0s0s1(c1² − 2c0²s1²)}/(c0 − s0s1)²`.
pub fn lambda_second_closed(pr: &WalkParameters) -> f64 {
    let (c0, s0, c1, s1) = (pr.c0(), pr.s0(), pr.c1(), pr.s1());
    let braces = c1 * c1
        + 4.0 * c0 * c0 * s1 * s1
        + 4.0 * c0 * s0 * s1 * (c1 * c1 - 2.0 * c0 * c0 * s1 * s1);
    -s0 * s0 * braces / (c0 - s0 * s1).powi(2)
}
