//! Position distribution after a number of steps, for one of the four
//! standard parameter sets.
//!
//! cargo run --example simulate_distribution -- 100

use std::f64::consts::PI;

use oqw::simulate::{distribution, evolve};
use oqw::walk::ballistic_theta1;
use oqw::WalkParameters;

fn main() -> oqw::Result<()> {
    let t: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let theta0 = 2.0 * PI / 7.0;
    let params = WalkParameters::new(theta0, ballistic_theta1(theta0)?, 0.5)?;

    let state = evolve(&params, t);
    state
        .check_invariants(1e-9)
        .map_err(oqw::Error::InvariantViolation)?;
    let dist = distribution(&state);

    let peak = dist.entries.values().copied().fold(0.0, f64::max);
    for (x, prob) in &dist.entries {
        let bar = "#".repeat((60.0 * prob / peak).round() as usize);
        println!("{x:>5} {prob:.6} {bar}");
    }
    println!("total probability {:.15}", dist.total());
    Ok(())
}
