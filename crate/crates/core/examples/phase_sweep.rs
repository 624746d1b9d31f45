//! Coarse text map of the (θ0, θ1) phase diagram, with the ballistic curve
//! marked where it crosses each column.
//!
//! cargo run --release --example phase_sweep

use std::f64::consts::TAU;

use oqw::phases::{ballistic_set, classify, PhaseKind};
use oqw::WalkParameters;

const N: usize = 48;
/// Band width wide enough for the curve to show up on a grid this coarse.
const EPS: f64 = 0.07;

fn main() -> oqw::Result<()> {
    let node = |i: usize| TAU * i as f64 / N as f64;
    for j in (0..N).rev() {
        let mut line = String::with_capacity(N);
        for i in 0..N {
            let class = classify(&WalkParameters::new(node(i), node(j), 0.5)?, EPS);
            line.push(match class.kind {
                PhaseKind::BallisticCaseA => '#',
                PhaseKind::DiffusiveCaseAC1Zero => 'o',
                PhaseKind::DiffusiveGeneric => '.',
            });
        }
        println!("{line}");
    }
    println!("\nballistic branches θ1(θ0):");
    for i in (0..N).step_by(4) {
        let set: Vec<String> = ballistic_set(node(i))
            .iter()
            .map(|t| format!("{t:.4}"))
            .collect();
        println!("  θ0 = {:.4}: [{}]", node(i), set.join(", "));
    }
    Ok(())
}
