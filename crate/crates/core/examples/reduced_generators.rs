//! The two families where the diagonal of ρ̂ closes on itself: the 2×2
//! eigen-data and the characteristic function it predicts.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3};

use oqw::spectral::{evolve_fourier, reduced_generator};
use oqw::WalkParameters;

fn main() -> oqw::Result<()> {
    for (t0, t1) in [(FRAC_PI_3, FRAC_PI_2), (FRAC_PI_2, FRAC_PI_3)] {
        let params = WalkParameters::new(t0, t1, 0.75)?;
        for k in [0.0, 0.5, 1.5] {
            let r = reduced_generator(&params, k)?;
            let t = 25;
            let gap = (r.characteristic(t) - evolve_fourier(&params, k, t).characteristic()).norm();
            println!(
                "{:?} k = {k:.1}: ν = {:.6}, {:.6}  b = {:.4}, {:.4}  |Δχ_{t}| = {gap:.1e}",
                r.case, r.nu[0], r.nu[1], r.b[0], r.b[1]
            );
        }
    }
    Ok(())
}
