//! Rebuilds the distribution from the Fourier picture and compares it with
//! direct simulation, then takes the moments numerically at k = 0.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

use oqw::simulate::{distribution, evolve, moments};
use oqw::spectral::{moments_numeric, reconstruct_distribution, DEFAULT_H};
use oqw::WalkParameters;

fn main() -> oqw::Result<()> {
    let params = WalkParameters::new(FRAC_PI_6, FRAC_PI_3, 0.3)?;
    for t in [1, 10, 50, 200] {
        let direct = evolve(&params, t);
        let fourier = reconstruct_distribution(&params, t)?;
        let exact = moments(&direct);
        let numeric = moments_numeric(&params, t, DEFAULT_H)?;
        println!(
            "t = {t:>3}  max |Δp| = {:.1e}  E(X) {:+.10} vs {:+.10}  E(X²) {:.8} vs {:.8}",
            distribution(&direct).max_abs_diff(&fourier),
            exact.e1,
            numeric.e1,
            exact.e2,
            numeric.e2
        );
    }
    Ok(())
}
