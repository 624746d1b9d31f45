//! σ(X_t) against its scaling law for a ballistic and a diffusive walk.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

use oqw::phases::{ballistic_constant, diffusion_constant, moments_case_a};
use oqw::simulate::{moments, trajectory};
use oqw::walk::ballistic_theta1;
use oqw::WalkParameters;

fn main() -> oqw::Result<()> {
    let theta0 = 2.0 * PI / 7.0;
    let ballistic = WalkParameters::new(theta0, ballistic_theta1(theta0)?, 0.5)?;
    let diffusive = WalkParameters::new(FRAC_PI_6, FRAC_PI_3, 0.5)?;
    let v = ballistic_constant(&ballistic)?;
    let d = diffusion_constant(&diffusive)?;
    println!("ballistic: sigma/t -> {v:.6}; diffusive: sigma/sqrt(t) -> {d:.6}");
    println!(
        "{:>5} {:>12} {:>12} {:>12}",
        "t", "sigma/t", "exact/t", "sigma/sqrt(t)"
    );

    let series = trajectory(&ballistic)
        .zip(trajectory(&diffusive))
        .take(1001)
        .step_by(100)
        .skip(1);
    for (a, b) in series {
        let (ma, mb) = (moments(&a), moments(&b));
        let t = ma.t as f64;
        let exact = moments_case_a(&ballistic, ma.t)?;
        println!(
            "{:>5} {:>12.6} {:>12.6} {:>12.6}",
            ma.t,
            ma.sigma / t,
            exact.sigma / t,
            mb.sigma / t.sqrt()
        );
    }
    Ok(())
}
