//! Eigenvalues of the Fourier generator Û(k) across the Brillouin zone,
//! with the factorization check.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};

use oqw::spectral::{perron_derivatives, spectrum, twisted_generator};
use oqw::WalkParameters;

fn main() -> oqw::Result<()> {
    let params = WalkParameters::new(FRAC_PI_6, FRAC_PI_3, 0.5)?;
    for step in 0..=8 {
        let k = -PI + PI * step as f64 / 4.0;
        let report = spectrum(&params, k)?;
        let residual = report.max_eigen_residual(&twisted_generator(&params, k).matrix);
        let moduli: Vec<String> = report
            .eigenvalues
            .iter()
            .map(|l| format!("{:.4}", l.norm()))
            .collect();
        println!(
            "k = {k:+.4}  |λ| = [{}]  eigen-residual {residual:.1e}  factorization {:.1e}",
            moduli.join(", "),
            report.factorization_residual().unwrap_or(0.0)
        );
    }
    let d = perron_derivatives(&params)?;
    println!("λ₁'(0) = {:.3e}, λ₁''(0) = {:.12}", d.first, d.second);
    Ok(())
}
