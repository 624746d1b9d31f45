use serde::Serialize;

use crate::error::{Error, Result};
use crate::phases::DEFAULT_EPS;
use crate::smallmat::{Complex, Mat2, Vec2, Vector};
use crate::walk::WalkParameters;

use super::twisted_generator;

/// The two parameter families on which the diagonal of `ρ̂` evolves on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedCase {
    /// `s0c1 = 0`: `V̂(k)` is off-diagonal and the walk alternates parity.
    ParityS0C1Zero,
    /// `c0 = 0`.
    C0Zero,
}

/// Eigen-data of the 2×2 generator `V̂(k)` acting on `(ρ̂₀₀, ρ̂₁₁)`.
///
/// `b` are the coordinates of `φ = (p, 1−p)` in the basis `ξ`, and
/// `z_j = ξ_j,0 + ξ_j,1`, so `(ρ̂₀₀ + ρ̂₁₁)_t(k) = Σ_j ν_j^t b_j z_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSpectrum {
    pub case: ReducedCase,
    pub k: f64,
    pub generator: Mat2,
    pub nu: [Complex; 2],
    pub xi: [Vec2; 2],
    pub b: [Complex; 2],
    pub z: [Complex; 2],
}

impl ReducedSpectrum {
    /// `Σ_j ν_j^t b_j z_j`, the characteristic function at `(k, t)`.
    pub fn characteristic(&self, t: usize) -> Complex {
        (0..2)
            .map(|j| self.nu[j].powu(t as u32) * self.b[j] * self.z[j])
            .sum()
    }
}

/// Detects which reduction applies, preferring `s0c1 = 0` when both do.
pub fn reduced_case(params: &WalkParameters) -> Option<ReducedCase> {
    if (params.s0() * params.c1()).abs() <= DEFAULT_EPS {
        Some(ReducedCase::ParityS0C1Zero)
    } else if params.c0().abs() <= DEFAULT_EPS {
        Some(ReducedCase::C0Zero)
    } else {
        None
    }
}

pub fn reduced_generator(params: &WalkParameters, k: f64) -> Result<ReducedSpectrum> {
    let case = reduced_case(params).ok_or(Error::NotReducible {
        s0c1: params.s0() * params.c1(),
        c0: params.c0(),
    })?;
    let u = twisted_generator(params, k).matrix;
    let generator = Mat2::new(u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);

    let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
    let sk = k.sin();
    let i = Complex::new(0.0, 1.0);
    let (nu, xi) = match case {
        ReducedCase::ParityS0C1Zero => {
            let root = Complex::new(1.0 - 4.0 * (c0 * s0 * sk).powi(2), 0.0).sqrt();
            let lower = Complex::from_polar(c0 * c0, -k) + Complex::from_polar(s0 * s0, k);
            let branch = |sign: f64| Vector([root * sign, lower]);
            ([root, -root], [branch(1.0), branch(-1.0)])
        }
        ReducedCase::C0Zero => {
            let root = Complex::new(s1.powi(4) - (c1 * c1 * sk).powi(2), 0.0).sqrt();
            let diag = Complex::new(c1 * c1 * k.cos(), 0.0);
            let lower = Complex::from_polar(s1 * s1, k);
            let branch = |sign: f64| Vector([root * sign - i * (c1 * c1 * sk), lower]);
            ([diag + root, diag - root], [branch(1.0), branch(-1.0)])
        }
    };

    let phi = Vec2::from_real([params.p(), 1.0 - params.p()]);
    let g11 = xi[0].inner(&xi[0]);
    let g22 = xi[1].inner(&xi[1]);
    let g12 = xi[0].inner(&xi[1]);
    let g21 = xi[1].inner(&xi[0]);
    let denom = g11 * g22 - g12 * g21;
    if denom.norm() <= 1e-14 * (g11.norm() * g22.norm()).max(f64::MIN_POSITIVE) {
        return Err(Error::DegenerateEigenvalue(format!(
            "reduced eigenvectors coincide at k = {k}"
        )));
    }
    let (p1, p2) = (xi[0].inner(&phi), xi[1].inner(&phi));
    let b = [(p1 * g22 - p2 * g12) / denom, (p2 * g11 - p1 * g21) / denom];
    let z = [xi[0][0] + xi[0][1], xi[1][0] + xi[1][1]];

    Ok(ReducedSpectrum {
        case,
        k,
        generator,
        nu,
        xi,
        b,
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::evolve_fourier;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

    fn close(a: Complex, b: f64, tol: f64) -> bool {
        (a - Complex::new(b, 0.0)).norm() < tol
    }

    #[test]
    fn parity_case_at_zero() {
        let pr = WalkParameters::new(FRAC_PI_3, FRAC_PI_2, 0.75).unwrap();
        let r = reduced_generator(&pr, 0.0).unwrap();
        assert_eq!(r.case, ReducedCase::ParityS0C1Zero);
        let want = [[0.0, 1.0], [1.0, 0.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert!(close(r.generator[(i, j)], w, 1e-15));
            }
        }
        assert!(close(r.nu[0], 1.0, 1e-15) && close(r.nu[1], -1.0, 1e-15));
    }

    #[test]
    fn c0_zero_case_at_zero() {
        let pr = WalkParameters::new(FRAC_PI_2, FRAC_PI_3, 0.75).unwrap();
        let r = reduced_generator(&pr, 0.0).unwrap();
        assert_eq!(r.case, ReducedCase::C0Zero);
        let want = [[0.25, 0.75], [0.75, 0.25]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert!(close(r.generator[(i, j)], w, 1e-15));
            }
        }
        assert!(close(r.nu[0], 1.0, 1e-15) && close(r.nu[1], -0.5, 1e-15));
    }

    #[test]
    fn not_reducible() {
        let pr = WalkParameters::new(FRAC_PI_6, FRAC_PI_3, 0.5).unwrap();
        assert!(matches!(
            reduced_generator(&pr, 0.0),
            Err(Error::NotReducible { .. })
        ));
    }

    #[test]
    fn eigenpairs_and_decomposition() {
        for (t0, t1) in [
            (FRAC_PI_3, FRAC_PI_2),
            (FRAC_PI_2, FRAC_PI_3),
            (FRAC_PI_2, 1.0),
        ] {
            let pr = WalkParameters::new(t0, t1, 0.3).unwrap();
            for k in [0.0, 0.2, -1.1] {
                let r = reduced_generator(&pr, k).unwrap();
                for j in 0..2 {
                    let lhs = r.generator * r.xi[j];
                    let rhs = r.xi[j].scale(r.nu[j]);
                    assert!((lhs - rhs).norm() < 1e-12);
                }
                let phi = r.xi[0].scale(r.b[0]) + r.xi[1].scale(r.b[1]);
                assert!(close(phi[0], 0.3, 1e-12) && close(phi[1], 0.7, 1e-12));
                for t in [0, 1, 7] {
                    let full = evolve_fourier(&pr, k, t).characteristic();
                    assert!((r.characteristic(t) - full).norm() < 1e-12);
                }
            }
        }
    }
}
