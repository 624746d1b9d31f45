//! Fourier-space view of the walk.
//!
//! Transforming in position, `ρ̂_t(k) = Σ_x e^{−ikx} ρ_t(x)`, turns one step into
//! `ρ̂ ↦ e^{ik} P ρ̂ P† + e^{−ik} Q ρ̂ Q†`. Writing the 2×2 matrix `ρ̂` as the
//! 4-vector `(ρ̂₀₀, ρ̂₁₁, ρ̂₁₀, ρ̂₀₁)` makes that map a 4×4 matrix `Û(k)`, so the
//! whole time evolution is a matrix power and the moments are derivatives
//! at `k = 0`.

mod reduced;
mod spectrum;

use std::f64::consts::PI;

pub use reduced::{reduced_generator, ReducedCase, ReducedSpectrum};
pub use spectrum::{
    cubic_factor, discriminant, perron_derivatives, perron_root, spectrum, CubicFactor,
    PerronDerivatives, SpectrumReport, TRACK_STEP,
};

use crate::error::{Error, Result};
use crate::simulate::{Distribution, MomentReport};
use crate::smallmat::{Complex, Mat2, Mat4, Vec4, Vector};
use crate::walk::{build_kraus, initial_state_vector, WalkParameters};

/// Imaginary parts above this abort a reconstruction or a numeric moment.
pub const RESIDUE_TOL: f64 = 1e-8;

/// Default wavenumber step for [`moments_numeric`]. The differences are
/// evolved without cancellation, so the step is limited only by truncation,
/// which near the ballistic manifold grows like `h⁴t⁶`.
pub const DEFAULT_H: f64 = 1e-6;

/// `(ρ₀₀, ρ₁₁, ρ₁₀, ρ₀₁)`.
pub fn vectorize(rho: &Mat2) -> Vec4 {
    Vector([rho[(0, 0)], rho[(1, 1)], rho[(1, 0)], rho[(0, 1)]])
}

pub fn devectorize(v: &Vec4) -> Mat2 {
    Mat2::new(v[0], v[3], v[2], v[1])
}

/// The 4×4 block `[[a,0,0,b],[0,d,c,0],[c,0,0,d],[0,b,a,0]]` built from
/// `a = [[a,b],[c,d]]`.
fn rearrangement(m: &Mat2) -> Mat4 {
    let [[a, b], [c, d]] = m.entries;
    let z = Complex::new(0.0, 0.0);
    Mat4::from_entries([[a, z, z, b], [z, d, c, z], [c, z, z, d], [z, b, a, z]])
}

/// The superoperator `L(a)` with `vectorize(a ρ a†) = L(a) · vectorize(ρ)`.
pub fn conjugation_superop(a: &Mat2) -> Mat4 {
    rearrangement(a) * rearrangement(&a.conj())
}

/// `Û(k)` together with the wavenumber it was built for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwistedGenerator {
    pub k: f64,
    pub matrix: Mat4,
}

/// `Û(k) = e^{ik} L(P) + e^{−ik} L(Q)`.
pub fn twisted_generator(params: &WalkParameters, k: f64) -> TwistedGenerator {
    let kraus = build_kraus(params);
    let left = conjugation_superop(&kraus.p).scale(Complex::from_polar(1.0, k));
    let right = conjugation_superop(&kraus.q).scale(Complex::from_polar(1.0, -k));
    TwistedGenerator {
        k,
        matrix: left + right,
    }
}

/// `|ψ̂_t(k)⟩ = Û(k)^t |ψ̂_0⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierState {
    pub k: f64,
    pub t: usize,
    pub psi: Vec4,
}

impl FourierState {
    /// `ψ̂₁ + ψ̂₂`, the transform of the position distribution.
    pub fn characteristic(&self) -> Complex {
        self.psi[0] + self.psi[1]
    }
}

pub fn evolve_fourier(params: &WalkParameters, k: f64, t: usize) -> FourierState {
    let u = twisted_generator(params, k).matrix;
    let mut psi = initial_state_vector(params);
    for _ in 0..t {
        psi = u.mul_vec(&psi);
    }
    FourierState { k, t, psi }
}

/// `ℙ(X_t = x)` by the discrete inverse transform on `2t+1` equispaced
/// wavenumbers, which is exact for the degree-`t` trigonometric polynomial
/// `ψ̂₁ + ψ̂₂`.
pub fn reconstruct_distribution(params: &WalkParameters, t: usize) -> Result<Distribution> {
    let n = 2 * t + 1;
    let ks: Vec<f64> = (0..n)
        .map(|m| -PI + 2.0 * PI * m as f64 / n as f64)
        .collect();
    let samples: Vec<Complex> = ks
        .iter()
        .map(|&k| evolve_fourier(params, k, t).characteristic())
        .collect();

    let mut entries = std::collections::BTreeMap::new();
    let t = t as i64;
    for x in -t..=t {
        let value: Complex = ks
            .iter()
            .zip(samples.iter())
            .map(|(&k, &f)| Complex::from_polar(1.0, k * x as f64) * f)
            .sum::<Complex>()
            / n as f64;
        if value.im.abs() > RESIDUE_TOL {
            return Err(Error::ResidueTooLarge {
                residue: value.im.abs(),
                tolerance: RESIDUE_TOL,
            });
        }
        if (x + t) % 2 == 0 {
            entries.insert(x, value.re);
        } else if value.re.abs() > RESIDUE_TOL {
            return Err(Error::ResidueTooLarge {
                residue: value.re.abs(),
                tolerance: RESIDUE_TOL,
            });
        }
    }
    Ok(Distribution { entries })
}

/// `E(X_t)` and `E(X_t²)` as `i f′(0)` and `−f″(0)` of `f = ψ̂₁ + ψ̂₂`, using
/// central differences at `k ∈ {0, ±h, ±2h}` with one Richardson level.
pub fn moments_numeric(params: &WalkParameters, t: usize, h: f64) -> Result<MomentReport> {
    if !(h > 0.0 && h <= 1e-2) {
        return Err(Error::InvalidParameter(format!(
            "wavenumber step h = {h} outside (0, 1e-2]"
        )));
    }
    let (fine, coarse) = (differences(params, t, h), differences(params, t, 2.0 * h));

    let d1_h = fine.odd / (2.0 * h);
    let d1_2h = coarse.odd / (4.0 * h);
    let first = (d1_h * 4.0 - d1_2h) / 3.0;

    let d2_h = fine.even / (h * h);
    let d2_2h = coarse.even / (4.0 * h * h);
    let second = (d2_h * 4.0 - d2_2h) / 3.0;

    let e1 = Complex::new(0.0, 1.0) * first;
    let e2 = -second;
    let residue = e1.im.abs().max(e2.im.abs());
    if residue > RESIDUE_TOL {
        return Err(Error::ResidueTooLarge {
            residue,
            tolerance: RESIDUE_TOL,
        });
    }
    Ok(MomentReport::new(t, e1.re, e2.re))
}

/// `f(h) − f(−h)` and `f(h) − 2f(0) + f(−h)` at time `t`.
struct Differences {
    odd: Complex,
    even: Complex,
}

/// Evolves the differences themselves rather than the three states, so the
/// O(h) and O(h²) quantities never arise from cancelling O(1) ones.
///
/// With `Û(±h) = Û(0) + Δ±` and `d± = ψ̂(±h) − ψ̂(0)`:
/// `d±' = Û(0)d± + Δ±(ψ̂(0) + d±)` and
/// `s' = Û(0)s + Δ+d+ + Δ−d− + (Δ+ + Δ−)ψ̂(0)`.
fn differences(params: &WalkParameters, t: usize, h: f64) -> Differences {
    let kraus = build_kraus(params);
    let (lp, lq) = (conjugation_superop(&kraus.p), conjugation_superop(&kraus.q));
    let u0 = lp + lq;
    // e^{±ih} − 1 without cancellation
    let versine = -2.0 * (h / 2.0).sin().powi(2);
    let plus = Complex::new(versine, h.sin());
    let minus = plus.conj();
    let delta_plus = lp.scale(plus) + lq.scale(minus);
    let delta_minus = lp.scale(minus) + lq.scale(plus);
    let delta_sum = u0.scale(Complex::new(2.0 * versine, 0.0));

    let mut psi = initial_state_vector(params);
    let mut d_plus = Vec4::zeros();
    let mut d_minus = Vec4::zeros();
    let mut s = Vec4::zeros();
    for _ in 0..t {
        let s_next = u0 * s + delta_plus * d_plus + delta_minus * d_minus + delta_sum * psi;
        let plus_next = u0 * d_plus + delta_plus * (psi + d_plus);
        let minus_next = u0 * d_minus + delta_minus * (psi + d_minus);
        psi = u0 * psi;
        (s, d_plus, d_minus) = (s_next, plus_next, minus_next);
    }
    let odd = d_plus - d_minus;
    Differences {
        odd: odd[0] + odd[1],
        even: s[0] + s[1],
    }
}
