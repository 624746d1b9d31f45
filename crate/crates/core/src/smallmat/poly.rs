//! Characteristic polynomials and polynomial roots for the small matrices in
//! this crate.

use std::cmp::Ordering;

use super::{Complex, Matrix};
use crate::error::{Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Default iteration cap for [`poly_roots`].
pub const DEFAULT_MAX_ITERATIONS: usize = 500;

/// Roots closer than this are treated as one multiple root.
pub const CLUSTER_RADIUS: f64 = 1e-7;

/// Relative residual every returned root must satisfy.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

/// Polynomial with complex coefficients, stored in ascending degree.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<Complex>,
}

impl PolyCoeffs {
    /// Builds a polynomial and trims exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<Complex>) -> Self {
        let mut p = Self { coeffs };
        while p.coeffs.len() > 1 && p.coeffs.last() == Some(&ZERO) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// The monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex]) -> Self {
        let mut p = Self::from_real(&[1.0]);
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, Complex::new(1.0, 0.0)]));
        }
        p
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::new(vec![ZERO]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Largest coefficient-wise distance, padding the shorter polynomial with zeros.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(ZERO);
                let b = other.coeffs.get(i).copied().unwrap_or(ZERO);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Scale used for root residual checks: `Σ |c_i| |z|^i`.
    fn magnitude_at(&self, z: Complex) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }
}

/// Coefficients of `det(λI − m)` by the Faddeev–LeVerrier recurrence.
///
/// The result is monic of degree `N`. For even `N` (in particular the 4×4
/// generators) this is also `det(m − λI)`.
pub fn char_poly<const N: usize>(m: &Matrix<N>) -> PolyCoeffs {
    let mut coeffs = vec![ZERO; N + 1];
    coeffs[N] = Complex::new(1.0, 0.0);
    let identity = Matrix::<N>::identity();
    let mut aux = Matrix::<N>::zeros();
    for k in 1..=N {
        aux = *m * aux + identity.scale(coeffs[N + 1 - k]);
        let am = *m * aux;
        coeffs[N - k] = -am.trace() / k as f64;
    }
    PolyCoeffs { coeffs }
}

/// All roots of `p` with multiplicity.
///
/// Durand–Kerner (Weierstrass) iteration from a deterministic ring of starting
/// points, followed by cluster averaging for multiple roots and a Newton polish
/// of simple roots. Exact zero roots are deflated first. Roots come back in
/// the order of [`sort_roots`].
pub fn poly_roots(p: &PolyCoeffs) -> Result<Vec<Complex>> {
    poly_roots_with(p, DEFAULT_MAX_ITERATIONS)
}

pub fn poly_roots_with(p: &PolyCoeffs, max_iterations: usize) -> Result<Vec<Complex>> {
    if p.coeffs
        .iter()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::InvalidParameter(
            "non-finite polynomial coefficient".into(),
        ));
    }
    let degree = p.degree();
    if degree == 0 {
        return Err(Error::InvalidParameter(
            "polynomial of degree 0 has no roots".into(),
        ));
    }

    let zero_roots = p.coeffs.iter().take_while(|&&c| c == ZERO).count();
    let lead = p.leading();
    let monic: Vec<Complex> = p.coeffs[zero_roots..].iter().map(|c| c / lead).collect();
    let reduced = PolyCoeffs { coeffs: monic };
    let n = reduced.degree();

    let mut roots = vec![ZERO; zero_roots];
    if n > 0 {
        let found = durand_kerner(&reduced, max_iterations)?;
        roots.extend(found);
    }
    sort_roots(&mut roots);
    Ok(roots)
}

fn durand_kerner(p: &PolyCoeffs, max_iterations: usize) -> Result<Vec<Complex>> {
    let n = p.degree();
    if n == 1 {
        return Ok(vec![-p.coeffs[0]]);
    }

    // Fujiwara-style bound on the root moduli sets the radius of the start ring.
    let radius = p.coeffs[..n]
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm().powf(1.0 / (n - i) as f64))
        .fold(0.0, f64::max)
        .max(0.5);
    let mut z: Vec<Complex> = (0..n)
        .map(|j| Complex::from_polar(radius, 0.4 + std::f64::consts::TAU * j as f64 / n as f64))
        .collect();

    let mut converged = false;
    for _ in 0..max_iterations {
        let mut max_step: f64 = 0.0;
        for j in 0..n {
            let mut denom = Complex::new(1.0, 0.0);
            for (l, &zl) in z.iter().enumerate() {
                if l != j {
                    let mut d = z[j] - zl;
                    if d == ZERO {
                        d = Complex::new(f64::EPSILON * (1.0 + z[j].norm()), 0.0);
                    }
                    denom *= d;
                }
            }
            let step = p.eval(z[j]) / denom;
            if step.re.is_finite() && step.im.is_finite() {
                z[j] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
            }
        }
        if max_step <= 4.0 * f64::EPSILON {
            converged = true;
            break;
        }
    }

    let mut roots = average_clusters(&z);

    // A root of multiplicity m is a simple root of the (m−1)-th derivative,
    // which Newton then resolves to full precision.
    for (i, r) in roots.iter_mut().enumerate() {
        let multiplicity = z
            .iter()
            .filter(|zj| (**zj - z[i]).norm() <= CLUSTER_RADIUS)
            .count();
        let mut f = p.clone();
        for _ in 1..multiplicity {
            f = f.derivative();
        }
        *r = newton_polish(&f, &f.derivative(), *r);
    }

    let worst = roots
        .iter()
        .map(|&r| p.eval(r).norm() / p.magnitude_at(r).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    if worst > ROOT_RESIDUAL_TOL || !worst.is_finite() {
        return Err(Error::NonConvergence {
            iterations: if converged { 0 } else { max_iterations },
            residual: worst,
        });
    }
    Ok(roots)
}

/// Replaces every member of a cluster (single-linkage within
/// [`CLUSTER_RADIUS`]) by the cluster mean.
fn average_clusters(z: &[Complex]) -> Vec<Complex> {
    let n = z.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if (z[i] - z[j]).norm() <= CLUSTER_RADIUS {
                let (from, to) = (label[j], label[i]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
    }
    (0..n)
        .map(|i| {
            let members: Vec<Complex> = (0..n)
                .filter(|&j| label[j] == label[i])
                .map(|j| z[j])
                .collect();
            members.iter().sum::<Complex>() / members.len() as f64
        })
        .collect()
}

fn newton_polish(p: &PolyCoeffs, dp: &PolyCoeffs, mut r: Complex) -> Complex {
    let mut best = p.eval(r).norm();
    for _ in 0..3 {
        let d = dp.eval(r);
        if d == ZERO {
            break;
        }
        let candidate = r - p.eval(r) / d;
        let value = p.eval(candidate).norm();
        if value < best {
            best = value;
            r = candidate;
        } else {
            break;
        }
    }
    r
}

/// Orders roots by descending modulus, then descending real part, then
/// descending imaginary part. Moduli within 1e-9 count as equal.
pub fn sort_roots(roots: &mut [Complex]) {
    // Insertion sort: the tolerant comparison is not a total order, and the
    // inputs have at most a handful of entries.
    for i in 1..roots.len() {
        let mut j = i;
        while j > 0 && root_order(&roots[j], &roots[j - 1]) == Ordering::Less {
            roots.swap(j, j - 1);
            j -= 1;
        }
    }
}

fn root_order(a: &Complex, b: &Complex) -> Ordering {
    let (ma, mb) = (a.norm(), b.norm());
    if (ma - mb).abs() > 1e-9 {
        return mb.partial_cmp(&ma).unwrap_or(Ordering::Equal);
    }
    if (a.re - b.re).abs() > 1e-12 {
        return b.re.partial_cmp(&a.re).unwrap_or(Ordering::Equal);
    }
    b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal)
}
