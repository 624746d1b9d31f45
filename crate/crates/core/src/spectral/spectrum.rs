use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::phases::DEFAULT_EPS;
use crate::smallmat::{
    char_poly, eigen_residual, normalize_eigenvector, null_space, poly_roots, Complex, Mat4,
    PolyCoeffs, Vec4, Vector, CLUSTER_RADIUS,
};
use crate::walk::WalkParameters;

use super::twisted_generator;

/// Wavenumber step used to continue the Perron root away from `k = 0`.
pub const TRACK_STEP: f64 = 1e-3;

/// Eigen-residual above which a closed-form representative is rejected in
/// favour of a null-space solve.
const REPRESENTATIVE_TOL: f64 = 1e-9;

/// Eigen-data of `Û(k)` at one wavenumber.
///
/// Index 0 holds the branch through `λ = 1` at `k = 0`. When `c0 ≠ s0s1`
/// index 3 is the linear factor's root `−2c0s0s1 cos k` and indices 1, 2 are
/// the remaining roots of the cubic factor, larger real part first.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub k: f64,
    pub eigenvalues: [Complex; 4],
    pub eigenvectors: [Vec4; 4],
    pub char_poly: PolyCoeffs,
    pub cubic_factor: Option<PolyCoeffs>,
    /// `J = {s0²c1² − (c0−s0s1)²}² + 8c0s0s1`.
    pub discriminant: f64,
}

impl SpectrumReport {
    /// `max_j ‖Û v_j − λ_j v_j‖ / ‖v_j‖`.
    pub fn max_eigen_residual(&self, generator: &Mat4) -> f64 {
        self.eigenvalues
            .iter()
            .zip(self.eigenvectors.iter())
            .map(|(&l, v)| eigen_residual(generator, l, v))
            .fold(0.0, f64::max)
    }

    /// Coefficient-wise distance between the characteristic polynomial and
    /// `(λ + 2c0s0s1 cos k) G(λ)`; `None` when there is no cubic factor.
    pub fn factorization_residual(&self) -> Option<f64> {
        let g = self.cubic_factor.as_ref()?;
        let linear = PolyCoeffs::new(vec![-self.eigenvalues[3], Complex::new(1.0, 0.0)]);
        Some(self.char_poly.max_coeff_diff(&linear.mul(g)))
    }
}

pub fn discriminant(params: &WalkParameters) -> f64 {
    let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
    let a = s0 * s0 * c1 * c1 - (c0 - s0 * s1).powi(2);
    a * a + 8.0 * c0 * s0 * s1
}

/// The cubic `G(λ; k) = λ³ + a₂(k)λ² + a₁(k)λ + a₀(k)` with
///
/// * `a₂ = −A cos k`, `A = 2s0(s0c1² + c0s1)`
/// * `a₁ = B sin²k + C`, `B = 4c0s0²s1(s0c1² + c0s1)`, `C = 2s0²c1² − 1`
/// * `a₀ = D(1 − E sin²k) cos k`, `D = 2c0s0s1`, `E = 4c0²s0²s1²`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicFactor {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
}

/// Value and partial derivatives of `G` at one `(λ, k)`.
#[derive(Clone, Copy, Debug)]
struct CubicPartials {
    g_l: Complex,
    g_ll: Complex,
    g_k: Complex,
    g_kk: Complex,
    g_lk: Complex,
}

impl CubicFactor {
    pub fn new(params: &WalkParameters) -> Self {
        let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
        let shared = s0 * c1 * c1 + c0 * s1;
        Self {
            a: 2.0 * s0 * shared,
            b: 4.0 * c0 * s0 * s0 * s1 * shared,
            c: 2.0 * s0 * s0 * c1 * c1 - 1.0,
            d: 2.0 * c0 * s0 * s1,
            e: 4.0 * (c0 * s0 * s1).powi(2),
        }
    }

    /// `[a₀, a₁, a₂]` at `k`, followed by the first and second `k`-derivatives.
    fn coefficient_series(&self, k: f64) -> [[f64; 3]; 3] {
        let (s, c) = k.sin_cos();
        let (s2, c2) = (s * s, c * c);
        // sin²k cos k and its derivatives
        let f = s2 * c;
        let f1 = 2.0 * s * c2 - s2 * s;
        let f2 = 2.0 * c2 * c - 7.0 * s2 * c;
        [
            [
                self.d * c - self.d * self.e * f,
                self.b * s2 + self.c,
                -self.a * c,
            ],
            [
                -self.d * s - self.d * self.e * f1,
                2.0 * self.b * s * c,
                self.a * s,
            ],
            [
                -self.d * c - self.d * self.e * f2,
                2.0 * self.b * (c2 - s2),
                self.a * c,
            ],
        ]
    }

    pub fn poly(&self, k: f64) -> PolyCoeffs {
        let [a, _, _] = self.coefficient_series(k);
        PolyCoeffs::from_real(&[a[0], a[1], a[2], 1.0])
    }

    fn partials(&self, l: Complex, k: f64) -> CubicPartials {
        let [a, da, dda] = self.coefficient_series(k);
        CubicPartials {
            g_l: l * l * 3.0 + l * (2.0 * a[2]) + a[1],
            g_ll: l * 6.0 + 2.0 * a[2],
            g_k: l * l * da[2] + l * da[1] + da[0],
            g_kk: l * l * dda[2] + l * dda[1] + dda[0],
            g_lk: l * (2.0 * da[2]) + da[1],
        }
    }
}

/// `G(λ)` at wavenumber `k`, monic, ascending coefficients.
pub fn cubic_factor(params: &WalkParameters, k: f64) -> PolyCoeffs {
    CubicFactor::new(params).poly(k)
}

fn nearest(roots: &[Complex], target: Complex) -> usize {
    roots
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| (*a - target).norm().total_cmp(&(*b - target).norm()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// The root of `G(·; k)` continuing `λ₁(0) = 1`, followed from `k = 0` in steps
/// of at most [`TRACK_STEP`] by nearest-neighbour matching. `k` is first
/// wrapped into `[−π, π)`.
pub fn perron_root(params: &WalkParameters, k: f64) -> Result<Complex> {
    let k = (k + PI).rem_euclid(TAU) - PI;
    let cubic = CubicFactor::new(params);
    let steps = (k.abs() / TRACK_STEP).ceil() as usize;
    let mut current = Complex::new(1.0, 0.0);
    for s in 0..=steps {
        let ks = if steps == 0 {
            0.0
        } else {
            k * s as f64 / steps as f64
        };
        let roots = poly_roots(&cubic.poly(ks))?;
        current = roots[nearest(&roots, current)];
    }
    Ok(current)
}

/// `λ₁′(0)` and `λ₁″(0)` by implicit differentiation of `G(λ₁(k); k) = 0` at
/// `(λ, k) = (1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerronDerivatives {
    pub first: Complex,
    pub second: f64,
}

pub fn perron_derivatives(params: &WalkParameters) -> Result<PerronDerivatives> {
    let gap = params.c0() - params.s0() * params.s1();
    if gap.abs() <= DEFAULT_EPS {
        return Err(Error::DegenerateEigenvalue(format!(
            "c0 − s0s1 = {gap:e}; λ = 1 is a double root"
        )));
    }
    let mut d = CubicFactor::new(params).partials(Complex::new(1.0, 0.0), 0.0);
    // At (1, 0), ∂G/∂λ = 3 − 2A + C = 2(c0 − s0s1)²; the factored form keeps
    // full relative precision near the ballistic manifold.
    d.g_l = Complex::new(2.0 * gap * gap, 0.0);
    if d.g_l.norm() <= 1e-12 {
        return Err(Error::DegenerateEigenvalue(format!(
            "∂G/∂λ = {:e} at (1, 0)",
            d.g_l.norm()
        )));
    }
    let first = -d.g_k / d.g_l;
    let second = -(d.g_ll * first * first + d.g_lk * first * 2.0 + d.g_kk) / d.g_l;
    Ok(PerronDerivatives {
        first,
        second: second.re,
    })
}

/// Eigenvalues and eigenvectors of `Û(k)` with the role ordering of
/// [`SpectrumReport`].
///
/// On `c0 = s0s1` the closed-form branches
/// `λ₁,₂ = s0²{(1+s1²)cos k ∓ i c1√(1+3s1²) sin k}`, `λ₃ = λ₄ = −2s0²s1² cos k`
/// are used directly. Otherwise the spectrum is the root `−2c0s0s1 cos k` of
/// the linear factor plus the roots of [`cubic_factor`].
pub fn spectrum(params: &WalkParameters, k: f64) -> Result<SpectrumReport> {
    let generator = twisted_generator(params, k).matrix;
    let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
    let case_a = (c0 - s0 * s1).abs() <= DEFAULT_EPS;

    let (eigenvalues, representatives, cubic) = if case_a {
        let root = (1.0 + 3.0 * s1 * s1).sqrt();
        let (sk, ck) = k.sin_cos();
        let re = s0 * s0 * (1.0 + s1 * s1) * ck;
        let im = s0 * s0 * c1 * root * sk;
        let low = Complex::new(-2.0 * s0 * s0 * s1 * s1 * ck, 0.0);
        let values = [Complex::new(re, -im), Complex::new(re, im), low, low];
        let reps = if s1.abs() > DEFAULT_EPS {
            let v = case_a_vectors(params, k);
            [Some(v[0]), Some(v[1]), Some(v[2]), Some(v[3])]
        } else {
            [None; 4]
        };
        (values, reps, None)
    } else {
        let g = cubic_factor(params, k);
        let (lead, mut roots) = if k == 0.0 {
            (
                Complex::new(1.0, 0.0),
                deflated_roots_at_zero(params).to_vec(),
            )
        } else {
            let mut roots = poly_roots(&g)?;
            let perron = perron_root(params, k)?;
            (roots.remove(nearest(&roots, perron)), roots)
        };
        roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        let linear = Complex::new(-2.0 * c0 * s0 * s1 * k.cos(), 0.0);
        let values = [lead, roots[0], roots[1], linear];
        let antisym = Some(Vec4::from_real([0.0, 0.0, -1.0, 1.0]));
        let reps = if k == 0.0 {
            let v = generic_vectors_at_zero(params);
            [Some(v[0]), Some(v[1]), Some(v[2]), antisym]
        } else {
            [None, None, None, antisym]
        };
        (values, reps, Some(g))
    };

    let eigenvectors = assign_eigenvectors(&generator, &eigenvalues, &representatives);
    Ok(SpectrumReport {
        k,
        eigenvalues,
        eigenvectors,
        char_poly: char_poly(&generator),
        cubic_factor: cubic,
        discriminant: discriminant(params),
    })
}

/// At `k = 0`, `G(λ) = (λ − 1)(λ² − aλ − D)` with `a = s0²c1² − (c0 − s0s1)²`
/// and `a² + 4D = J`; the quadratic is solved without cancellation.
fn deflated_roots_at_zero(params: &WalkParameters) -> [Complex; 2] {
    let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
    let a = Complex::new((s0 * c1).powi(2) - (c0 - s0 * s1).powi(2), 0.0);
    let d = 2.0 * c0 * s0 * s1;
    let root_j = Complex::new(discriminant(params), 0.0).sqrt();
    let (plus, minus) = (a + root_j, a - root_j);
    let big = if plus.norm() >= minus.norm() {
        plus / 2.0
    } else {
        minus / 2.0
    };
    if big.norm() == 0.0 {
        return [big, big];
    }
    [big, -d / big]
}

/// Closed-form eigenvectors on `c0 = s0s1` (valid for `s1 ≠ 0`).
fn case_a_vectors(params: &WalkParameters, k: f64) -> [Vec4; 4] {
    let (c1, s1) = (params.c1(), params.s1());
    let root = (1.0 + 3.0 * s1 * s1).sqrt();
    let phase = Complex::from_polar(1.0, k);
    let (sk, ck) = k.sin_cos();
    let i = Complex::new(0.0, 1.0);
    let branch = |sign: f64| {
        let r = sign * root;
        let head = (Complex::new(1.0, 0.0) + phase * phase) * (2.0 * s1 * s1) + c1 * (c1 + r);
        let second = phase * (4.0 * s1 * s1 * sign) * (i * (-c1 * sk) * sign + r * ck);
        Vector([
            head * (c1 + r),
            second,
            head * (2.0 * s1),
            head * (2.0 * s1),
        ])
    };
    [
        branch(1.0),
        branch(-1.0),
        Vec4::from_real([0.0, 0.0, -1.0, 1.0]),
        Vec4::from_real([-2.0 * s1, 2.0 * s1, c1, c1]),
    ]
}

/// Eigenvector representatives at `k = 0` when `c0 ≠ s0s1`.
fn generic_vectors_at_zero(params: &WalkParameters) -> [Vec4; 3] {
    let (c0, s0, c1, s1) = (params.c0(), params.s0(), params.c1(), params.s1());
    let sqrt_j = Complex::new(discriminant(params), 0.0).sqrt();
    let base = -c0 * c0 - 2.0 * c0 * s0 * s1 + s0 * s0 * (c1 * c1 - s1 * s1);
    let tail = Complex::new(4.0 * c0 * s0 * c1, 0.0);
    let branch = |head: Complex| Vector([head, -head, tail, tail]);
    [
        Vec4::from_real([1.0, 1.0, 0.0, 0.0]),
        branch(sqrt_j + base),
        branch(-sqrt_j + base),
    ]
}

/// Uses each representative when it is a genuine eigenvector, otherwise
/// solves for the null space of `Û − λI`, handing out distinct basis vectors
/// to repeated eigenvalues.
fn assign_eigenvectors(
    generator: &Mat4,
    eigenvalues: &[Complex; 4],
    representatives: &[Option<Vec4>; 4],
) -> [Vec4; 4] {
    let mut out = [Vec4::zeros(); 4];
    let mut solved: Vec<(Complex, Vec<Vec4>, usize)> = Vec::new();
    for j in 0..4 {
        let lambda = eigenvalues[j];
        if let Some(v) = representatives[j] {
            if v.max_abs() > 1e-12 && eigen_residual(generator, lambda, &v) <= REPRESENTATIVE_TOL {
                out[j] = v;
                continue;
            }
        }
        let slot = match solved
            .iter()
            .position(|(l, _, _)| (*l - lambda).norm() <= CLUSTER_RADIUS)
        {
            Some(i) => i,
            None => {
                solved.push((lambda, eigenspace(generator, lambda), 0));
                solved.len() - 1
            }
        };
        let (_, basis, used) = &mut solved[slot];
        out[j] = basis[(*used).min(basis.len() - 1)];
        *used += 1;
    }
    out
}

fn eigenspace(generator: &Mat4, lambda: Complex) -> Vec<Vec4> {
    let shifted = *generator - Mat4::identity().scale(lambda);
    let basis = null_space(&shifted);
    if !basis.is_empty() {
        return basis;
    }
    // λ is slightly off: a few steps of inverse iteration recover the vector.
    let mut v = Vec4::from_real([1.0, 0.7, 0.4, 0.2]);
    let perturbed = *generator - Mat4::identity().scale(lambda + Complex::new(1e-10, 1e-10));
    for _ in 0..3 {
        if let Some(next) = solve(&perturbed, &v) {
            v = normalize_eigenvector(&next);
        }
    }
    vec![v]
}

/// Gaussian elimination with partial pivoting; `None` if singular.
fn solve(m: &Mat4, rhs: &Vec4) -> Option<Vec4> {
    let mut a = m.entries;
    let mut b = rhs.0;
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..4 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (x, &p) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                *x -= f * p;
            }
            let delta = f * b[col];
            b[row] -= delta;
        }
    }
    let mut x = [Complex::new(0.0, 0.0); 4];
    for row in (0..4).rev() {
        let tail: Complex = ((row + 1)..4).map(|j| a[row][j] * x[j]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(Vector(x))
}
