use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense `N`×`N` complex matrix stored row-major on the stack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<const N: usize> {
    pub entries: [[Complex; N]; N],
}

pub type Mat2 = Matrix<2>;
pub type Mat4 = Matrix<4>;

/// Complex column vector of fixed length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vector<const N: usize>(pub [Complex; N]);

pub type Vec2 = Vector<2>;
pub type Vec4 = Vector<4>;

impl<const N: usize> Matrix<N> {
    pub const fn from_entries(entries: [[Complex; N]; N]) -> Self {
        Self { entries }
    }

    pub fn zeros() -> Self {
        Self {
            entries: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub fn from_real(entries: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (row, src) in m.entries.iter_mut().zip(entries.iter()) {
            for (z, &x) in row.iter_mut().zip(src.iter()) {
                *z = Complex::new(x, 0.0);
            }
        }
        m
    }

    pub fn diagonal(diag: [Complex; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i][i] = d;
        }
        m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[j][i] = self.entries[i][j].conj();
            }
        }
        m
    }

    /// Entry-wise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.entries[j][i] = self.entries[i][j];
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        let mut m = *self;
        for row in m.entries.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        m
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn mul_vec(&self, v: &Vector<N>) -> Vector<N> {
        let mut out = [ZERO; N];
        for (o, row) in out.iter_mut().zip(self.entries.iter()) {
            *o = row.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum();
        }
        Vector(out)
    }

    /// Largest entry-wise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .flat_map(|row| row.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Standard matrix product; the free-function form of `a * b`.
pub fn mat_mul<const N: usize>(a: &Matrix<N>, b: &Matrix<N>) -> Matrix<N> {
    let mut m = Matrix::zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a.entries[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..N {
                m.entries[i][j] += aik * b.entries[k][j];
            }
        }
    }
    m
}

pub fn adjoint<const N: usize>(a: &Matrix<N>) -> Matrix<N> {
    a.adjoint()
}

impl Mat2 {
    pub fn new(a00: Complex, a01: Complex, a10: Complex, a11: Complex) -> Self {
        Self::from_entries([[a00, a01], [a10, a11]])
    }

    pub fn det(&self) -> Complex {
        let [[a, b], [c, d]] = self.entries;
        a * d - b * c
    }

    /// `self · rho · self†`.
    pub fn conjugate(&self, rho: &Mat2) -> Mat2 {
        mat_mul(&mat_mul(self, rho), &self.adjoint())
    }
}

impl<const N: usize> Default for Matrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.entries[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.entries[i][j]
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, rhs: Self) -> Self {
        mat_mul(&self, &rhs)
    }
}

impl<const N: usize> Mul<Vector<N>> for Matrix<N> {
    type Output = Vector<N>;
    fn mul(self, rhs: Vector<N>) -> Vector<N> {
        self.mul_vec(&rhs)
    }
}

impl<const N: usize> Mul<Complex> for Matrix<N> {
    type Output = Matrix<N>;
    fn mul(self, rhs: Complex) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Matrix<N>;
    fn add(mut self, rhs: Self) -> Self {
        for (row, r) in self.entries.iter_mut().zip(rhs.entries.iter()) {
            for (z, w) in row.iter_mut().zip(r.iter()) {
                *z += w;
            }
        }
        self
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Matrix<N>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Matrix<N>;
    fn neg(self) -> Self {
        self.map(|z| -z)
    }
}

impl<const N: usize> Vector<N> {
    pub fn zeros() -> Self {
        Vector([ZERO; N])
    }

    pub fn from_real(v: [f64; N]) -> Self {
        Vector(v.map(|x| Complex::new(x, 0.0)))
    }

    /// Hermitian inner product `⟨self|other⟩` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> Complex {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex) -> Self {
        Vector(self.0.map(|z| z * s))
    }
}

impl<const N: usize> Index<usize> for Vector<N> {
    type Output = Complex;
    fn index(&self, i: usize) -> &Complex {
        &self.0[i]
    }
}

impl<const N: usize> IndexMut<usize> for Vector<N> {
    fn index_mut(&mut self, i: usize) -> &mut Complex {
        &mut self.0[i]
    }
}

impl<const N: usize> Add for Vector<N> {
    type Output = Vector<N>;
    fn add(mut self, rhs: Self) -> Self {
        for (z, w) in self.0.iter_mut().zip(rhs.0.iter()) {
            *z += w;
        }
        self
    }
}

impl<const N: usize> Sub for Vector<N> {
    type Output = Vector<N>;
    fn sub(mut self, rhs: Self) -> Self {
        for (z, w) in self.0.iter_mut().zip(rhs.0.iter()) {
            *z -= w;
        }
        self
    }
}

/// True iff `m` is Hermitian within `tol` (max-norm) and the eigenvalues of
/// its Hermitian part are all ≥ `-tol`.
pub fn is_hermitian_psd(m: &Mat2, tol: f64) -> bool {
    if (*m - m.adjoint()).max_abs() > tol {
        return false;
    }
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
    let mid = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    mid - half_gap >= -tol
}
