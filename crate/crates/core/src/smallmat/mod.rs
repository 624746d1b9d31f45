//! Fixed-size complex linear algebra: 2×2 and 4×4 matrices, 4-vectors, and
//! the characteristic-polynomial eigen machinery built on them.

mod eigen;
mod matrix;
mod poly;

pub use num_complex::Complex64 as Complex;

pub use eigen::{eigen_residual, normalize_eigenvector, null_space};
pub use matrix::{adjoint, is_hermitian_psd, mat_mul, Mat2, Mat4, Matrix, Vec2, Vec4, Vector};
pub use poly::{
    char_poly, poly_roots, poly_roots_with, sort_roots, PolyCoeffs, CLUSTER_RADIUS,
    DEFAULT_MAX_ITERATIONS, ROOT_RESIDUAL_TOL,
};
