use super::{Complex, Matrix, Vector};

/// Relative pivot threshold below which a column is declared free.
const RANK_TOL: f64 = 1e-8;

/// Basis of the (numerical) null space of `m`, by Gaussian elimination with
/// complete pivoting. Each basis vector is normalised with [`normalize_eigenvector`].
pub fn null_space<const N: usize>(m: &Matrix<N>) -> Vec<Vector<N>> {
    let mut a = m.entries;
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut col_perm: [usize; N] = std::array::from_fn(|i| i);
    let mut rank = 0;

    for step in 0..N {
        let mut best = (step, step, 0.0);
        for (i, row) in a.iter().enumerate().skip(step) {
            for (j, z) in row.iter().enumerate().skip(step) {
                if z.norm() > best.2 {
                    best = (i, j, z.norm());
                }
            }
        }
        if best.2 <= RANK_TOL * scale {
            break;
        }
        a.swap(step, best.0);
        for row in a.iter_mut() {
            row.swap(step, best.1);
        }
        col_perm.swap(step, best.1);

        let pivot = a[step][step];
        for i in 0..N {
            if i == step {
                continue;
            }
            let factor = a[i][step] / pivot;
            if factor == Complex::new(0.0, 0.0) {
                continue;
            }
            let pivot_row = a[step];
            for (x, &p) in a[i].iter_mut().zip(&pivot_row).skip(step) {
                *x -= factor * p;
            }
        }
        rank += 1;
    }

    // Reduced form: pivot rows read x_p = −Σ_free (a[p][f]/a[p][p]) x_f.
    (rank..N)
        .map(|free| {
            let mut permuted = [Complex::new(0.0, 0.0); N];
            permuted[free] = Complex::new(1.0, 0.0);
            for p in 0..rank {
                permuted[p] = -a[p][free] / a[p][p];
            }
            let mut v = [Complex::new(0.0, 0.0); N];
            for (slot, &orig) in col_perm.iter().enumerate() {
                v[orig] = permuted[slot];
            }
            normalize_eigenvector(&Vector(v))
        })
        .collect()
}

/// Scales `v` so its largest component has modulus one and its first
/// non-negligible component is real and positive.
pub fn normalize_eigenvector<const N: usize>(v: &Vector<N>) -> Vector<N> {
    let max = v.max_abs();
    if max == 0.0 {
        return *v;
    }
    let lead =
        v.0.iter()
            .find(|z| z.norm() > 1e-12 * max)
            .copied()
            .unwrap_or(Complex::new(1.0, 0.0));
    let phase = lead.conj() / lead.norm();
    v.scale(phase / max)
}

/// `‖m v − λ v‖ / ‖v‖`.
pub fn eigen_residual<const N: usize>(m: &Matrix<N>, lambda: Complex, v: &Vector<N>) -> f64 {
    let r = m.mul_vec(v) - v.scale(lambda);
    r.norm() / v.norm().max(f64::MIN_POSITIVE)
}
