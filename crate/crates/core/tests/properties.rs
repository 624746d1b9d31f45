mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::{lambda_second_closed, params};
use oqw::phases::{
    ballistic_constant, ballistic_set, classify, diffusion_constant, moments_case_a,
    moments_case_b, PhaseKind, PhaseSubcase, DEFAULT_EPS,
};
use oqw::simulate::{distribution, evolve, moments};
use oqw::smallmat::{adjoint, char_poly, mat_mul, Complex, Mat2, Mat4, Matrix};
use oqw::spectral::{
    conjugation_superop, evolve_fourier, perron_derivatives, reconstruct_distribution,
    reduced_generator, spectrum, twisted_generator, vectorize,
};
use oqw::walk::{build_kraus, parse_angle, AngleSpec, WalkParameters};
use proptest::prelude::*;

fn angle() -> impl Strategy<Value = f64> {
    0.0..TAU
}

fn complex() -> impl Strategy<Value = Complex> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex::new(re, im))
}

fn matrix<const N: usize>() -> impl Strategy<Value = Matrix<N>> {
    proptest::collection::vec(complex(), N * N).prop_map(|v| {
        let mut m = Matrix::<N>::zeros();
        for (idx, z) in v.into_iter().enumerate() {
            m[(idx / N, idx % N)] = z;
        }
        m
    })
}

fn walk() -> impl Strategy<Value = WalkParameters> {
    (angle(), angle(), 0.0..=1.0f64).prop_map(|(a, b, p)| params(a, b, p))
}

/// A point of the ballistic manifold, away from `c1 = 0`.
fn ballistic_walk() -> impl Strategy<Value = WalkParameters> {
    (0.26 * PI..0.74 * PI, any::<bool>(), 0.0..=1.0f64).prop_filter_map(
        "c1 = 0",
        |(t0, high, p)| {
            let set = ballistic_set(t0);
            let t1 = *if high { set.last() } else { set.first() }?;
            let pr = params(t0, t1, p);
            (classify(&pr, DEFAULT_EPS).kind == PhaseKind::BallisticCaseA).then_some(pr)
        },
    )
}

/// `s0c1 = 0`, through either factor, off the `c0 = s0s1` line.
fn parity_walk() -> impl Strategy<Value = WalkParameters> {
    (angle(), any::<bool>(), any::<bool>(), 0.0..=1.0f64).prop_filter_map(
        "c0 = s0s1",
        |(free, upper, pin_theta1, p)| {
            let pr = if pin_theta1 {
                params(free, if upper { 1.5 * PI } else { FRAC_PI_2 }, p)
            } else {
                params(if upper { PI } else { 0.0 }, free, p)
            };
            (classify(&pr, DEFAULT_EPS).subcase == PhaseSubcase::ParityS0C1Zero).then_some(pr)
        },
    )
}

/// Leibniz expansion of `det(m)` over all 24 permutations.
fn leibniz_det(m: &Mat4) -> Complex {
    let mut total = Complex::new(0.0, 0.0);
    let mut perm = [0usize, 1, 2, 3];
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        total += (0..4).map(|i| m[(i, p[i])]).product::<Complex>() * sign;
    });
    total
}

fn permute(p: &mut [usize; 4], at: usize, visit: &mut impl FnMut(&[usize; 4])) {
    if at == 4 {
        visit(p);
        return;
    }
    for i in at..4 {
        p.swap(at, i);
        permute(p, at + 1, visit);
        p.swap(at, i);
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn char_poly_matches_determinant(m in matrix::<4>(), z in complex()) {
        let shifted = Mat4::identity().scale(z) - m;
        let want = leibniz_det(&shifted);
        prop_assert!((char_poly(&m).eval(z) - want).norm() < 1e-12);
    }

    #[test]
    fn superoperator_reproduces_conjugation(a in matrix::<2>(), rho in matrix::<2>()) {
        let direct = vectorize(&a.conjugate(&rho));
        let lifted = conjugation_superop(&a) * vectorize(&rho);
        prop_assert!((direct - lifted).max_abs() < 1e-12);
    }

    #[test]
    fn matrix_algebra(a in matrix::<4>(), b in matrix::<4>(), c in matrix::<4>()) {
        let left = mat_mul(&mat_mul(&a, &b), &c);
        let right = mat_mul(&a, &mat_mul(&b, &c));
        prop_assert!((left - right).max_abs() < 1e-13);
        prop_assert_eq!(adjoint(&adjoint(&a)), a);
        prop_assert!((adjoint(&mat_mul(&a, &b)) - mat_mul(&adjoint(&b), &adjoint(&a))).max_abs() < 1e-14);
    }

    #[test]
    fn kraus_pair_is_trace_preserving(pr in walk()) {
        prop_assert!(build_kraus(&pr).trace_defect() < 1e-15);
    }

    #[test]
    fn evolution_conserves_probability(pr in walk(), t in 0usize..60) {
        let state = evolve(&pr, t);
        prop_assert!(state.check_invariants(1e-12).is_ok());
        let d = distribution(&state);
        prop_assert!((d.total() - 1.0).abs() < 1e-13);
        // one step moves one site, and only sites of the parity of t are reached
        prop_assert!(d.entries.keys().all(|&x| x.unsigned_abs() as usize <= t && (x + t as i64) % 2 == 0));
    }

    #[test]
    fn pi_fractions_round_trip(num in -40i64..40, den in 1i64..24) {
        let spec = parse_angle(&format!("{num}*pi/{den}")).unwrap();
        let again = parse_angle(&spec.to_string()).unwrap();
        prop_assert_eq!(spec, again);
        let want = (num as f64 * PI / den as f64).rem_euclid(TAU);
        let got = spec.radians().unwrap();
        prop_assert!((got - want).abs() < 1e-12 || (TAU - (got - want).abs()) < 1e-12);
    }

    #[test]
    fn decimal_angles_round_trip(x in angle()) {
        let spec = parse_angle(&AngleSpec::Radians(x).to_string()).unwrap();
        prop_assert_eq!(spec.radians().unwrap().to_bits(), x.to_bits());
    }

    #[test]
    fn spectrum_at_zero(pr in walk()) {
        let s = spectrum(&pr, 0.0).unwrap();
        let u = twisted_generator(&pr, 0.0).matrix;
        prop_assert!(s.max_eigen_residual(&u) < 1e-9);
        let direct = char_poly(&u);
        prop_assert!(direct.max_coeff_diff(&s.char_poly) < 1e-12);
        if let Some(r) = s.factorization_residual() {
            prop_assert!(r < 1e-9);
        }
        prop_assert!(s.eigenvalues.iter().all(|l| l.norm() <= 1.0 + 1e-10));
        prop_assert!(s.eigenvalues.iter().any(|l| (l - 1.0).norm() <= 1e-10));
    }

    #[test]
    fn spectrum_away_from_zero(pr in walk(), k in -PI..PI) {
        let s = spectrum(&pr, k).unwrap();
        prop_assert!(s.max_eigen_residual(&twisted_generator(&pr, k).matrix) < 1e-7);
        prop_assert!(s.eigenvalues.iter().all(|l| l.norm() <= 1.0 + 1e-9));
    }

    #[test]
    fn case_a_moments_are_exact(pr in ballistic_walk(), t in 0usize..80) {
        let sim = moments(&evolve(&pr, t));
        let exact = moments_case_a(&pr, t).unwrap();
        let scale = 1.0 + (t * t) as f64;
        prop_assert!((sim.e1 - exact.e1).abs() < 1e-11 * scale);
        prop_assert!((sim.e2 - exact.e2).abs() < 1e-11 * scale);
    }

    #[test]
    fn case_b_moments_are_exact(pr in parity_walk(), t in 0usize..80) {
        let sim = moments(&evolve(&pr, t));
        let exact = moments_case_b(&pr, t).unwrap();
        let scale = 1.0 + (t * t) as f64;
        prop_assert!((sim.e1 - exact.e1).abs() < 1e-11 * scale);
        prop_assert!((sim.e2 - exact.e2).abs() < 1e-11 * scale);
    }

    #[test]
    fn reduced_dynamics_match_full(pr in prop_oneof![parity_walk(), (angle(), 0.0..=1.0f64).prop_map(|(t1, p)| params(FRAC_PI_2, t1, p))],
                                   k in -PI..PI, t in 0usize..30) {
        // the Gram solve degenerates where the two reduced eigenvectors meet
        if let Ok(r) = reduced_generator(&pr, k) {
            let full = evolve_fourier(&pr, k, t).characteristic();
            prop_assert!((r.characteristic(t) - full).norm() < 1e-9);
        }
    }

    #[test]
    fn diffusion_constant_is_the_curvature(pr in walk()) {
        prop_assume!(classify(&pr, DEFAULT_EPS).kind == PhaseKind::DiffusiveGeneric);
        prop_assume!((pr.c0() - pr.s0() * pr.s1()).abs() > 1e-3);
        let d = diffusion_constant(&pr).unwrap();
        let second = perron_derivatives(&pr).unwrap().second;
        prop_assert!(close(d * d, -second, 1e-8));
        prop_assert!(close(second, lambda_second_closed(&pr), 1e-8));
    }

    #[test]
    fn diffusion_constant_ignores_p(pr in walk(), q in 0.0..=1.0f64) {
        prop_assume!(classify(&pr, DEFAULT_EPS).kind == PhaseKind::DiffusiveGeneric);
        let other = pr.with_p(q).unwrap();
        prop_assert_eq!(diffusion_constant(&pr).unwrap(), diffusion_constant(&other).unwrap());
    }

    #[test]
    fn ballistic_constant_shrinks_with_bias(pr in ballistic_walk(), a in 0.0..=1.0f64, b in 0.0..=1.0f64) {
        let (near, far) = if (2.0 * a - 1.0).abs() <= (2.0 * b - 1.0).abs() { (a, b) } else { (b, a) };
        let vn = ballistic_constant(&pr.with_p(near).unwrap()).unwrap();
        let vf = ballistic_constant(&pr.with_p(far).unwrap()).unwrap();
        prop_assert!(vn >= vf - 1e-15);
    }

    #[test]
    fn classification_is_stable_off_the_manifold(pr in walk(), eps in 1e-12..1e-6f64) {
        let gap = (pr.c0() - pr.s0() * pr.s1()).abs().min(pr.c1().abs());
        let sub = (pr.s0() * pr.c1()).abs().min(pr.c0().abs());
        prop_assume!(gap > 1e-5 && sub > 1e-5);
        prop_assert_eq!(classify(&pr, DEFAULT_EPS), classify(&pr, eps));
    }

    #[test]
    fn ballistic_set_lies_on_the_manifold(t0 in angle()) {
        for t1 in ballistic_set(t0) {
            let pr = params(t0, t1, 0.5);
            prop_assert!((pr.c0() - pr.s0() * pr.s1()).abs() < 1e-12);
            prop_assert!(pr.c1().abs() > DEFAULT_EPS);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fourier_reconstruction_matches_simulation(pr in walk(), t in 0usize..40) {
        let direct = distribution(&evolve(&pr, t));
        let fourier = reconstruct_distribution(&pr, t).unwrap();
        prop_assert!(direct.max_abs_diff(&fourier) < 1e-12);
    }
}

#[test]
fn superoperator_of_product_is_product_of_superoperators() {
    let a = Mat2::from_real([[0.3, -0.7], [0.2, 0.9]]);
    let b = Mat2::new(
        Complex::new(0.1, 0.4),
        Complex::new(-0.5, 0.0),
        Complex::new(0.0, 1.0),
        Complex::new(0.6, -0.2),
    );
    let lhs = conjugation_superop(&mat_mul(&a, &b));
    let rhs = conjugation_superop(&a) * conjugation_superop(&b);
    assert!((lhs - rhs).max_abs() < 1e-15);
}
