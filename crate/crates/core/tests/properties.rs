use proptest::prelude::*;
use tcn_core::blaschke::{eval_on_circle, BlaschkeFactor};
use tcn_core::linalg::{self, DenseMatrix};
use tcn_core::model::{self, DEFECT_TOL};
use tcn_core::toeplitz::{
    apply_calculus, commutes_with_shift, condition_number, jordan_block, reciprocal_series, AnalyticPolynomial,
};
use tcn_core::Complex64;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im))
}

fn square(max_n: usize) -> impl Strategy<Value = DenseMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(complex(), n * n)
            .prop_map(move |v| DenseMatrix::from_row_major(n, n, v).unwrap())
    })
}

fn polynomial(n: usize) -> impl Strategy<Value = AnalyticPolynomial> {
    prop::collection::vec(complex(), n).prop_map(|v| AnalyticPolynomial::new(v).unwrap())
}

/// Polynomial with `|a₀| ≥ 0.5` and the tail scaled down so that it stays
/// well conditioned.
fn invertible_polynomial(n: usize) -> impl Strategy<Value = AnalyticPolynomial> {
    (0.5f64..1.0, 0.0f64..std::f64::consts::TAU, prop::collection::vec(complex(), n - 1)).prop_map(
        |(m, t, tail)| {
            let mut c = vec![Complex64::from_polar(m, t)];
            c.extend(tail.into_iter().map(|x| x * 0.3));
            AnalyticPolynomial::new(c).unwrap()
        },
    )
}

fn zero_in_disk(max_r: f64) -> impl Strategy<Value = Complex64> {
    (0.0f64..max_r, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_norm_is_homogeneous(a in square(8), c in complex()) {
        let lhs = linalg::norm2(&a.scale(c)).unwrap();
        let rhs = c.norm() * linalg::norm2(&a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1e-300));
    }

    #[test]
    fn spectral_norm_between_max_entry_and_frobenius(a in square(8)) {
        let s = linalg::norm2(&a).unwrap();
        prop_assert!(s <= a.frobenius_norm() * (1.0 + 1e-12));
        prop_assert!(s >= a.max_abs() * (1.0 - 1e-12));
    }

    #[test]
    fn condition_number_at_least_one(f in invertible_polynomial(6)) {
        let cn = condition_number(&f.to_matrix(6)).unwrap();
        prop_assert!(cn >= 1.0 - 1e-12);
    }

    #[test]
    fn solve_residual_is_small(n in 1usize..=64, seed in any::<u64>()) {
        // Diagonally weighted random matrix; residual relative to ‖b‖.
        let mut state = seed | 1;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let a = DenseMatrix::from_fn(n, n, |i, j| {
            let d = if i == j { n as f64 } else { 0.0 };
            Complex64::new(next() + d, next())
        });
        let b: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
        let x = linalg::solve(&a, &b).unwrap();
        let ax = a.matvec(&x).unwrap();
        let res = ax.iter().zip(&b).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
        let bn = b.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(res <= 1e-10 * bn.max(1.0));
    }

    #[test]
    fn shift_is_nilpotent(n in 1usize..=16) {
        let m = jordan_block(n).unwrap();
        prop_assert_eq!(m.pow(n as u32).unwrap().max_abs(), 0.0);
        if n > 1 {
            prop_assert!(m.pow(n as u32 - 1).unwrap().max_abs() == 1.0);
        }
    }

    #[test]
    fn calculus_matrices_commute_with_shift(f in polynomial(7)) {
        let a = apply_calculus(&f, 7).unwrap().to_dense();
        prop_assert!(commutes_with_shift(&a).unwrap());
    }

    #[test]
    fn non_toeplitz_perturbation_breaks_commutation(
        f in polynomial(5), i in 0usize..5, j in 0usize..5, eps in 1e-3f64..1.0
    ) {
        // The bottom-left corner is the zⁿ⁻¹ coefficient, still Toeplitz.
        prop_assume!(!(i == 4 && j == 0));
        let mut a = apply_calculus(&f, 5).unwrap().to_dense();
        a[(i, j)] += Complex64::new(eps, 0.0);
        prop_assert!(!commutes_with_shift(&a).unwrap());
    }

    #[test]
    fn calculus_is_multiplicative(f in polynomial(6), g in polynomial(6)) {
        let lhs = apply_calculus(&f.mul_trunc(&g), 6).unwrap().to_dense();
        let rhs = apply_calculus(&f, 6).unwrap().to_dense().matmul(&apply_calculus(&g, 6).unwrap().to_dense()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn calculus_is_additive(f in polynomial(6), g in polynomial(6)) {
        let sum: Vec<Complex64> = f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| a + b).collect();
        let lhs = apply_calculus(&AnalyticPolynomial::new(sum).unwrap(), 6).unwrap().to_dense();
        let rhs = &apply_calculus(&f, 6).unwrap().to_dense() + &apply_calculus(&g, 6).unwrap().to_dense();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-15);
    }

    #[test]
    fn reciprocal_is_matrix_inverse(f in invertible_polynomial(9)) {
        let g = reciprocal_series(&f).unwrap();
        let prod = f.to_matrix(9).matmul(&g.to_matrix(9)).unwrap();
        prop_assert!(prod.max_abs_diff(&DenseMatrix::identity(9)) <= 1e-10);
    }

    #[test]
    fn blaschke_is_unimodular(lambda in zero_in_disk(0.99)) {
        let b = BlaschkeFactor::new(lambda).unwrap();
        for v in eval_on_circle(&b, 64).unwrap() {
            prop_assert!((v - 1.0).abs() <= 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn model_operator_structure(zeros in prop::collection::vec(zero_in_disk(0.8), 1..=5)) {
        let op = model::model_operator(&zeros, 1024).unwrap();
        let m = op.matrix();
        prop_assert!(m.is_lower_triangular(1e-8));
        for (d, z) in m.diag().iter().zip(&zeros) {
            prop_assert!((d - z).norm() <= 1e-8);
        }
        prop_assert!(linalg::norm2(m).unwrap() <= 1.0 + 1e-8);
        prop_assert_eq!(linalg::defect_rank(m, DEFECT_TOL).unwrap(), 1);
    }
}

trait ToMatrix {
    fn to_matrix(&self, n: usize) -> DenseMatrix;
}

impl ToMatrix for AnalyticPolynomial {
    fn to_matrix(&self, n: usize) -> DenseMatrix {
        apply_calculus(self, n).unwrap().to_dense()
    }
}

#[test]
fn model_approaches_unitary_near_circle() {
    let lambda = Complex64::from_polar(0.999, 0.4);
    let op = model::model_operator(&[lambda], 4096).unwrap();
    let sv = linalg::defect_singular_values(op.matrix(), DEFECT_TOL).unwrap();
    assert!(sv.iter().all(|s| *s < 1e-2), "{sv:?}");
}
