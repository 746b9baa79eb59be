//! Compressed shift on the model space `K_B` of a finite Blaschke product.
//!
//! The matrix is taken in the Malmquist–Walsh basis
//!
//! ```text
//! e_k(z) = √(1 − |λ_k|²) / (1 − λ̄_k z) · ∏_{j<k} (z − λ_j)/(1 − λ̄_j z)
//! ```
//!
//! whose entries `⟨z e_k, e_l⟩` are computed by trapezoidal quadrature on the
//! unit circle. The partial products use the factors `(z − λ)/(1 − λ̄z)`, i.e.
//! `−b_λ`, so that the all-zero configuration reproduces the Jordan block
//! exactly rather than up to a diagonal sign change.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::circle_points;
use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};

pub const DEFAULT_MODEL_SAMPLES: usize = 4096;
/// Largest sample count tried by the automatic refinement.
pub const MAX_MODEL_SAMPLES: usize = 1 << 20;
/// Gram deviation at which refinement stops.
pub const GRAM_TARGET: f64 = 1e-8;
/// Gram deviation above which the construction is rejected.
pub const GRAM_LIMIT: f64 = 1e-6;
/// Tolerance on `‖M_B‖ = 1` and on `rⁿ‖M_B⁻¹‖ = 1` in extremality checks.
pub const EXTREMAL_TOL: f64 = 1e-6;
/// Threshold on defect singular values.
pub const DEFECT_TOL: f64 = 1e-8;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_zeros(zeros: &[Complex64]) -> Result<()> {
    if zeros.is_empty() {
        return Err(Error::Domain("a model space needs at least one zero".into()));
    }
    if let Some(z) = zeros.iter().find(|z| z.norm() >= 1.0) {
        return Err(Error::Domain(format!(
            "zero {z} is not inside the open unit disk"
        )));
    }
    Ok(())
}

fn check_samples(n: usize, m: usize) -> Result<()> {
    if m.is_power_of_two() && m >= 4 * n && m >= 16 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "sample count {m} must be a power of two, at least 16 and at least 4n = {}",
            4 * n
        )))
    }
}

/// Values of the Malmquist–Walsh basis on the `m`-point circle grid; row `k`
/// holds `e_{k+1}`.
pub fn malmquist_walsh_samples(zeros: &[Complex64], m: usize) -> Result<DenseMatrix> {
    check_zeros(zeros)?;
    check_samples(zeros.len(), m)?;
    Ok(mw_samples(zeros, &circle_points(m)))
}

fn mw_samples(zeros: &[Complex64], points: &[Complex64]) -> DenseMatrix {
    let n = zeros.len();
    let m = points.len();
    let mut out = DenseMatrix::zeros(n, m);
    for (j, &z) in points.iter().enumerate() {
        let mut partial = ONE;
        for (k, &lam) in zeros.iter().enumerate() {
            let denom = ONE - lam.conj() * z;
            out[(k, j)] = partial * (1.0 - lam.norm_sqr()).sqrt() / denom;
            partial *= (z - lam) / denom;
        }
    }
    out
}

/// `(1/m) Σ_j w(z_j) e_k(z_j) conj(e_l(z_j))` over all pairs, entry `(l, k)`.
fn quadrature_gram(
    samples: &DenseMatrix,
    points: &[Complex64],
    weight: impl Fn(Complex64) -> Complex64,
) -> DenseMatrix {
    let n = samples.rows();
    let m = points.len() as f64;
    let weights: Vec<Complex64> = points.iter().map(|&z| weight(z)).collect();
    DenseMatrix::from_fn(n, n, |l, k| {
        let s: Complex64 = samples
            .row(k)
            .iter()
            .zip(samples.row(l))
            .zip(&weights)
            .map(|((ek, el), w)| w * ek * el.conj())
            .sum();
        s / m
    })
}

/// Matrix of the compressed shift on `K_B`.
#[derive(Debug, Clone)]
pub struct ModelOperatorMatrix {
    zeros: Vec<Complex64>,
    matrix: DenseMatrix,
    samples: usize,
    gram_deviation: f64,
}

impl ModelOperatorMatrix {
    pub fn dim(&self) -> usize {
        self.zeros.len()
    }

    /// Zeros in the order that fixes the basis.
    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// Quadrature size actually used after refinement.
    pub fn samples(&self) -> usize {
        self.samples
    }

    /// `max |G − I|` of the quadrature Gram matrix.
    pub fn gram_deviation(&self) -> f64 {
        self.gram_deviation
    }

    /// Smallest eigenvalue modulus, `min |λⱼ|`.
    pub fn r_min(&self) -> f64 {
        self.zeros.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Builds the compressed shift with at least `m` samples, doubling `m` until
/// the Gram matrix is within [`GRAM_TARGET`] of the identity.
pub fn model_operator(zeros: &[Complex64], m: usize) -> Result<ModelOperatorMatrix> {
    check_zeros(zeros)?;
    check_samples(zeros.len(), m)?;
    let mut m = m;
    loop {
        let points = circle_points(m);
        let samples = mw_samples(zeros, &points);
        let gram = quadrature_gram(&samples, &points, |_| ONE);
        let deviation = gram.max_abs_diff(&DenseMatrix::identity(zeros.len()));
        if deviation <= GRAM_TARGET || m >= MAX_MODEL_SAMPLES {
            if deviation > GRAM_LIMIT {
                return Err(Error::Accuracy {
                    samples: m,
                    deviation,
                });
            }
            let matrix = quadrature_gram(&samples, &points, |z| z);
            return Ok(ModelOperatorMatrix {
                zeros: zeros.to_vec(),
                matrix,
                samples: m,
                gram_deviation: deviation,
            });
        }
        m *= 2;
    }
}

/// `r·e^{2πik/n}`, `k = 0..n`.
pub fn roots_of_unity_zeros(n: usize, r: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// Norm equalities of a model operator whose zeros all have modulus `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalityReport {
    pub n: usize,
    pub r: f64,
    pub zeros: Vec<Complex64>,
    pub samples: usize,
    pub norm: f64,
    pub inverse_norm: f64,
    pub kronecker: f64,
    /// `|‖M_B⁻¹‖ − 1/rⁿ| · rⁿ`
    pub relative_gap: f64,
    pub defect_rank: usize,
    /// Largest singular value of `I − M_BᴴM_B`.
    pub defect: f64,
    pub norm_ok: bool,
    pub inverse_ok: bool,
}

impl ExtremalityReport {
    /// `‖M_B‖ = 1` and `‖M_B⁻¹‖ = 1/rⁿ`, both within [`EXTREMAL_TOL`].
    pub fn is_extremal(&self) -> bool {
        self.norm_ok && self.inverse_ok
    }
}

/// Builds `M_B` for zeros of common modulus `r` and measures how close it is
/// to Kronecker's equality case.
pub fn verify_extremality(r: f64, zeros: &[Complex64], m: usize) -> Result<ExtremalityReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("radius {r} is not in (0, 1)")));
    }
    if let Some(z) = zeros.iter().find(|z| (z.norm() - r).abs() > 1e-12) {
        return Err(Error::Domain(format!(
            "zero {z} does not lie on the circle |λ| = {r}"
        )));
    }
    extremality_of(&model_operator(zeros, m)?, r)
}

/// Extremality measurements of an already built model operator.
pub fn extremality_of(model: &ModelOperatorMatrix, r: f64) -> Result<ExtremalityReport> {
    let a = model.matrix();
    let n = model.dim();
    let norm = linalg::norm2(a)?;
    let inverse_norm = linalg::inverse_norm(a)?;
    let kronecker = r.powi(n as i32).recip();
    let relative_gap = (inverse_norm - kronecker).abs() / kronecker;
    let defects = linalg::defect_singular_values(a, DEFECT_TOL)?;
    Ok(ExtremalityReport {
        n,
        r,
        zeros: model.zeros().to_vec(),
        samples: model.samples(),
        norm,
        inverse_norm,
        kronecker,
        relative_gap,
        defect_rank: defects.iter().filter(|&&s| s > DEFECT_TOL).count(),
        defect: defects.first().copied().unwrap_or(0.0),
        norm_ok: (norm - 1.0).abs() <= EXTREMAL_TOL,
        inverse_ok: relative_gap <= EXTREMAL_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toeplitz::jordan_block;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn single_zero_at_origin_is_constant_one() {
        let s = malmquist_walsh_samples(&[c(0.0)], 64).unwrap();
        assert!(s.row(0).iter().all(|v| (v - ONE).norm() < 1e-15));
    }

    #[test]
    fn single_zero_samples_match_normalized_kernel() {
        let m = 64;
        let s = malmquist_walsh_samples(&[c(0.5)], m).unwrap();
        for (k, v) in s.row(0).iter().enumerate() {
            let z = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
            let want = 0.75f64.sqrt() / (ONE - 0.5 * z);
            assert!((v - want).norm() < 1e-14);
        }
    }

    #[test]
    fn basis_is_orthonormal_under_quadrature() {
        let zeros = [
            c(0.5),
            Complex64::new(-0.3, 0.6),
            c(0.5),
            Complex64::new(0.0, -0.85),
            c(0.0),
            Complex64::new(0.7, 0.1),
            c(-0.2),
            Complex64::new(0.4, -0.4),
        ];
        let points = circle_points(4096);
        let s = mw_samples(&zeros, &points);
        let g = quadrature_gram(&s, &points, |_| ONE);
        assert!(g.max_abs_diff(&DenseMatrix::identity(8)) < 1e-8);
    }

    #[test]
    fn one_dimensional_model_is_the_zero() {
        let lam = Complex64::new(0.3, -0.4);
        let model = model_operator(&[lam], 64).unwrap();
        assert!((model.matrix()[(0, 0)] - lam).norm() < 1e-13);
    }

    #[test]
    fn all_zeros_at_origin_give_the_jordan_block() {
        for n in 1..=6 {
            let model = model_operator(&vec![c(0.0); n], 64).unwrap();
            assert!(model.matrix().max_abs_diff(&jordan_block(n).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn two_point_model_is_triangular() {
        let model = model_operator(&[c(0.5), c(-0.5)], 4096).unwrap();
        let a = model.matrix();
        assert!(a.is_lower_triangular(1e-8));
        assert!((a[(0, 0)] - c(0.5)).norm() < 1e-8);
        assert!((a[(1, 1)] - c(-0.5)).norm() < 1e-8);
        assert!(linalg::norm2(a).unwrap() <= 1.0 + 1e-8);
        assert_eq!(linalg::defect_rank(a, DEFECT_TOL).unwrap(), 1);
        let x = linalg::solve(a, &[ONE, c(0.0)]).unwrap();
        let back = a.matvec(&x).unwrap();
        assert!((back[0] - ONE).norm() < 1e-12 && back[1].norm() < 1e-12);
    }

    #[test]
    fn refinement_handles_zeros_near_the_circle() {
        let model = model_operator(&[c(0.999), c(-0.3)], 4096).unwrap();
        assert!(model.samples() > 4096);
        assert!(model.gram_deviation() <= GRAM_TARGET);
    }

    #[test]
    fn input_validation() {
        assert!(model_operator(&[], 64).is_err());
        assert!(model_operator(&[c(1.0)], 64).is_err());
        assert!(model_operator(&[c(0.1); 8], 16).is_err());
        assert!(model_operator(&[c(0.1)], 100).is_err());
        assert!(verify_extremality(0.5, &[c(0.4)], 64).is_err());
        assert!(verify_extremality(1.0, &[c(0.4)], 64).is_err());
    }

    #[test]
    fn extremality_examples() {
        let one = verify_extremality(0.5, &[c(0.5)], 4096).unwrap();
        assert!((one.inverse_norm - 2.0).abs() < 1e-12);
        assert!(one.inverse_ok);

        let two = verify_extremality(0.5, &[c(0.5), c(-0.5)], 4096).unwrap();
        assert!((two.inverse_norm - 4.0).abs() <= 4e-6, "{two:?}");
        assert!(two.is_extremal());
        assert_eq!(two.defect_rank, 1);

        let three = verify_extremality(0.6, &roots_of_unity_zeros(3, 0.6), 4096).unwrap();
        assert!(three.relative_gap <= 1e-6, "{three:?}");
        assert!((three.kronecker - 1.0 / 0.216).abs() < 1e-12);
        assert!(three.is_extremal());
    }
}
