//! Blaschke factors `b_λ(z) = (λ − z)/(1 − λ̄z)` and finite products of them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::toeplitz::AnalyticPolynomial;

/// Default number of circle samples for sup-norm estimates.
pub const DEFAULT_SAMPLES: usize = 4096;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_in_disk(zero: Complex64) -> Result<()> {
    if zero.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "Blaschke zero {zero} is not inside the open unit disk"
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeFactor {
    zero: Complex64,
}

impl BlaschkeFactor {
    pub fn new(zero: Complex64) -> Result<Self> {
        check_in_disk(zero)?;
        Ok(Self { zero })
    }

    /// Factor with a real zero `r`, the `b_r` of the Toeplitz construction.
    pub fn real(r: f64) -> Result<Self> {
        Self::new(Complex64::new(r, 0.0))
    }

    pub fn zero(&self) -> Complex64 {
        self.zero
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.zero - z) / (ONE - self.zero.conj() * z)
    }

    /// First `n` Taylor coefficients at the origin:
    /// `a₀ = λ`, `a_k = −(1 − |λ|²) λ̄^{k−1}`.
    pub fn taylor(&self, n: usize) -> Result<AnalyticPolynomial> {
        if n == 0 {
            return Err(Error::Domain("Taylor order must be at least 1".into()));
        }
        let lam = self.zero;
        let lam_bar = lam.conj();
        let defect = 1.0 - lam.norm_sqr();
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(lam);
        let mut power = ONE;
        for _ in 1..n {
            coeffs.push(-power * defect);
            power *= lam_bar;
        }
        AnalyticPolynomial::new(coeffs)
    }

    /// First `n` Taylor coefficients of `1/b_λ = (1 − λ̄z)/(λ − z)`:
    /// `c₀ = 1/λ`, `c_k = (1 − |λ|²)/λ^{k+1}`.
    pub fn reciprocal_taylor(&self, n: usize) -> Result<AnalyticPolynomial> {
        if n == 0 {
            return Err(Error::Domain("Taylor order must be at least 1".into()));
        }
        if self.zero == Complex64::new(0.0, 0.0) {
            return Err(Error::NotInvertible { constant: 0.0 });
        }
        let inv = ONE / self.zero;
        let defect = 1.0 - self.zero.norm_sqr();
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(inv);
        let mut power = inv;
        for _ in 1..n {
            power *= inv;
            coeffs.push(power * defect);
        }
        AnalyticPolynomial::new(coeffs)
    }
}

/// `B = ∏ b_{λⱼ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>) -> Result<Self> {
        for &z in &zeros {
            check_in_disk(z)?;
        }
        Ok(Self { zeros })
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .map(|&lam| (lam - z) / (ONE - lam.conj() * z))
            .product()
    }
}

/// Anything that can be sampled on the unit circle.
pub trait CircleFunction {
    fn value_at(&self, z: Complex64) -> Complex64;
}

impl CircleFunction for BlaschkeFactor {
    fn value_at(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }
}

impl CircleFunction for BlaschkeProduct {
    fn value_at(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }
}

impl CircleFunction for AnalyticPolynomial {
    fn value_at(&self, z: Complex64) -> Complex64 {
        self.eval(z)
    }
}

impl<F: Fn(Complex64) -> Complex64> CircleFunction for F {
    fn value_at(&self, z: Complex64) -> Complex64 {
        self(z)
    }
}

/// The `m` points `e^{2πik/m}`, `k = 0..m`.
pub fn circle_points(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

fn check_samples(m: usize) -> Result<()> {
    if m >= 16 && m.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "sample count must be a power of two >= 16, got {m}"
        )))
    }
}

/// `|g(e^{2πik/m})|` for `k = 0..m`.
pub fn eval_on_circle<G: CircleFunction + ?Sized>(g: &G, m: usize) -> Result<Vec<f64>> {
    check_samples(m)?;
    Ok(circle_points(m)
        .into_iter()
        .map(|z| g.value_at(z).norm())
        .collect())
}

/// Grid estimate of `‖g‖∞`; a lower bound on the true sup-norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupNormEstimate {
    pub value: f64,
    pub samples: usize,
}

pub fn sup_norm_estimate<G: CircleFunction + ?Sized>(g: &G, m: usize) -> Result<SupNormEstimate> {
    let value = eval_on_circle(g, m)?.into_iter().fold(0.0, f64::max);
    Ok(SupNormEstimate { value, samples: m })
}
