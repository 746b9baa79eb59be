//! The nilpotent Jordan block `Mₙ` and its commutant.
//!
//! Every analytic (lower-triangular) Toeplitz matrix is `f(Mₙ)` for the
//! polynomial `f` read off its first column, and conversely. Polynomials are
//! kept modulo `zⁿ`, which is exactly what the calculus sees since `Mₙⁿ = 0`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, DenseMatrix};

/// Max-entry tolerance of [`commutes_with_shift`].
pub const COMMUTANT_TOL: f64 = 1e-12;
/// Smallest `|f(0)|` accepted by [`reciprocal_series`].
pub const INVERTIBLE_TOL: f64 = 1e-14;
/// Allowed deviation of `f·g` from `1 mod zⁿ` in [`bezout_remainder`].
pub const BEZOUT_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Truncated power series `a₀ + a₁z + … + a_{n−1}z^{n−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticPolynomial {
    coeffs: Vec<Complex64>,
}

impl AnalyticPolynomial {
    /// The truncation order is `coeffs.len()`, which must be positive.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a polynomial needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// Zero-pads or truncates `coeffs` to order `n`.
    pub fn with_order(coeffs: &[Complex64], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("truncation order must be at least 1".into()));
        }
        let mut c: Vec<Complex64> = coeffs.iter().take(n).copied().collect();
        c.resize(n, ZERO);
        Ok(Self { coeffs: c })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn constant(c: Complex64, n: usize) -> Result<Self> {
        Self::with_order(&[c], n)
    }

    /// `z^k` truncated to order `n`.
    pub fn monomial(k: usize, n: usize) -> Result<Self> {
        let mut p = Self::with_order(&[], n)?;
        if k < n {
            p.coeffs[k] = ONE;
        }
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn truncated(&self, n: usize) -> Result<Self> {
        Self::with_order(&self.coeffs, n)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Horner evaluation of the polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
    }

    /// Product modulo `zⁿ`, `n` being the order of `self`.
    pub fn mul_trunc(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![ZERO; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Full product, of length `len(self) + len(other) − 1`.
    pub fn convolve(&self, other: &Self) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.order() + other.order() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    }
}

/// `f(Mₙ)`: lower triangular, entry `(i, j) = a_{i−j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticToeplitzMatrix {
    symbol: AnalyticPolynomial,
}

impl AnalyticToeplitzMatrix {
    pub fn dim(&self) -> usize {
        self.symbol.order()
    }

    pub fn symbol(&self) -> &AnalyticPolynomial {
        &self.symbol
    }

    /// First column `(a₀, …, a_{n−1})`.
    pub fn first_column(&self) -> &[Complex64] {
        self.symbol.coeffs()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let a = self.symbol.coeffs();
        let n = a.len();
        DenseMatrix::from_fn(n, n, |i, j| if i >= j { a[i - j] } else { ZERO })
    }

    /// Smallest eigenvalue modulus; the spectrum is `{a₀}`.
    pub fn r_min(&self) -> f64 {
        self.symbol.constant_term().norm()
    }

    /// Inverse through the reciprocal series, again analytic Toeplitz.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            symbol: reciprocal_series(&self.symbol)?,
        })
    }
}

/// Toeplitz matrix with entry `(i, j) = a_{i−j}`, diagonals stored from
/// `a_{−n+1}` up to `a_{n−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralToeplitzMatrix {
    n: usize,
    diagonals: Vec<Complex64>,
}

impl GeneralToeplitzMatrix {
    pub fn new(diagonals: Vec<Complex64>) -> Result<Self> {
        if diagonals.len() % 2 == 0 {
            return Err(Error::Shape(format!(
                "{} diagonals; a Toeplitz matrix of size n needs 2n − 1",
                diagonals.len()
            )));
        }
        let n = (diagonals.len() + 1) / 2;
        Ok(Self { n, diagonals })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `a_k` for `−n < k < n`.
    pub fn coefficient(&self, k: isize) -> Complex64 {
        self.diagonals[(k + self.n as isize - 1) as usize]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, self.n, |i, j| {
            self.coefficient(i as isize - j as isize)
        })
    }

    pub fn condition_number(&self) -> Result<f64> {
        condition_number(&self.to_dense())
    }
}

/// `Mₙ`: ones on the first subdiagonal.
pub fn jordan_block(n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::Domain("Jordan block of size 0".into()));
    }
    Ok(DenseMatrix::from_fn(n, n, |i, j| {
        if i == j + 1 {
            ONE
        } else {
            ZERO
        }
    }))
}

/// `φ(Mₙ) = Σ φ̂(k) Mₙᵏ`, with `φ` zero-padded or truncated to order `n`.
pub fn apply_calculus(phi: &AnalyticPolynomial, n: usize) -> Result<AnalyticToeplitzMatrix> {
    Ok(AnalyticToeplitzMatrix {
        symbol: phi.truncated(n)?,
    })
}

/// Whether `AMₙ = MₙA` to [`COMMUTANT_TOL`] in the max-entry norm.
pub fn commutes_with_shift(a: &DenseMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::Shape("commutant test needs a square matrix".into()));
    }
    let n = a.rows();
    // (AM)_{ij} = A_{i,j+1}, (MA)_{ij} = A_{i−1,j}
    let at = |i: Option<usize>, j: usize| match i {
        Some(i) if i < n && j < n => a[(i, j)],
        _ => ZERO,
    };
    for i in 0..n {
        for j in 0..n {
            let am = at(Some(i), j + 1);
            let ma = at(i.checked_sub(1), j);
            if (am - ma).norm() > COMMUTANT_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `g` with `f·g ≡ 1 mod zⁿ`, by the triangular recursion
/// `g₀ = 1/a₀`, `g_k = −(Σ_{j=1..k} a_j g_{k−j}) / a₀`.
pub fn reciprocal_series(f: &AnalyticPolynomial) -> Result<AnalyticPolynomial> {
    let a = f.coeffs();
    let a0 = a[0];
    if a0.norm() <= INVERTIBLE_TOL {
        return Err(Error::NotInvertible {
            constant: a0.norm(),
        });
    }
    let n = a.len();
    let mut g = Vec::with_capacity(n);
    g.push(ONE / a0);
    for k in 1..n {
        let s: Complex64 = (1..=k).map(|j| a[j] * g[k - j]).sum();
        g.push(-s / a0);
    }
    AnalyticPolynomial::new(g)
}

/// The `h` of `f·g + zⁿh = 1`, i.e. the negated tail of `f·g` past degree
/// `n − 1`, trailing zeros dropped.
pub fn bezout_remainder(f: &AnalyticPolynomial, g: &AnalyticPolynomial) -> Result<Vec<Complex64>> {
    let n = f.order();
    if g.order() != n {
        return Err(Error::Shape(format!(
            "Bezout pair of orders {} and {}",
            n,
            g.order()
        )));
    }
    let fg = f.convolve(g);
    for (i, c) in fg.iter().take(n).enumerate() {
        let target = if i == 0 { ONE } else { ZERO };
        let deviation = (c - target).norm();
        if deviation > BEZOUT_TOL {
            return Err(Error::InconsistentBezout { index: i, deviation });
        }
    }
    let mut h: Vec<Complex64> = fg[n..].iter().map(|c| -c).collect();
    while h.last() == Some(&ZERO) {
        h.pop();
    }
    Ok(h)
}

/// `CN(A) = ‖A‖·‖A⁻¹‖` in the spectral norm.
pub fn condition_number(a: &DenseMatrix) -> Result<f64> {
    Ok(linalg::norm2(a)? * linalg::inverse_norm(a)?)
}
