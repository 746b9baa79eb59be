//! Dense complex linear algebra: just enough to measure extreme singular
//! values of small matrices.
//!
//! Singular values are obtained by power iteration on `AᴴA`; nothing here
//! forms an SVD. The largest singular value of `A⁻¹` is measured by running
//! the same iteration with every application replaced by an LU solve, so the
//! inverse is never materialized.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar field of every matrix in the crate.
pub type ComplexScalar = Complex64;

/// Default relative tolerance of the power iteration.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default iteration cap of the power iteration.
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Pivot threshold of [`solve`].
pub const SOLVE_PIVOT_TOL: f64 = 1e-14;
/// Pivots below this fraction of the largest entry are exact zeros for
/// [`inverse_norm`], which must handle `rⁿ`-sized pivots of well-posed
/// triangular inputs.
pub const INVERSE_PIVOT_RELATIVE: f64 = 1e-20;

const SQUARING_PERIOD: usize = 32;
const MAX_SQUARINGS: usize = 40;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Real matrix from nested rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| {
            Complex64::new(rows[i][j], 0.0)
        }))
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `Aᴴx` without forming the adjoint.
    pub fn adjoint_matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.rows {
            return Err(Error::Shape(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let mut out = vec![ZERO; self.cols];
        for (i, xi) in x.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * xi;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// True when every entry strictly above the diagonal is within `tol`.
    pub fn is_lower_triangular(&self, tol: f64) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| self[(i, j)].norm() <= tol))
    }

    pub fn diag(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;

    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;

    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;

    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for a in self.row(i) {
                write!(f, " {:+.6}{:+.6}i", a.re, a.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub(crate) fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn normalized(mut x: Vec<Complex64>) -> Vec<Complex64> {
    let nrm = vec_norm(&x);
    x.iter_mut().for_each(|a| *a /= nrm);
    x
}

/// Start vectors: all-ones, then the ramp `(1, 2, …, n)`, then the unit
/// vectors (only reached when both of the first two lie in the kernel).
fn start_vectors(n: usize) -> impl Iterator<Item = Vec<Complex64>> {
    let ones = vec![ONE; n];
    let ramp = (1..=n).map(|k| Complex64::new(k as f64, 0.0)).collect();
    let units = (0..n).map(move |k| {
        let mut e = vec![ZERO; n];
        e[k] = ONE;
        e
    });
    [ones, ramp].into_iter().chain(units)
}

/// Dominant singular pair of the operator given by `apply` (x ↦ Ax) and
/// `apply_adjoint` (y ↦ Aᴴy). Returns `(σ_max, right singular vector)`.
///
/// Starts whose image has norm `<= zero_scale` are treated as lying in the
/// kernel and skipped; when every start is skipped the operator is zero.
pub(crate) fn power_iteration<F, G>(
    n: usize,
    mut apply: F,
    mut apply_adjoint: G,
    zero_scale: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, Vec<Complex64>)>
where
    F: FnMut(&[Complex64]) -> Result<Vec<Complex64>>,
    G: FnMut(&[Complex64]) -> Result<Vec<Complex64>>,
{
    for start in start_vectors(n) {
        let mut x = normalized(start);
        let mut y = apply(&x)?;
        let mut rayleigh = vec_norm(&y).powi(2);
        if rayleigh.sqrt() <= zero_scale {
            continue;
        }
        for _ in 0..max_iter {
            let z = apply_adjoint(&y)?;
            x = normalized(z);
            y = apply(&x)?;
            let next = vec_norm(&y).powi(2);
            if (next - rayleigh).abs() <= tol * next {
                return Ok((next.sqrt(), x));
            }
            rayleigh = next;
        }
        return Err(Error::NoConvergence {
            iterations: max_iter,
            last: rayleigh.sqrt(),
        });
    }
    let mut e = vec![ZERO; n];
    if n > 0 {
        e[0] = ONE;
    }
    Ok((0.0, e))
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must be positive, got {tol}")))
    }
}

/// Power iteration on the explicit Hermitian matrix `AᴴA`. When a phase of
/// [`SQUARING_PERIOD`] steps does not meet the Rayleigh test, the iteration
/// operator is replaced by its normalized square, so clustered top singular
/// values still separate in a bounded number of steps. The convergence test
/// is always taken on the Rayleigh quotient `‖Ax‖²` of `AᴴA` itself.
fn spectral_pair(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<(f64, Vec<Complex64>)> {
    let n = a.cols;
    let frob = a.frobenius_norm();
    if frob == 0.0 {
        return Ok((0.0, start_vectors(n).next().map(normalized).unwrap()));
    }
    let zero_scale = 1e-14 * frob;
    let gram = &a.adjoint() * a;
    for start in start_vectors(n) {
        let mut x = normalized(start);
        let mut rayleigh = vec_norm(&a.matvec(&x)?).powi(2);
        if rayleigh.sqrt() <= zero_scale {
            continue;
        }
        let mut op = gram.clone();
        let mut squarings = 0;
        for it in 1..=max_iter {
            let mut z = op.matvec(&x)?;
            if vec_norm(&z) == 0.0 {
                // the squared operator lost the component along x
                op = gram.clone();
                z = op.matvec(&x)?;
            }
            x = normalized(z);
            let next = vec_norm(&a.matvec(&x)?).powi(2);
            if (next - rayleigh).abs() <= tol * next {
                return Ok((next.sqrt(), x));
            }
            rayleigh = next;
            if it % SQUARING_PERIOD == 0 && squarings < MAX_SQUARINGS {
                op = &op * &op;
                let f = op.frobenius_norm();
                op = op.scale(Complex64::new(f.recip(), 0.0));
                squarings += 1;
            }
        }
        return Err(Error::NoConvergence {
            iterations: max_iter,
            last: rayleigh.sqrt(),
        });
    }
    Ok((0.0, start_vectors(n).next().map(normalized).unwrap()))
}

/// Largest singular value of `a`.
pub fn spectral_norm(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    if a.rows == 0 || a.cols == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    check_tol(tol)?;
    spectral_pair(a, tol, max_iter).map(|(s, _)| s)
}

/// [`spectral_norm`] with the default tolerance and cap.
pub fn norm2(a: &DenseMatrix) -> Result<f64> {
    spectral_norm(a, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

/// LU factorization with partial pivoting, `PA = LU`.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    // unit-lower L below the diagonal, U on and above it
    factors: Vec<Complex64>,
    // row i of PA is row perm[i] of A
    perm: Vec<usize>,
}

impl Lu {
    /// Factors `a`; a pivot with modulus `< pivot_tol` is a singularity.
    pub fn factor(a: &DenseMatrix, pivot_tol: f64) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape(format!(
                "LU of a non-square {}x{} matrix",
                a.rows, a.cols
            )));
        }
        let n = a.rows;
        let mut f = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, f[i * n + k].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if !(pivot >= pivot_tol) || pivot == 0.0 {
                return Err(Error::Singular { step: k, pivot });
            }
            if p != k {
                for j in 0..n {
                    f.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let d = f[k * n + k];
            for i in (k + 1)..n {
                let l = f[i * n + k] / d;
                f[i * n + k] = l;
                if l == ZERO {
                    continue;
                }
                for j in (k + 1)..n {
                    let u = f[k * n + j];
                    f[i * n + j] -= l * u;
                }
            }
        }
        Ok(Self {
            n,
            factors: f,
            perm,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves `Ax = b`.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::Shape(format!("rhs of length {} for n = {n}", b.len())));
        }
        let f = &self.factors;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: Complex64 = (0..i).map(|j| f[i * n + j] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: Complex64 = ((i + 1)..n).map(|j| f[i * n + j] * x[j]).sum();
            x[i] = (x[i] - s) / f[i * n + i];
        }
        Ok(x)
    }

    /// Solves `Aᴴx = b`, i.e. `UᴴLᴴPx = b`.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::Shape(format!("rhs of length {} for n = {n}", b.len())));
        }
        let f = &self.factors;
        let mut w = b.to_vec();
        for i in 0..n {
            let s: Complex64 = (0..i).map(|j| f[j * n + i].conj() * w[j]).sum();
            w[i] = (w[i] - s) / f[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let s: Complex64 = ((i + 1)..n).map(|j| f[j * n + i].conj() * w[j]).sum();
            w[i] -= s;
        }
        let mut x = vec![ZERO; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        Ok(x)
    }
}

/// Solves `Ax = b` by Gaussian elimination with partial pivoting.
pub fn solve(a: &DenseMatrix, b: &[Complex64]) -> Result<Vec<Complex64>> {
    Lu::factor(a, SOLVE_PIVOT_TOL)?.solve(b)
}

/// `σ_max(A⁻¹) = 1 / σ_min(A)`, by power iteration through LU solves.
pub fn inverse_norm(a: &DenseMatrix) -> Result<f64> {
    inverse_norm_with(a, DEFAULT_TOL, DEFAULT_MAX_ITER)
}

pub fn inverse_norm_with(a: &DenseMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    check_tol(tol)?;
    if !a.is_square() || a.rows == 0 {
        return Err(Error::Shape(format!(
            "inverse norm of a {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let lu = Lu::factor(a, INVERSE_PIVOT_RELATIVE * a.max_abs())?;
    power_iteration(
        a.rows,
        |x| lu.solve(x),
        |y| lu.solve_adjoint(y),
        0.0,
        tol,
        max_iter,
    )
    .map(|(s, _)| s)
}

/// Number of singular values of the defect operator `I − AᴴA` above `tol`,
/// found by repeated deflation of the power iteration.
pub fn defect_rank(a: &DenseMatrix, tol: f64) -> Result<usize> {
    defect_singular_values(a, tol).map(|sv| sv.iter().filter(|&&s| s > tol).count())
}

/// Singular values of `I − AᴴA` in decreasing order, stopping at the first
/// one that is `<= tol` (included) or after `n` values.
pub fn defect_singular_values(a: &DenseMatrix, tol: f64) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "defect of a non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    check_tol(tol)?;
    let n = a.rows;
    let mut defect = &DenseMatrix::identity(n) - &(&a.adjoint() * a);
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        let (sigma, v) = spectral_pair(&defect, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
        values.push(sigma);
        if sigma <= tol {
            break;
        }
        // the defect is Hermitian: deflate with the signed eigenvalue vᴴDv
        let dv = defect.matvec(&v)?;
        let lambda: Complex64 = v.iter().zip(&dv).map(|(a, b)| a.conj() * b).sum();
        let lambda = lambda.re;
        for i in 0..n {
            for j in 0..n {
                defect[(i, j)] -= v[i] * v[j].conj() * lambda;
            }
        }
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn lower_toeplitz(col: &[f64]) -> DenseMatrix {
        DenseMatrix::from_fn(col.len(), col.len(), |i, j| {
            if i >= j {
                c(col[i - j])
            } else {
                ZERO
            }
        })
    }

    #[test]
    fn spectral_norm_identity_and_zero() {
        assert_eq!(norm2(&DenseMatrix::identity(3)).unwrap(), 1.0);
        assert_eq!(norm2(&DenseMatrix::zeros(2, 2)).unwrap(), 0.0);
    }

    #[test]
    fn spectral_norm_of_toeplitz_2_3_6() {
        // dense SVD of [[2,0,0],[3,2,0],[6,3,2]] gives singular values (8, 1, 1)
        let a = lower_toeplitz(&[2.0, 3.0, 6.0]);
        let s = norm2(&a).unwrap();
        assert!((7.0..=8.0 + 1e-12).contains(&s), "{s}");
        assert!((s - 8.0).abs() < 1e-10, "{s}");
    }

    #[test]
    fn start_orthogonal_to_dominant_subspace_restarts() {
        // ones is in the kernel; ramp is not
        let a = DenseMatrix::from_real_rows(&[&[1.0, -1.0], &[2.0, -2.0]]).unwrap();
        let s = norm2(&a).unwrap();
        assert!((s - 10f64.sqrt()).abs() < 1e-12);
        // both ones and ramp lie in the kernel of this 3x3 matrix
        let b = DenseMatrix::from_real_rows(&[&[1.0, -2.0, 1.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])
            .unwrap();
        assert!((norm2(&b).unwrap() - 6f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_convergence_carries_last_value() {
        let a = lower_toeplitz(&[1.0, 0.3, 0.2, 0.7]);
        match spectral_norm(&a, 1e-15, 1) {
            Err(Error::NoConvergence { iterations, last }) => {
                assert_eq!(iterations, 1);
                assert!(last > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            spectral_norm(&DenseMatrix::identity(2), 0.0, 10),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            spectral_norm(&DenseMatrix::zeros(0, 0), 1e-12, 10),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn solve_small_systems() {
        let e1 = vec![ONE, ZERO];
        assert_eq!(solve(&DenseMatrix::identity(2), &e1).unwrap(), e1);
        let d = DenseMatrix::diagonal(&[c(2.0), c(4.0)]);
        assert_eq!(solve(&d, &[c(2.0), c(4.0)]).unwrap(), vec![ONE, ONE]);
    }

    #[test]
    fn solve_reports_singularity() {
        let a = DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(solve(&a, &[ONE, ONE]), Err(Error::Singular { step: 1, .. })));
        assert!(matches!(
            inverse_norm(&DenseMatrix::zeros(3, 3)),
            Err(Error::Singular { step: 0, .. })
        ));
    }

    #[test]
    fn adjoint_solve_matches_explicit_adjoint() {
        let a = DenseMatrix::from_fn(4, 4, |i, j| {
            Complex64::new((i * 3 + j) as f64 % 5.0 - 1.5, (i as f64 - j as f64) * 0.3)
        });
        let lu = Lu::factor(&a, 1e-14).unwrap();
        let b: Vec<_> = (0..4).map(|k| Complex64::new(k as f64, 1.0)).collect();
        let x = lu.solve_adjoint(&b).unwrap();
        let back = a.adjoint().matvec(&x).unwrap();
        for (u, v) in back.iter().zip(&b) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_norm_examples() {
        assert!((inverse_norm(&DenseMatrix::identity(3)).unwrap() - 1.0).abs() < 1e-14);
        let d = DenseMatrix::diagonal(&[c(0.5), c(0.25)]);
        assert!((inverse_norm(&d).unwrap() - 4.0).abs() < 1e-12);
        // T_r for n = 3, r = 0.5; its inverse is the Toeplitz matrix (2, 3, 6)
        let t = lower_toeplitz(&[0.5, -0.75, -0.375]);
        let via_solves = inverse_norm(&t).unwrap();
        let via_inverse = norm2(&lower_toeplitz(&[2.0, 3.0, 6.0])).unwrap();
        assert!((7.0..=8.0 + 1e-12).contains(&via_solves));
        assert!((via_solves - via_inverse).abs() <= 1e-10 * via_inverse);
    }

    #[test]
    fn defect_rank_examples() {
        let (s, co) = 0.3f64.sin_cos();
        let rot = DenseMatrix::from_real_rows(&[&[co, -s], &[s, co]]).unwrap();
        assert_eq!(defect_rank(&rot, 1e-8).unwrap(), 0);
        assert_eq!(defect_rank(&DenseMatrix::zeros(4, 4), 1e-8).unwrap(), 4);
        // b_r(M_3), r = 0.5: I − TᴴT has singular values (0.984375, 0, 0)
        let t = lower_toeplitz(&[0.5, -0.75, -0.375]);
        let sv = defect_singular_values(&t, 1e-8).unwrap();
        assert!((sv[0] - 0.984375).abs() < 1e-12, "{sv:?}");
        assert_eq!(defect_rank(&t, 1e-8).unwrap(), 1);
    }
}
