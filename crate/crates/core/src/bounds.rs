//! Kronecker's bound `1/rⁿ` and the bracket
//! `max(rⁿ, 1 − rⁿ) ≤ rⁿ‖T_r⁻¹‖ ≤ 1` for `T_r = b_r(Mₙ)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke::BlaschkeFactor;
use crate::error::{Error, Result};
use crate::linalg;
use crate::toeplitz::{apply_calculus, AnalyticToeplitzMatrix};

/// Absolute tolerance on scaled values when deciding `pass`.
pub const PASS_TOL: f64 = 1e-8;
/// Relative agreement required between the two inverse-norm routes.
pub const PATH_AGREEMENT_TOL: f64 = 1e-8;
/// Largest `n` accepted by [`grid_sweep`].
pub const MAX_SWEEP_N: usize = 64;

fn check_open_radius(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("r = {r} is not in (0, 1)")))
    }
}

fn check_n(n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(Error::Domain("n must be at least 1".into()))
    }
}

/// `cₙ(r) = 1/rⁿ`, for `0 < r ≤ 1`.
pub fn kronecker_bound(n: usize, r: f64) -> Result<f64> {
    check_n(n)?;
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("r = {r} is not in (0, 1]")));
    }
    Ok(r.powi(n as i32).recip())
}

/// `(max(rⁿ, 1 − rⁿ), 1)`.
pub fn bracket(n: usize, r: f64) -> Result<(f64, f64)> {
    kronecker_bound(n, r)?;
    let rn = r.powi(n as i32);
    Ok((rn.max(1.0 - rn), 1.0))
}

/// `T_r = b_r(Mₙ)`.
pub fn build_t_r(n: usize, r: f64) -> Result<AnalyticToeplitzMatrix> {
    check_n(n)?;
    check_open_radius(r)?;
    apply_calculus(&BlaschkeFactor::real(r)?.taylor(n)?, n)
}

/// One grid point of the bracket verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub n: usize,
    pub r: f64,
    pub norm_t: f64,
    pub inv_norm: f64,
    /// `rⁿ · inv_norm`
    pub scaled: f64,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

impl BoundsRecord {
    fn new(n: usize, r: f64, norm_t: f64, inv_norm: f64) -> Self {
        let rn = r.powi(n as i32);
        let scaled = rn * inv_norm;
        let lower = rn.max(1.0 - rn);
        let upper = 1.0;
        let pass = lower - PASS_TOL <= scaled && scaled <= upper + PASS_TOL;
        Self {
            n,
            r,
            norm_t,
            inv_norm,
            scaled,
            lower,
            upper,
            pass,
        }
    }

    fn failed(n: usize, r: f64) -> Self {
        let mut rec = Self::new(n, r, f64::NAN, f64::NAN);
        rec.pass = false;
        rec
    }
}

/// `‖T_r⁻¹‖` through the reciprocal series and through LU solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseNormPaths {
    pub series: f64,
    pub solve: f64,
}

impl InverseNormPaths {
    pub fn relative_difference(&self) -> f64 {
        (self.series - self.solve).abs() / self.series.abs().max(self.solve.abs())
    }
}

pub fn inverse_norm_paths(t: &AnalyticToeplitzMatrix) -> Result<InverseNormPaths> {
    let series = linalg::norm2(&t.inverse()?.to_dense())?;
    let solve = linalg::inverse_norm(&t.to_dense())?;
    Ok(InverseNormPaths { series, solve })
}

pub fn theorem_check(n: usize, r: f64) -> Result<BoundsRecord> {
    let t = build_t_r(n, r)?;
    let norm_t = linalg::norm2(&t.to_dense())?;
    let paths = inverse_norm_paths(&t)?;
    if paths.relative_difference() > PATH_AGREEMENT_TOL {
        return Err(Error::Consistency {
            n,
            r,
            series: paths.series,
            solve: paths.solve,
        });
    }
    Ok(BoundsRecord::new(n, r, norm_t, paths.solve))
}

/// Whether scaled values move monotonically along one grid direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    /// The fixed coordinate (`r` for trends in `n`, `n` for trends in `r`).
    pub fixed: f64,
    pub first: f64,
    pub last: f64,
    pub nondecreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub n: usize,
    pub r: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    /// Ordered by `n`, then by position in the `r` grid.
    pub records: Vec<BoundsRecord>,
    pub failures: Vec<SweepFailure>,
    /// For each `r`: scaled values as `n` grows.
    pub in_n: Vec<Trend>,
    /// For each `n`: scaled values as `r` decreases toward 0.
    pub toward_zero: Vec<Trend>,
    /// For each `n`: scaled values as `r` increases toward 1.
    pub toward_one: Vec<Trend>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty() && self.records.iter().all(|r| r.pass)
    }
}

fn trend(fixed: f64, values: impl Iterator<Item = f64>) -> Trend {
    let values: Vec<f64> = values.collect();
    let nondecreasing = values.windows(2).all(|w| w[1] >= w[0] - PASS_TOL);
    Trend {
        fixed,
        first: values.first().copied().unwrap_or(f64::NAN),
        last: values.last().copied().unwrap_or(f64::NAN),
        nondecreasing,
    }
}

/// Runs [`theorem_check`] at every `(n, r)` with `1 ≤ n ≤ n_max`. Failures
/// of individual points are recorded and the sweep continues.
pub fn grid_sweep(n_max: usize, r_grid: &[f64]) -> Result<SweepReport> {
    if !(1..=MAX_SWEEP_N).contains(&n_max) {
        return Err(Error::Domain(format!(
            "n_max = {n_max} is outside 1..={MAX_SWEEP_N}"
        )));
    }
    for &r in r_grid {
        check_open_radius(r)?;
    }
    let points: Vec<(usize, f64)> = (1..=n_max)
        .flat_map(|n| r_grid.iter().map(move |&r| (n, r)))
        .collect();
    let outcomes: Vec<(BoundsRecord, Option<SweepFailure>)> = points
        .par_iter()
        .map(|&(n, r)| match theorem_check(n, r) {
            Ok(rec) => (rec, None),
            Err(e) => (
                BoundsRecord::failed(n, r),
                Some(SweepFailure {
                    n,
                    r,
                    message: e.to_string(),
                }),
            ),
        })
        .collect();
    let (records, failures): (Vec<_>, Vec<_>) = outcomes.into_iter().unzip();
    let failures: Vec<SweepFailure> = failures.into_iter().flatten().collect();

    let at = |n: usize, j: usize| records[(n - 1) * r_grid.len() + j].scaled;
    let in_n = (0..r_grid.len())
        .map(|j| trend(r_grid[j], (1..=n_max).map(|n| at(n, j))))
        .collect();
    let mut by_r: Vec<usize> = (0..r_grid.len()).collect();
    by_r.sort_by(|&a, &b| r_grid[a].total_cmp(&r_grid[b]));
    let toward_zero = (1..=n_max)
        .map(|n| trend(n as f64, by_r.iter().rev().map(|&j| at(n, j))))
        .collect();
    let toward_one = (1..=n_max)
        .map(|n| trend(n as f64, by_r.iter().map(|&j| at(n, j))))
        .collect();
    Ok(SweepReport {
        records,
        failures,
        in_n,
        toward_zero,
        toward_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_bound(3, 0.5).unwrap(), 8.0);
        assert_eq!(kronecker_bound(7, 1.0).unwrap(), 1.0);
        assert!((kronecker_bound(1, 0.1).unwrap() - 10.0).abs() < 1e-14);
        assert!(kronecker_bound(2, 0.0).is_err());
        assert!(kronecker_bound(2, 1.5).is_err());
        assert!(kronecker_bound(0, 0.5).is_err());
        assert_eq!(bracket(3, 0.5).unwrap(), (0.875, 1.0));
        assert_eq!(bracket(5, 1.0).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn t_r_examples() {
        let t = build_t_r(3, 0.5).unwrap();
        let col: Vec<f64> = t.first_column().iter().map(|c| c.re).collect();
        assert_eq!(col, vec![0.5, -0.75, -0.375]);
        assert_eq!(build_t_r(1, 0.42).unwrap().first_column()[0].re, 0.42);
        let d = build_t_r(6, 0.3).unwrap().to_dense();
        assert!(d.diag().iter().all(|c| c.re == 0.3 && c.im == 0.0));
        assert!(d.is_lower_triangular(0.0));
        assert!(build_t_r(3, 1.0).is_err());
    }

    #[test]
    fn theorem_check_examples() {
        let rec = theorem_check(3, 0.5).unwrap();
        assert_eq!(rec.lower, 0.875);
        assert!(rec.pass && (0.875..=1.0 + PASS_TOL).contains(&rec.scaled));

        let one = theorem_check(1, 0.9).unwrap();
        assert!((one.inv_norm - 1.0 / 0.9).abs() < 1e-14);
        assert!((one.scaled - 1.0).abs() < 1e-14);

        let tiny = theorem_check(4, 0.05).unwrap();
        assert!((tiny.lower - (1.0 - 6.25e-6)).abs() < 1e-15);
        assert!(tiny.pass && tiny.scaled >= 1.0 - 6.25e-6 - PASS_TOL);
    }

    #[test]
    fn sweep_records_and_trends() {
        let grid = [0.2, 0.5, 0.8];
        let report = grid_sweep(5, &grid).unwrap();
        assert_eq!(report.records.len(), 15);
        assert!(report.all_pass());
        assert_eq!((report.records[4].n, report.records[4].r), (2, 0.5));
        assert_eq!(report.in_n.len(), 3);
        assert_eq!(report.toward_zero.len(), 5);
        // n = 1: scaled is exactly r·(1/r)
        for rec in report.records.iter().filter(|r| r.n == 1) {
            assert!((rec.scaled - 1.0).abs() < 1e-14);
        }
        assert!(grid_sweep(0, &grid).is_err());
        assert!(grid_sweep(65, &grid).is_err());
        assert!(grid_sweep(3, &[0.0, 0.5]).is_err());
    }
}
