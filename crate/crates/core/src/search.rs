//! Lower estimates of the analytic-Toeplitz constant
//!
//! ```text
//! tₙᵃ(r) = sup { ‖T⁻¹‖ : T analytic Toeplitz, ‖T‖ ≤ 1, |a₀| ≥ r }
//! ```
//!
//! by derivative-free coordinate search over symbols `f`. Every candidate is
//! projected onto the feasible set by `f ← f / max(1, ‖f(Mₙ)‖)` and rejected
//! if `|f₀|` then falls below `r`. The value of any accepted candidate is a
//! valid lower bound on `tₙᵃ(r)`; nothing here bounds it from above beyond
//! Kronecker's `1/rⁿ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blaschke::BlaschkeFactor;
use crate::bounds::{kronecker_bound, PASS_TOL};
use crate::error::{Error, Result};
use crate::linalg::{self, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::toeplitz::{apply_calculus, AnalyticPolynomial};

/// Largest matrix size the search accepts.
pub const MAX_SEARCH_N: usize = 16;
/// Slack on `|f₀| ≥ r` after projection.
pub const CONSTANT_TERM_SLACK: f64 = 1e-12;
/// Relative gain a move must bring to be accepted.
const MIN_RELATIVE_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    /// Coordinate moves per restart.
    pub iterations: usize,
    pub initial_step: f64,
    /// The local search stops once the step falls below this.
    pub min_step: f64,
    /// Size of the random offsets added to rotated starts.
    pub start_spread: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            restarts: 32,
            iterations: 2000,
            initial_step: 0.05,
            min_step: 1e-9,
            start_spread: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub r: f64,
    /// Estimate of `tₙᵃ(r)`.
    pub best_value: f64,
    pub best_coeffs: AnalyticPolynomial,
    pub restarts_used: usize,
    pub seed: u64,
    /// `rⁿ · best_value`
    pub scaled_value: f64,
    /// `1 − rⁿ · best_value`
    pub kronecker_gap: f64,
    /// `‖T_r⁻¹‖` at the `b_r` start.
    pub seed_value: f64,
    pub best_restart: usize,
    /// Whether some restart hit the iteration cap before its step converged.
    pub budget_exhausted: bool,
    pub evaluations: usize,
}

#[derive(Debug, Clone)]
struct Candidate {
    coeffs: Vec<Complex64>,
    value: f64,
}

/// Projects `coeffs` onto the feasible set and evaluates `‖f(Mₙ)⁻¹‖`;
/// `None` for rejected or numerically unusable candidates.
fn evaluate(coeffs: &[Complex64], r: f64) -> Option<Candidate> {
    let n = coeffs.len();
    let symbol = AnalyticPolynomial::new(coeffs.to_vec()).ok()?;
    let t = apply_calculus(&symbol, n).ok()?.to_dense();
    let norm = linalg::spectral_norm(&t, DEFAULT_TOL, DEFAULT_MAX_ITER).ok()?;
    let shrink = norm.max(1.0);
    let projected: Vec<Complex64> = coeffs.iter().map(|a| a / shrink).collect();
    if projected[0].norm() < r - CONSTANT_TERM_SLACK {
        return None;
    }
    let t = if shrink > 1.0 { t.scale(Complex64::new(shrink.recip(), 0.0)) } else { t };
    let value = linalg::inverse_norm(&t).ok()?;
    value.is_finite().then_some(Candidate {
        coeffs: projected,
        value,
    })
}

struct RestartOutcome {
    best: Candidate,
    converged: bool,
    evaluations: usize,
}

const DIRECTIONS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
];

fn run_restart(index: usize, n: usize, r: f64, seed: &[Complex64], config: &SearchConfig) -> Result<RestartOutcome> {
    let mut evaluations = 0;
    let rotation = Complex64::from_polar(1.0, 2.0 * PI * index as f64 / config.restarts as f64);
    let rotated: Vec<Complex64> = seed.iter().map(|a| a * rotation).collect();

    let mut current = if index == 0 {
        None
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index as u64);
        let start: Vec<Complex64> = rotated
            .iter()
            .map(|a| {
                let re: f64 = rng.gen_range(-1.0..=1.0);
                let im: f64 = rng.gen_range(-1.0..=1.0);
                a + Complex64::new(re, im) * config.start_spread
            })
            .collect();
        evaluations += 1;
        evaluate(&start, r)
    };
    if current.is_none() {
        evaluations += 1;
        current = evaluate(&rotated, r);
    }
    let mut current = current.ok_or_else(|| {
        Error::Search(format!("start {index} is infeasible for n = {n}, r = {r}"))
    })?;

    let mut step = config.initial_step;
    let mut idle = 0;
    let mut converged = false;
    for iter in 0..config.iterations {
        if step < config.min_step {
            converged = true;
            break;
        }
        let k = iter % n;
        let mut best_move: Option<Candidate> = None;
        for d in DIRECTIONS {
            let mut trial = current.coeffs.clone();
            trial[k] += d * step;
            evaluations += 1;
            if let Some(c) = evaluate(&trial, r) {
                let threshold = best_move.as_ref().map_or(current.value * (1.0 + MIN_RELATIVE_GAIN), |b| b.value);
                if c.value > threshold {
                    best_move = Some(c);
                }
            }
        }
        match best_move {
            Some(c) => {
                current = c;
                idle = 0;
            }
            None => {
                idle += 1;
                if idle >= n {
                    step *= 0.5;
                    idle = 0;
                }
            }
        }
    }
    converged |= step < config.min_step;
    Ok(RestartOutcome {
        best: current,
        converged,
        evaluations,
    })
}

fn check_config(config: &SearchConfig) -> Result<()> {
    if config.restarts == 0 {
        return Err(Error::Domain("at least one restart is required".into()));
    }
    if !(config.initial_step > 0.0 && config.min_step > 0.0 && config.start_spread >= 0.0) {
        return Err(Error::Domain("steps must be positive".into()));
    }
    Ok(())
}

/// Estimates `tₙᵃ(r)` from below. Restart 0 starts at `b_r`'s Taylor
/// polynomial; restart `i` at its rotation by `e^{2πi·i/restarts}` plus a
/// seeded random offset. Restarts are independent, and the winner is the
/// largest value with ties going to the lowest index, so the result does
/// not depend on scheduling.
pub fn estimate_t_a(n: usize, r: f64, config: &SearchConfig) -> Result<SearchResult> {
    if !(1..=MAX_SEARCH_N).contains(&n) {
        return Err(Error::Domain(format!("n = {n} is outside 1..={MAX_SEARCH_N}")));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("r = {r} is not in (0, 1)")));
    }
    check_config(config)?;
    let seed = BlaschkeFactor::real(r)?.taylor(n)?.into_coeffs();
    let seed_value = evaluate(&seed, r)
        .ok_or_else(|| Error::Search("the b_r start is infeasible".into()))?
        .value;

    let outcomes: Vec<Result<RestartOutcome>> = (0..config.restarts)
        .into_par_iter()
        .map(|i| run_restart(i, n, r, &seed, config))
        .collect();

    let mut best: Option<(usize, Candidate)> = None;
    let mut budget_exhausted = false;
    let mut evaluations = 1;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let outcome = match outcome {
            Ok(o) => o,
            // a perturbed start may be infeasible; restart 0 never is
            Err(_) if i > 0 => continue,
            Err(e) => return Err(e),
        };
        budget_exhausted |= !outcome.converged;
        evaluations += outcome.evaluations;
        if best.as_ref().map_or(true, |(_, b)| outcome.best.value > b.value) {
            best = Some((i, outcome.best));
        }
    }
    let (best_restart, best) = best.ok_or_else(|| Error::Search("no feasible candidate".into()))?;
    let scaled_value = r.powi(n as i32) * best.value;
    Ok(SearchResult {
        n,
        r,
        best_value: best.value,
        best_coeffs: AnalyticPolynomial::new(best.coeffs)?,
        restarts_used: config.restarts,
        seed: config.seed,
        scaled_value,
        kronecker_gap: 1.0 - scaled_value,
        seed_value,
        best_restart,
        budget_exhausted,
        evaluations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemarkRow {
    pub n: usize,
    pub r: f64,
    pub estimate: f64,
    pub scaled: f64,
    pub gap: f64,
}

/// Infimum of scaled estimates along one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Infimum {
    pub fixed: f64,
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RemarkReport {
    pub rows: Vec<RemarkRow>,
    /// For each `r`, the infimum over `n`.
    pub inf_over_n: Vec<Infimum>,
    /// For each `n`, the infimum over `r`.
    pub inf_over_r: Vec<Infimum>,
    /// Every scaled estimate lies in `[1/2 − 10⁻⁸, 1 + 10⁻⁸]`.
    pub bracket_holds: bool,
}

/// Tabulates `rⁿ·t̂ₙᵃ(r)` over the given lists. Exploratory only.
pub fn remark_scan(n_list: &[usize], r_list: &[f64], config: &SearchConfig) -> Result<RemarkReport> {
    let mut rows = Vec::with_capacity(n_list.len() * r_list.len());
    for &n in n_list {
        for &r in r_list {
            let res = estimate_t_a(n, r, config)?;
            kronecker_bound(n, r)?;
            rows.push(RemarkRow {
                n,
                r,
                estimate: res.best_value,
                scaled: res.scaled_value,
                gap: res.kronecker_gap,
            });
        }
    }
    let inf = |pred: &dyn Fn(&RemarkRow) -> bool| {
        rows.iter().filter(|row| pred(row)).map(|row| row.scaled).fold(f64::INFINITY, f64::min)
    };
    let inf_over_n = r_list
        .iter()
        .map(|&r| Infimum {
            fixed: r,
            scaled: inf(&|row| row.r == r),
        })
        .collect();
    let inf_over_r = n_list
        .iter()
        .map(|&n| Infimum {
            fixed: n as f64,
            scaled: inf(&|row| row.n == n),
        })
        .collect();
    let bracket_holds = rows
        .iter()
        .all(|row| row.scaled >= 0.5 - PASS_TOL && row.scaled <= 1.0 + PASS_TOL);
    Ok(RemarkReport {
        rows,
        inf_over_n,
        inf_over_r,
        bracket_holds,
    })
}
