//! Independent finite-difference eigensolver used to cross-check the
//! closed-form spectrum.
//!
//! The radial equation for either spinor component, written for
//! χ(ρ) = √ρ·φ(ρ), becomes a one-dimensional Schrödinger problem
//!
//!   −χ″ + [ (γ_eff² − ¼)/ρ² + α²ρ² ] χ = λ χ,     χ(0) = χ(ρ_max) = 0,
//!
//! whose spectrum is λ_k = 2α(2k + |γ_eff| + 1). Nothing from the
//! closed-form energy formula enters this module's solver path: the operator
//! is discretized on a uniform grid and its lowest eigenvalues are isolated
//! by Sturm-sequence bisection, so agreement with the analytic spectrum is a
//! genuine two-route check.
//!
//! The one nonstandard ingredient is the diagonal weight that replaces the
//! naive centrifugal sample (γ_eff² − ¼)/ρ_i². For |γ_eff| < ½ the operator
//! is in the limit-circle range at ρ = 0 and a naive 3-point scheme latches
//! onto the wrong (non-principal) boundary behavior, destroying both the
//! eigenvalues and the convergence order. Calibrating the diagonal so the
//! discrete operator annihilates the exact indicial profile ρ^{|γ_eff|+½}
//! restores clean second-order convergence for every γ_eff.

use thiserror::Error;

use crate::params::{self, ParamError, PhysicalConfig, QuantumNumbers};

/// Errors from the finite-difference oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Param(#[from] ParamError),
    /// Grid resolution is insufficient (too few points, or the eigenvalue
    /// moved too much under refinement).
    #[error("GridTooCoarse: {detail}")]
    GridTooCoarse { detail: String },
    /// The truncation radius clips the eigenfunction tail.
    #[error(
        "DomainTooSmall: boundary weight {tail:e} at rho_max = {rho_max} — eigenfunction not decayed"
    )]
    DomainTooSmall { tail: f64, rho_max: f64 },
    /// Back-solving E from the oscillator eigenvalue hit a negative square.
    #[error("NegativeRadicand: {radicand:e} — state inconsistent with a real energy")]
    NegativeRadicand { radicand: f64 },
    /// Malformed request (bad count, non-finite parameter, …).
    #[error("DomainError: {0}")]
    Domain(String),
}

/// A discretized radial eigenproblem: effective angular factor γ_eff = γ/η,
/// oscillator strength α = m0·ω̄, truncation radius, and interior point count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdProblem {
    pub gamma_eff: f64,
    pub alpha: f64,
    pub rho_max: f64,
    pub n_points: usize,
}

impl FdProblem {
    /// Validated constructor. Requires α > 0, finite γ_eff, ρ_max > 0, and
    /// at least 100 interior points (fewer cannot meet any stated tolerance).
    pub fn new(
        gamma_eff: f64,
        alpha: f64,
        rho_max: f64,
        n_points: usize,
    ) -> Result<Self, OracleError> {
        if !gamma_eff.is_finite() {
            return Err(OracleError::Domain(format!(
                "gamma_eff must be finite, got {gamma_eff}"
            )));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(OracleError::Domain(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if !(rho_max.is_finite() && rho_max > 0.0) {
            return Err(OracleError::Domain(format!(
                "rho_max must be positive and finite, got {rho_max}"
            )));
        }
        if n_points < 100 {
            return Err(OracleError::GridTooCoarse {
                detail: format!("{n_points} interior points requested, need at least 100"),
            });
        }
        Ok(FdProblem {
            gamma_eff,
            alpha,
            rho_max,
            n_points,
        })
    }

    /// Truncation radius that keeps the first `count` eigenfunctions far
    /// inside the box: six times the classical turning-point scale of the
    /// highest requested level.
    pub fn recommended_rho_max(gamma_eff: f64, alpha: f64, count: usize) -> f64 {
        let k_max = count.saturating_sub(1) as f64;
        6.0 * ((2.0 * k_max + gamma_eff.abs() + 1.0) / alpha).sqrt()
    }

    /// Problem with the default domain, sized generously for up to ten
    /// eigenvalues.
    pub fn with_default_domain(
        gamma_eff: f64,
        alpha: f64,
        n_points: usize,
    ) -> Result<Self, OracleError> {
        let rho_max = Self::recommended_rho_max(gamma_eff, alpha, 10);
        Self::new(gamma_eff, alpha, rho_max, n_points)
    }

    /// Diagonal of the discrete operator for a grid with `n` interior points.
    fn diagonal(&self, n: usize) -> (Vec<f64>, f64) {
        let h = self.rho_max / (n + 1) as f64;
        let inv_h2 = 1.0 / (h * h);
        let p = self.gamma_eff.abs() + 0.5;
        let a2 = self.alpha * self.alpha;
        let diag = (1..=n)
            .map(|i| {
                let rho = i as f64 * h;
                2.0 * inv_h2 + singular_weight(p, i) * inv_h2 + a2 * rho * rho
            })
            .collect();
        (diag, -inv_h2)
    }
}

/// Exact analytic spectrum of the continuum operator: λ_k = 2α(2k+|γ_eff|+1).
/// Used only as a reference in tests and convergence studies — the solver
/// itself never touches it.
pub fn analytic_eigenvalue(gamma_eff: f64, alpha: f64, k: usize) -> f64 {
    2.0 * alpha * (2.0 * k as f64 + gamma_eff.abs() + 1.0)
}

/// Calibrated centrifugal bracket (1−1/i)^p + (1+1/i)^p − 2 for grid index i;
/// dividing by h² gives the diagonal weight that makes the 3-point stencil
/// annihilate ρ^p exactly. Direct evaluation loses ~2 digits per decade of i
/// to cancellation, so from i = 16 onward the even binomial series
/// 2·Σ_{k≥1} C(p, 2k)·i^{−2k} is summed instead (exact to machine precision).
pub(crate) fn singular_weight(p: f64, i: usize) -> f64 {
    debug_assert!(i >= 1);
    let x = 1.0 / i as f64;
    if i < 16 {
        return (1.0 - x).powf(p) + (1.0 + x).powf(p) - 2.0;
    }
    let x2 = x * x;
    let mut sum = 0.0;
    // c tracks C(p, 2k); advance two binomial steps per term.
    let mut c = p * (p - 1.0) / 2.0;
    let mut x_pow = x2;
    for k in 1..200 {
        let term = c * x_pow;
        sum += term;
        if term.abs() < 1e-20 {
            break;
        }
        let j = 2.0 * k as f64;
        c *= (p - j) / (j + 1.0) * ((p - j - 1.0) / (j + 2.0));
        x_pow *= x2;
    }
    2.0 * sum
}

/// Number of eigenvalues of the tridiagonal operator strictly below λ,
/// by the classical Sturm sequence (LDLᵀ pivot signs).
fn sturm_count(diag: &[f64], off: f64, lambda: f64) -> usize {
    let b2 = off * off;
    let mut count = 0;
    // b²/∞ = 0: the first row has no coupling term to a previous pivot.
    let mut d = f64::INFINITY;
    for &a in diag {
        d = a - lambda - b2 / d;
        if d.abs() < 1e-280 {
            d = if d < 0.0 { -1e-280 } else { 1e-280 };
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Number of discrete eigenvalues strictly below `lambda` for this problem
/// at its own grid size. Exposes the Sturm count for invariant testing.
pub fn eigenvalue_count_below(problem: &FdProblem, lambda: f64) -> usize {
    let (diag, off) = problem.diagonal(problem.n_points);
    sturm_count(&diag, off, lambda)
}

/// Lowest `count` eigenvalues by bisection on the Sturm count. Termination
/// combines the absolute target with a relative guard so the loop always
/// ends even when the spectrum sits at magnitudes where 1e−12 is below one
/// ulp.
fn bisect_lowest(diag: &[f64], off: f64, count: usize) -> Vec<f64> {
    let mut lo_all = f64::INFINITY;
    let mut hi_all = f64::NEG_INFINITY;
    let r = 2.0 * off.abs();
    for &a in diag {
        lo_all = lo_all.min(a - r);
        hi_all = hi_all.max(a + r);
    }
    let mut out = Vec::with_capacity(count);
    let mut floor = lo_all;
    for k in 0..count {
        let mut lo = floor;
        let mut hi = hi_all;
        while hi - lo > 1e-12 + 4.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            let mid = 0.5 * (lo + hi);
            if sturm_count(diag, off, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let lambda = 0.5 * (lo + hi);
        out.push(lambda);
        // The next eigenvalue cannot be below this one.
        floor = lo;
    }
    out
}

fn lowest_raw(problem: &FdProblem, n: usize, count: usize) -> Vec<f64> {
    let (diag, off) = problem.diagonal(n);
    bisect_lowest(&diag, off, count)
}

/// Squared weight of the last grid value of the (normalized) lowest
/// eigenvector, found by shifted inverse iteration with the Thomas solve.
fn boundary_tail(problem: &FdProblem, lambda0: f64) -> Result<f64, OracleError> {
    let n = problem.n_points;
    let (diag, off) = problem.diagonal(n);
    let shift = lambda0 - 1e-6 * lambda0.abs().max(1.0);
    let shifted: Vec<f64> = diag.iter().map(|a| a - shift).collect();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut cp = vec![0.0; n];
    for _ in 0..3 {
        // Thomas elimination for (T − shift)·u = v with constant offdiagonal.
        let mut d = shifted[0];
        if d.abs() < 1e-280 {
            d = 1e-280;
        }
        cp[0] = off / d;
        v[0] /= d;
        for i in 1..n {
            let mut di = shifted[i] - off * cp[i - 1];
            if di.abs() < 1e-280 {
                di = 1e-280;
            }
            cp[i] = off / di;
            v[i] = (v[i] - off * v[i - 1]) / di;
        }
        for i in (0..n - 1).rev() {
            let next = v[i + 1];
            v[i] -= cp[i] * next;
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(OracleError::Domain(
                "inverse iteration for the boundary check diverged".into(),
            ));
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    Ok(v[n - 1] * v[n - 1])
}

/// Lowest `count` (1..=10) eigenvalues of the discretized problem, guarded:
///
/// * the lowest eigenvalue is recomputed on a doubled grid and must move by
///   less than 1e−3 (relative), else [`OracleError::GridTooCoarse`];
/// * the lowest eigenvector must have decayed at ρ_max (squared boundary
///   weight ≤ 1e−10), else [`OracleError::DomainTooSmall`].
pub fn fd_eigenvalues(problem: &FdProblem, count: usize) -> Result<Vec<f64>, OracleError> {
    if count == 0 || count > 10 {
        return Err(OracleError::Domain(format!(
            "count must be between 1 and 10, got {count}"
        )));
    }
    let eigs = lowest_raw(problem, problem.n_points, count);
    let refined = lowest_raw(problem, 2 * problem.n_points + 1, 1);
    let drift = (eigs[0] - refined[0]).abs();
    if drift > 1e-3 * refined[0].abs().max(1.0) {
        return Err(OracleError::GridTooCoarse {
            detail: format!(
                "lowest eigenvalue moved {drift:e} when doubling {} points",
                problem.n_points
            ),
        });
    }
    let tail = boundary_tail(problem, eigs[0])?;
    if tail > 1e-10 {
        return Err(OracleError::DomainTooSmall {
            tail,
            rho_max: problem.rho_max,
        });
    }
    Ok(eigs)
}

/// Observed convergence order of eigenvalue number `count − 1` from a
/// Richardson triple (N, 2N+1, 4N+3 points — exact mesh halvings). A clean
/// second-order scheme returns ≈ 2.
pub fn convergence_order(problem: &FdProblem, count: usize) -> Result<f64, OracleError> {
    if count == 0 || count > 10 {
        return Err(OracleError::Domain(format!(
            "count must be between 1 and 10, got {count}"
        )));
    }
    let n = problem.n_points;
    let k = count - 1;
    let coarse = lowest_raw(problem, n, count)[k];
    let medium = lowest_raw(problem, 2 * n + 1, count)[k];
    let fine = lowest_raw(problem, 4 * n + 3, count)[k];
    let e1 = coarse - medium;
    let e2 = medium - fine;
    if e2 == 0.0 || !(e1 / e2).is_finite() || e1 / e2 <= 0.0 {
        return Err(OracleError::Domain(
            "refinement differences too small or irregular to estimate an order".into(),
        ));
    }
    Ok((e1 / e2).abs().log2())
}

/// Cross-check energy: solve the discretized radial problem for the state's
/// oscillator eigenvalue λ_n, then invert
///
///   λ_n = (μB/η − E)² − m0² + 2αγ/η + 2sα
///
/// for E on the requested branch. Everything on the right of the eigenvalue
/// is elementary parameter bookkeeping; the spectrum content comes entirely
/// from the grid.
pub fn oracle_energy(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    n_points: usize,
) -> Result<f64, OracleError> {
    let d = params::derive(config, qn)?;
    if d.omega_bar <= 0.0 {
        return Err(OracleError::Domain(format!(
            "effective frequency {} does not confine; no discrete oracle exists",
            d.omega_bar
        )));
    }
    let gamma_eff = d.gamma / d.eta;
    let n = qn.n() as usize;
    let rho_max = FdProblem::recommended_rho_max(gamma_eff, d.alpha, n + 1);
    let problem = FdProblem::new(gamma_eff, d.alpha, rho_max, n_points)?;
    let lambda = fd_eigenvalues(&problem, n + 1)?[n];
    let s = config.spin.sign();
    let radicand = lambda + config.m0 * config.m0
        - 2.0 * d.alpha * gamma_eff
        - 2.0 * s * d.alpha;
    if radicand < 0.0 {
        return Err(OracleError::NegativeRadicand { radicand });
    }
    Ok(d.mu_b_over_eta + qn.branch().sign() * radicand.sqrt())
}
