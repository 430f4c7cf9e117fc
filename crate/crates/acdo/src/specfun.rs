//! Special functions for the closed-form bound states: Kummer's confluent
//! hypergeometric function M(a, b, x) = ₁F₁(a; b; x), generalized Laguerre
//! polynomials, and log-gamma.
//!
//! Only the corner actually needed is implemented. Bound-state radial
//! functions always call M with `a` a nonpositive integer, where the series
//! truncates to an exact polynomial (DLMF 13.2.2 with 13.2.7); the running
//! series is kept for cross-checks at moderate `x`. Laguerre polynomials use
//! the standard three-term recurrence (DLMF 18.9.13) and exist purely as an
//! independent route to the same polynomials in tests. `ln_gamma` is a Lanczos
//! approximation (g = 7, 9 coefficients), accurate to well below the 1e−12
//! relative error this crate relies on.

use std::f64::consts::PI;

use thiserror::Error;

/// Errors from special-function evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// The series needs (b)_k at a k where b has already hit a nonpositive
    /// integer, so M(a, b, x) has a pole in its parameters.
    #[error("PoleError: 1F1({a}, {b}, {x}) hits the pole of (b)_k before the series terminates")]
    Pole { a: f64, b: f64, x: f64 },
    /// The running series did not meet the termination criterion.
    #[error("NonConvergence: 1F1({a}, {b}, {x}) did not converge within {max_terms} terms")]
    NonConvergence {
        a: f64,
        b: f64,
        x: f64,
        max_terms: usize,
    },
    /// Argument outside the implemented domain.
    #[error("DomainError x: ln_gamma requires a finite x > 0 (got {x})")]
    Domain { x: f64 },
}

/// Hard cap on series terms; far beyond anything a bound-state evaluation
/// needs (design target x ≤ 200, where the series converges in < 400 terms).
const MAX_TERMS: usize = 10_000;

/// Kummer's confluent hypergeometric function M(a, b, x).
///
/// For `a` a nonpositive integer −n, the degree-n polynomial is summed exactly
/// (n + 1 terms, term-ratio recurrence t_{k+1} = t_k·(a+k)·x/((b+k)(k+1))).
/// Otherwise the series runs until the current term drops below 1e−16 of the
/// partial sum. Intended domain: x ≥ 0 (bound states have x = αρ² ≥ 0).
pub fn kummer_m(a: f64, b: f64, x: f64) -> Result<f64, SpecFunError> {
    let a_is_nonpos_int = a <= 0.0 && a.fract() == 0.0;
    let b_is_nonpos_int = b <= 0.0 && b.fract() == 0.0;

    if a_is_nonpos_int {
        // Polynomial of degree n = −a. Legal even for nonpositive-integer b
        // as long as the series terminates before (b)_k vanishes, i.e. −a ≤ −b.
        if b_is_nonpos_int && b > a {
            return Err(SpecFunError::Pole { a, b, x });
        }
        let n = -a;
        if n >= MAX_TERMS as f64 {
            return Err(SpecFunError::NonConvergence {
                a,
                b,
                x,
                max_terms: MAX_TERMS,
            });
        }
        return Ok(kummer_m_poly(n as u32, b, x));
    }
    if b_is_nonpos_int {
        return Err(SpecFunError::Pole { a, b, x });
    }

    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if !sum.is_finite() {
            // Terms outgrew f64 long before settling (huge x): report rather
            // than hand back an overflowed partial sum.
            break;
        }
        if term.abs() <= 1e-16 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(SpecFunError::NonConvergence {
        a,
        b,
        x,
        max_terms: MAX_TERMS,
    })
}

/// Exact polynomial case M(−n, b, x), as an infallible kernel for the radial
/// evaluators (their b is always positive, so no pole can occur).
pub(crate) fn kummer_m_poly(n: u32, b: f64, x: f64) -> f64 {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let a = -(n as f64);
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
    }
    sum
}

/// Generalized Laguerre polynomial L_n^α(x) by the three-term recurrence
///
///   (k+1)·L_{k+1}^α = (2k + 1 + α − x)·L_k^α − (k + α)·L_{k−1}^α.
///
/// Intended domain α > −1 (orthogonality range); the recurrence itself is
/// defined for any α. Related to the Kummer polynomial by
/// M(−n, α+1, x) = n!·Γ(α+1)/Γ(n+α+1) · L_n^α(x).
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0_f64;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for finite x > 0, via the Lanczos approximation (g = 7, n = 9).
///
/// Relative error below ~1e−14 on the positive axis, comfortably inside the
/// 1e−12 contract used by the normalization cross-checks.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecFunError::Domain { x });
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
}
