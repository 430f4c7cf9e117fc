//! Radial spinor eigenfunctions: construction, normalization, and
//! self-consistency diagnostics.
//!
//! Each bound state has a two-component radial profile
//!
//!   φ_σ(ρ) = c_σ · ρ^{p_σ} · e^{−αρ²/2} · M(−k_σ, b_σ, αρ²),    σ ∈ {+, −},
//!
//! with M the (here always polynomial) confluent hypergeometric function. The
//! spin-aligned component carries the principal quantum number n directly;
//! the other component is obtained by applying the first-order pairing
//! operator, which Kummer contiguous relations reduce to a single shifted
//! polynomial — so both components stay in the same closed form and every
//! derivative used below is analytic, never a finite difference.
//!
//! The first-order pair being enforced (prime = d/dρ, γ_± the component
//! angular factors, κ₁₃ = m0 + μB/η − E, κ₁₄ = m0 − μB/η + E):
//!
//!   κ₁₃ φ₊ = [ d/dρ − αρ + γ₋/(ηρ) ] φ₋        (lower → upper)
//!   κ₁₄ φ₋ = [ d/dρ + αρ − γ₊/(ηρ) ] φ₊        (upper → lower)
//!
//! and each component separately satisfies
//!
//!   φ_σ″ + φ_σ′/ρ − (γ_σ/η)²·φ_σ/ρ² − α²ρ²·φ_σ + E_σ·φ_σ = 0,
//!   E_σ = (μB/η − E)² − m0² + 2αγ_σ/η + 2σα.

use num_complex::Complex64;
use thiserror::Error;

use crate::params::{Branch, ParamError, PhysicalConfig, QuantumNumbers, Spin};
use crate::quad::composite_radial;
use crate::specfun::{kummer_m_poly, SpecFunError};
use crate::spectrum;

/// Errors from building or interrogating radial solutions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WfError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    /// ω̄ = 0: the oscillator term vanishes and no normalizable eigenfunctions
    /// exist (the spectrum collapses onto ±m0 + μB/η).
    #[error("DegenerateOscillator: effective frequency is zero, no bound eigenfunctions exist")]
    DegenerateOscillator,
    /// The upper→lower pairing degenerates (κ₁₄ = 0 with a vanishing source):
    /// the antiparticle partner of the lowest aligned state does not exist.
    #[error("DegeneratePairing: this branch has no paired state at the lowest level")]
    DegeneratePairing,
    /// Normalization quadrature failed an internal consistency check.
    #[error("QuadratureFailure: {0}")]
    QuadratureFailure(String),
    /// Pairing-ratio probes disagreed beyond tolerance.
    #[error("InconsistentRatio: probe spread {spread:e} exceeds tolerance {tol:e}")]
    InconsistentRatio { spread: f64, tol: f64 },
}

/// One radial component in the closed form ρ^power · e^{−αρ²/2} ·
/// M(−degree, b, αρ²). `power` may be fractional and, for the subdominant
/// component inside the window |γ| < η/2·(…), may lie in (−1, 0): singular at
/// the origin yet square-integrable against ρ dρ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentShape {
    pub power: f64,
    pub degree: u32,
    pub b: f64,
}

impl ComponentShape {
    /// Value at ρ ≥ 0 (unit coefficient).
    pub fn eval(&self, alpha: f64, rho: f64) -> f64 {
        if rho == 0.0 {
            return match self.power.partial_cmp(&0.0) {
                Some(std::cmp::Ordering::Greater) => 0.0,
                Some(std::cmp::Ordering::Equal) => 1.0,
                _ => f64::INFINITY,
            };
        }
        let x = alpha * rho * rho;
        rho.powf(self.power) * (-0.5 * x).exp() * kummer_m_poly(self.degree, self.b, x)
    }

    /// Value, first, and second ρ-derivative at ρ > 0, all analytic.
    ///
    /// With F(x) = M(−k, b, x), x = αρ², the Kummer derivative rule
    /// M′(a, b, x) = (a/b)·M(a+1, b+1, x) gives polynomial expressions for
    /// F′ and F″; the chain rule then assembles φ, φ′, φ″ exactly.
    pub fn derivs(&self, alpha: f64, rho: f64) -> [f64; 3] {
        assert!(rho > 0.0, "derivatives are evaluated away from the origin");
        let x = alpha * rho * rho;
        let k = self.degree;
        let f = kummer_m_poly(k, self.b, x);
        let fp = if k == 0 {
            0.0
        } else {
            -(k as f64) / self.b * kummer_m_poly(k - 1, self.b + 1.0, x)
        };
        let fpp = if k < 2 {
            0.0
        } else {
            (k as f64) * (k as f64 - 1.0) / (self.b * (self.b + 1.0))
                * kummer_m_poly(k - 2, self.b + 2.0, x)
        };
        let g = rho.powf(self.power) * (-0.5 * x).exp();
        let u = self.power / rho - alpha * rho;
        let phi = g * f;
        let dphi = g * (u * f + 2.0 * alpha * rho * fp);
        let ddphi = g
            * ((u * u - self.power / (rho * rho) - alpha) * f
                + (4.0 * alpha * (self.power - x) + 2.0 * alpha) * fp
                + 4.0 * alpha * x * fpp);
        [phi, dphi, ddphi]
    }
}

/// A fully specified radial eigenstate: both component shapes, their
/// amplitudes, and the scalars every consumer needs to re-evaluate it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSolution {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub alpha: f64,
    pub n: u32,
    pub eta: f64,
    pub c_plus: f64,
    pub c_minus: f64,
    pub energy: f64,
    pub upper: ComponentShape,
    pub lower: ComponentShape,
}

impl RadialSolution {
    /// Upper radial component c₊·φ̂₊(ρ).
    pub fn upper_at(&self, rho: f64) -> f64 {
        if self.c_plus == 0.0 {
            0.0
        } else {
            self.c_plus * self.upper.eval(self.alpha, rho)
        }
    }

    /// Lower radial component c₋·φ̂₋(ρ).
    pub fn lower_at(&self, rho: f64) -> f64 {
        if self.c_minus == 0.0 {
            0.0
        } else {
            self.c_minus * self.lower.eval(self.alpha, rho)
        }
    }
}

/// Construct the normalized radial eigenstate for one configuration and one
/// set of quantum numbers.
///
/// The spin-aligned component gets exponent p = |γ_spin|/η and polynomial
/// degree n; the partner component follows from the pairing operator, which
/// lands on one of four closed forms depending on the spin and the sign of
/// the aligned γ. Fails with [`WfError::DegenerateOscillator`] at ω̄ = 0 and
/// [`WfError::DegeneratePairing`] for the antiparticle partner of the lowest
/// spin-up state with γ₊ ≥ 0 (there κ₁₄ = 0 and no partner state exists).
pub fn build_solution(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
) -> Result<RadialSolution, WfError> {
    let point = spectrum::energy(config, qn)?;
    let d = point.derived;
    if d.omega_bar == 0.0 {
        return Err(WfError::DegenerateOscillator);
    }
    let alpha = d.alpha;
    let n = qn.n();
    let nf = n as f64;

    let (upper, lower, c_plus, c_minus) = match config.spin {
        Spin::Up => {
            let gamma = d.gamma_plus;
            let p = gamma.abs() / d.eta;
            let primary = ComponentShape { power: p, degree: n, b: p + 1.0 };
            let kappa14 = config.m0 - d.mu_b_over_eta + point.energy;
            if gamma >= 0.0 && n == 0 {
                // Lowest aligned level: the pairing source vanishes
                // identically, so the state is purely upper — but only on the
                // particle branch, where κ₁₃ = 0 keeps the system consistent.
                if qn.branch() == Branch::Antiparticle {
                    return Err(WfError::DegeneratePairing);
                }
                let placeholder = ComponentShape { power: p + 1.0, degree: 0, b: p + 2.0 };
                (primary, placeholder, 1.0, 0.0)
            } else if gamma >= 0.0 {
                let factor = -2.0 * alpha * nf / (p + 1.0);
                let partner = ComponentShape { power: p + 1.0, degree: n - 1, b: p + 2.0 };
                (primary, partner, 1.0, factor / kappa14)
            } else {
                let factor = 2.0 * p;
                let partner = ComponentShape { power: p - 1.0, degree: n, b: p };
                (primary, partner, 1.0, factor / kappa14)
            }
        }
        Spin::Down => {
            let gamma = d.gamma_minus;
            let p = gamma.abs() / d.eta;
            let primary = ComponentShape { power: p, degree: n, b: p + 1.0 };
            // κ₁₃ never vanishes here: the spin-down bracket is ≥ 1.
            let kappa13 = config.m0 + d.mu_b_over_eta - point.energy;
            if gamma <= 0.0 {
                let factor = -2.0 * alpha * (nf + p + 1.0) / (p + 1.0);
                let partner = ComponentShape { power: p + 1.0, degree: n, b: p + 2.0 };
                (partner, primary, factor / kappa13, 1.0)
            } else {
                let factor = 2.0 * p;
                let partner = ComponentShape { power: p - 1.0, degree: n + 1, b: p };
                (partner, primary, factor / kappa13, 1.0)
            }
        }
    };

    let raw = RadialSolution {
        gamma_plus: d.gamma_plus,
        gamma_minus: d.gamma_minus,
        alpha,
        n,
        eta: d.eta,
        c_plus,
        c_minus,
        energy: point.energy,
        upper,
        lower,
    };
    normalize(&raw, &QuadratureSpec::default())
}

/// Controls for the normalization/overlap quadrature: a main Gauss–Legendre
/// order, a lower-order cross-check, the agreement it must reach, and the
/// bound the truncated tail must satisfy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub nodes_check: usize,
    pub cross_tol: f64,
    pub tail_bound: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes: 40,
            nodes_check: 24,
            cross_tol: 1e-13,
            tail_bound: 1e-14,
        }
    }
}

/// Pick a truncation radius and panel count for integrands that are sums of
/// terms ρ^{q+1}·e^{−αρ²}·poly(αρ²), given the (q, poly-degree) of each term.
fn quad_plan(alpha: f64, terms: &[(f64, u32)]) -> (f64, usize) {
    let mut q_min = f64::INFINITY;
    let mut deg_max = 0.0_f64;
    for &(q, poly_deg) in terms {
        q_min = q_min.min(q);
        deg_max = deg_max.max(0.5 * q + poly_deg as f64);
    }
    // e^{−x}·x^m is far below accumulation noise once x > 3.5m + 80.
    let x_cut = 3.5 * (deg_max + 0.5) + 80.0;
    let rho_cut = (x_cut / alpha).sqrt();
    // Geometric panels toward 0: per-panel error scales like size^{q+2}, so
    // enough halvings push the origin contribution below 1e−20.
    let halvings = ((66.5 / (q_min + 2.0)).ceil() as usize).clamp(28, 400);
    (rho_cut, halvings)
}

fn probability_terms(s: &RadialSolution) -> Vec<(f64, u32)> {
    let mut terms = Vec::new();
    if s.c_plus != 0.0 {
        terms.push((2.0 * s.upper.power, 2 * s.upper.degree));
    }
    if s.c_minus != 0.0 {
        terms.push((2.0 * s.lower.power, 2 * s.lower.degree));
    }
    terms
}

fn checked_integral(
    f: &dyn Fn(f64) -> f64,
    rho_cut: f64,
    halvings: usize,
    spec: &QuadratureSpec,
    what: &str,
) -> Result<f64, WfError> {
    let main = composite_radial(f, rho_cut, halvings, spec.nodes);
    let check = composite_radial(f, rho_cut, halvings, spec.nodes_check);
    if !main.is_finite() {
        return Err(WfError::QuadratureFailure(format!(
            "{what}: non-finite integral"
        )));
    }
    let scale = main.abs().max(1.0);
    if (main - check).abs() > spec.cross_tol * scale {
        return Err(WfError::QuadratureFailure(format!(
            "{what}: rules of order {} and {} differ by {:e} (tolerance {:e})",
            spec.nodes,
            spec.nodes_check,
            (main - check).abs(),
            spec.cross_tol * scale
        )));
    }
    let tail = f(rho_cut).abs() * rho_cut;
    if tail > spec.tail_bound * scale {
        return Err(WfError::QuadratureFailure(format!(
            "{what}: truncated tail estimate {tail:e} exceeds bound"
        )));
    }
    Ok(main)
}

/// Total probability 2π·∫₀^∞ (|φ₊|² + |φ₋|²) ρ dρ of a solution as stored.
pub fn total_probability(s: &RadialSolution, spec: &QuadratureSpec) -> Result<f64, WfError> {
    let terms = probability_terms(s);
    if terms.is_empty() {
        return Err(WfError::QuadratureFailure(
            "both component amplitudes are zero".into(),
        ));
    }
    let (rho_cut, halvings) = quad_plan(s.alpha, &terms);
    let f = |rho: f64| {
        let u = s.upper_at(rho);
        let l = s.lower_at(rho);
        2.0 * std::f64::consts::PI * rho * (u * u + l * l)
    };
    checked_integral(&f, rho_cut, halvings, spec, "normalization")
}

/// Rescale both amplitudes so the total probability is exactly 1. Idempotent
/// to ≈ 1e−15 relative; fails only if the quadrature cannot certify itself.
pub fn normalize(s: &RadialSolution, spec: &QuadratureSpec) -> Result<RadialSolution, WfError> {
    let p = total_probability(s, spec)?;
    if p <= 0.0 {
        return Err(WfError::QuadratureFailure(format!(
            "normalization integral is not positive: {p:e}"
        )));
    }
    let scale = 1.0 / p.sqrt();
    Ok(RadialSolution {
        c_plus: s.c_plus * scale,
        c_minus: s.c_minus * scale,
        ..*s
    })
}

/// Overlap 2π·∫ (φ₊ᵃφ₊ᵇ + φ₋ᵃφ₋ᵇ) ρ dρ of two solutions sharing the same α
/// (the profiles are real, so this is the L² inner product).
pub fn overlap(
    a: &RadialSolution,
    b: &RadialSolution,
    spec: &QuadratureSpec,
) -> Result<f64, WfError> {
    let mut terms = Vec::new();
    if a.c_plus != 0.0 && b.c_plus != 0.0 {
        terms.push((a.upper.power + b.upper.power, a.upper.degree + b.upper.degree));
    }
    if a.c_minus != 0.0 && b.c_minus != 0.0 {
        terms.push((a.lower.power + b.lower.power, a.lower.degree + b.lower.degree));
    }
    if terms.is_empty() {
        return Ok(0.0);
    }
    let (rho_cut, halvings) = quad_plan(a.alpha.max(b.alpha), &terms);
    let f = |rho: f64| {
        2.0 * std::f64::consts::PI
            * rho
            * (a.upper_at(rho) * b.upper_at(rho) + a.lower_at(rho) * b.lower_at(rho))
    };
    checked_integral(&f, rho_cut, halvings, spec, "overlap")
}

/// Largest term-scaled residual of the two decoupled second-order radial
/// equations over `rho_grid` (each point must be > 0).
///
/// At every grid point the five terms φ″, φ′/ρ, −(γ/η)²φ/ρ², −α²ρ²φ, E_σφ are
/// evaluated analytically; the residual is their sum divided by the largest
/// magnitude among them, so the figure is a relative one and meaningful from
/// the origin region out into the Gaussian tail.
pub fn ode_residual(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    solution: &RadialSolution,
    rho_grid: &[f64],
) -> Result<f64, WfError> {
    let d = crate::params::derive(config, qn)?;
    debug_assert!((d.gamma_plus - solution.gamma_plus).abs() < 1e-12);
    debug_assert!((d.gamma_minus - solution.gamma_minus).abs() < 1e-12);
    let e = solution.energy;
    let shift = d.mu_b_over_eta - e;
    let common = shift * shift - config.m0 * config.m0;
    let mut worst = 0.0_f64;
    for &(sigma, gamma, shape, c) in &[
        (1.0, solution.gamma_plus, solution.upper, solution.c_plus),
        (-1.0, solution.gamma_minus, solution.lower, solution.c_minus),
    ] {
        if c == 0.0 {
            continue;
        }
        let e_sigma = common + 2.0 * solution.alpha * gamma / solution.eta
            + 2.0 * sigma * solution.alpha;
        let gh = gamma / solution.eta;
        for &rho in rho_grid {
            assert!(rho > 0.0, "residual grid must stay off the origin");
            let [phi, dphi, ddphi] = shape.derivs(solution.alpha, rho);
            let terms = [
                ddphi,
                dphi / rho,
                -gh * gh / (rho * rho) * phi,
                -solution.alpha * solution.alpha * rho * rho * phi,
                e_sigma * phi,
            ];
            let scale = terms.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
            if scale == 0.0 {
                continue;
            }
            let r = terms.iter().sum::<f64>().abs() / scale;
            worst = worst.max(r);
        }
    }
    Ok(worst)
}

/// Largest term-scaled residual of the coupled first-order pair over
/// `rho_grid`: both κ₁₃φ₊ = [∂ρ − αρ + γ₋/(ηρ)]φ₋ and κ₁₄φ₋ =
/// [∂ρ + αρ − γ₊/(ηρ)]φ₊ are checked at every point.
///
/// The scale includes m0·(|φ₊| + |φ₋|) as a floor so that states where one
/// side vanishes identically (upper-only ground states, where κ₁₃ = 0 only
/// up to rounding) are judged against the physical magnitude rather than
/// against pure rounding noise.
pub fn first_order_residual(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    solution: &RadialSolution,
    rho_grid: &[f64],
) -> Result<f64, WfError> {
    let d = crate::params::derive(config, qn)?;
    let e = solution.energy;
    let kappa13 = config.m0 + d.mu_b_over_eta - e;
    let kappa14 = config.m0 - d.mu_b_over_eta + e;
    let alpha = solution.alpha;
    let mut worst = 0.0_f64;
    for &rho in rho_grid {
        assert!(rho > 0.0, "residual grid must stay off the origin");
        let (u, du) = if solution.c_plus == 0.0 {
            (0.0, 0.0)
        } else {
            let [phi, dphi, _] = solution.upper.derivs(alpha, rho);
            (solution.c_plus * phi, solution.c_plus * dphi)
        };
        let (l, dl) = if solution.c_minus == 0.0 {
            (0.0, 0.0)
        } else {
            let [phi, dphi, _] = solution.lower.derivs(alpha, rho);
            (solution.c_minus * phi, solution.c_minus * dphi)
        };
        let floor = config.m0 * (u.abs() + l.abs());

        // κ₁₃ φ₊ − [∂ρ − αρ + γ₋/(ηρ)] φ₋
        let rhs13 = [dl, -alpha * rho * l, solution.gamma_minus / (solution.eta * rho) * l];
        let lhs13 = kappa13 * u;
        let scale13 = rhs13
            .iter()
            .fold(lhs13.abs(), |m, t| m.max(t.abs()))
            .max(floor);
        if scale13 > 0.0 {
            worst = worst.max((lhs13 - rhs13.iter().sum::<f64>()).abs() / scale13);
        }

        // κ₁₄ φ₋ − [∂ρ + αρ − γ₊/(ηρ)] φ₊
        let rhs14 = [du, alpha * rho * u, -solution.gamma_plus / (solution.eta * rho) * u];
        let lhs14 = kappa14 * l;
        let scale14 = rhs14
            .iter()
            .fold(lhs14.abs(), |m, t| m.max(t.abs()))
            .max(floor);
        if scale14 > 0.0 {
            worst = worst.max((lhs14 - rhs14.iter().sum::<f64>()).abs() / scale14);
        }
    }
    Ok(worst)
}

/// Ratio c₋/c₊ recovered numerically from the upper→lower pairing relation,
/// probed at eight radii spanning [0.5, 2.5]/√α.
///
/// Each usable probe gives r = [∂ρ + αρ − γ₊/(ηρ)]φ̂₊ / (κ₁₄·φ̂₋); probes where
/// φ̂₋ is within 5% of its largest probed magnitude of zero are skipped to
/// stay clear of polynomial nodes. If the surviving probes spread by more
/// than 1e−8 (relative to max(|mean|, 1)), the state is internally
/// inconsistent and [`WfError::InconsistentRatio`] is returned.
pub fn component_ratio(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    solution: &RadialSolution,
) -> Result<f64, WfError> {
    let d = crate::params::derive(config, qn)?;
    let kappa14 = config.m0 - d.mu_b_over_eta + solution.energy;
    if kappa14 == 0.0 {
        return Err(WfError::DegeneratePairing);
    }
    let alpha = solution.alpha;
    let probes: Vec<f64> = (0..8)
        .map(|j| (0.5 + 2.0 * j as f64 / 7.0) / alpha.sqrt())
        .collect();
    let lower_vals: Vec<f64> = probes
        .iter()
        .map(|&rho| solution.lower.eval(alpha, rho))
        .collect();
    let lower_max = lower_vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if lower_max == 0.0 {
        return Err(WfError::QuadratureFailure(
            "lower shape vanishes at every probe radius".into(),
        ));
    }
    let mut estimates = Vec::new();
    for (&rho, &lval) in probes.iter().zip(&lower_vals) {
        if lval.abs() < 0.05 * lower_max {
            continue;
        }
        let [phi, dphi, _] = solution.upper.derivs(alpha, rho);
        let num = dphi + alpha * rho * phi - solution.gamma_plus / (solution.eta * rho) * phi;
        estimates.push(num / (kappa14 * lval));
    }
    let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
    let spread = estimates
        .iter()
        .fold(0.0_f64, |m, r| m.max((r - mean).abs()));
    let tol = 1e-8 * mean.abs().max(1.0);
    if spread > tol {
        return Err(WfError::InconsistentRatio { spread, tol });
    }
    Ok(mean)
}

/// One space-time sample of the full spinor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub t: f64,
    pub rho: f64,
    pub theta: f64,
    pub upper: Complex64,
    pub lower: Complex64,
}

impl SpinorSample {
    /// Probability density |ψ₊|² + |ψ₋|² (independent of θ and t).
    pub fn density(&self) -> f64 {
        self.upper.norm_sqr() + self.lower.norm_sqr()
    }
}

/// Evaluate the full spinor ψ(t, ρ, θ): the radial profiles dressed with the
/// angular factors e^{i(m_l ∓ 1/2)θ} (integers, since m_l is half-odd), the
/// relative phase i on the lower component, and the evolution e^{−iEt}.
pub fn spinor_at(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    solution: &RadialSolution,
    t: f64,
    rho: f64,
    theta: f64,
) -> SpinorSample {
    debug_assert!(crate::params::derive(config, qn)
        .map(|d| (d.gamma_plus - solution.gamma_plus).abs() < 1e-12)
        .unwrap_or(false));
    let k_up = (qn.two_ml() - 1) / 2;
    let k_lo = (qn.two_ml() + 1) / 2;
    let e = solution.energy;
    let upper = Complex64::from_polar(1.0, k_up as f64 * theta - e * t) * solution.upper_at(rho);
    let lower = Complex64::i()
        * Complex64::from_polar(1.0, k_lo as f64 * theta - e * t)
        * solution.lower_at(rho);
    SpinorSample { t, rho, theta, upper, lower }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Background;

    fn qn(n: u32, two_ml: i32, branch: Branch) -> QuantumNumbers {
        QuantumNumbers::new(n, two_ml, branch).unwrap()
    }

    fn residual_grid(alpha: f64) -> Vec<f64> {
        (0..40).map(|j| (0.05 + 0.15 * j as f64) / alpha.sqrt()).collect()
    }

    #[test]
    fn ground_state_is_gaussian_with_known_amplitude() {
        // γ₊ = 0, n = 0: φ₊ = c·e^{−ρ²/2}, and 2π·c²·∫e^{−ρ²}ρdρ = πc² = 1.
        let config = PhysicalConfig::default();
        let s = build_solution(&config, &qn(0, 1, Branch::Particle)).unwrap();
        assert_eq!(s.c_minus, 0.0);
        let expected = 1.0 / std::f64::consts::PI.sqrt();
        assert!((s.c_plus - expected).abs() < 1e-12, "{}", s.c_plus);
        assert!((s.upper_at(0.0) - s.c_plus).abs() < 1e-15);
        assert_eq!(s.lower_at(0.7), 0.0);
    }

    #[test]
    fn golden_ratio_amplitudes() {
        // Flat, μ = 0, m0 = ω = 1. For m_l = −1/2, n = 0 the pairing gives
        // c₋/c₊ = 2/(1+√5) = (√5−1)/2; for m_l = +1/2, n = 1 it gives the
        // same magnitude with opposite sign.
        let config = PhysicalConfig::default();
        let golden = (5.0_f64.sqrt() - 1.0) / 2.0;

        let s = build_solution(&config, &qn(0, -1, Branch::Particle)).unwrap();
        assert!(((s.c_minus / s.c_plus) - golden).abs() < 1e-14);
        let r = component_ratio(&config, &qn(0, -1, Branch::Particle), &s).unwrap();
        assert!((r - golden).abs() < 1e-12, "{r}");

        let s = build_solution(&config, &qn(1, 1, Branch::Particle)).unwrap();
        assert!(((s.c_minus / s.c_plus) + golden).abs() < 1e-14);
        let r = component_ratio(&config, &qn(1, 1, Branch::Particle), &s).unwrap();
        assert!((r + golden).abs() < 1e-12, "{r}");
    }

    #[test]
    fn normalization_holds_and_is_idempotent() {
        let config = PhysicalConfig {
            mu: 1.0,
            lambda1: 0.5,
            lambda2: 0.4,
            b_field: 0.7,
            background: Background::CosmicString { eta: 0.8 },
            ..PhysicalConfig::default()
        };
        let spec = QuadratureSpec::default();
        for state in [qn(0, 1, Branch::Particle), qn(3, -5, Branch::Antiparticle)] {
            let s = build_solution(&config, &state).unwrap();
            let p = total_probability(&s, &spec).unwrap();
            assert!((p - 1.0).abs() < 1e-12, "{p}");
            let again = normalize(&s, &spec).unwrap();
            assert!((again.c_plus - s.c_plus).abs() <= 1e-12 * s.c_plus.abs());
            assert!((again.c_minus - s.c_minus).abs() <= 1e-12 * s.c_minus.abs().max(1e-300));
        }
    }

    #[test]
    fn same_channel_states_are_orthogonal() {
        let config = PhysicalConfig::default();
        let spec = QuadratureSpec::default();
        let states: Vec<_> = (0..3)
            .map(|n| build_solution(&config, &qn(n, -1, Branch::Particle)).unwrap())
            .collect();
        for i in 0..3 {
            for j in 0..3 {
                let v = overlap(&states[i], &states[j], &spec).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-10, "({i},{j}): {v}");
            }
        }
    }

    #[test]
    fn residuals_vanish_on_exact_states() {
        let fields_on = PhysicalConfig {
            mu: 1.0,
            lambda1: 0.5,
            lambda2: 0.4,
            b_field: 0.7,
            ..PhysicalConfig::default()
        };
        for config in [
            PhysicalConfig::default(),
            PhysicalConfig { spin: Spin::Down, ..PhysicalConfig::default() },
            PhysicalConfig {
                background: Background::CosmicString { eta: 0.5 },
                ..fields_on
            },
            PhysicalConfig { spin: Spin::Down, ..fields_on },
        ] {
            for state in [
                qn(0, -3, Branch::Particle),
                qn(2, 5, Branch::Particle),
                qn(1, 1, Branch::Antiparticle),
            ] {
                let s = build_solution(&config, &state).unwrap();
                let grid = residual_grid(s.alpha);
                let r2 = ode_residual(&config, &state, &s, &grid).unwrap();
                assert!(r2 < 1e-10, "second order: {r2:e}");
                let r1 = first_order_residual(&config, &state, &s, &grid).unwrap();
                assert!(r1 < 1e-10, "first order: {r1:e}");
            }
        }
    }

    #[test]
    fn residual_detects_wrong_energy() {
        let config = PhysicalConfig::default();
        let state = qn(2, 3, Branch::Particle);
        let mut s = build_solution(&config, &state).unwrap();
        s.energy += 1e-3;
        let grid = residual_grid(s.alpha);
        let r2 = ode_residual(&config, &state, &s, &grid).unwrap();
        assert!(r2 > 1e-6, "perturbed energy went unnoticed: {r2:e}");
        let r1 = first_order_residual(&config, &state, &s, &grid).unwrap();
        assert!(r1 > 1e-6, "{r1:e}");
    }

    #[test]
    fn ratio_detects_tampered_shape() {
        let config = PhysicalConfig::default();
        let state = qn(2, -3, Branch::Particle);
        let mut s = build_solution(&config, &state).unwrap();
        s.lower.b += 0.1;
        assert!(matches!(
            component_ratio(&config, &state, &s),
            Err(WfError::InconsistentRatio { .. })
        ));
    }

    #[test]
    fn degenerate_cases_are_rejected() {
        // ω̄ = 0 (resonance): no eigenfunctions at all.
        let resonant = PhysicalConfig {
            omega: 0.5,
            mu: 1.0,
            lambda2: 1.0,
            ..PhysicalConfig::default()
        };
        assert!(matches!(
            build_solution(&resonant, &qn(0, 1, Branch::Particle)),
            Err(WfError::DegenerateOscillator)
        ));
        // Antiparticle partner of the lowest aligned spin-up state.
        let config = PhysicalConfig::default();
        assert!(matches!(
            build_solution(&config, &qn(0, 1, Branch::Antiparticle)),
            Err(WfError::DegeneratePairing)
        ));
        // The particle state with the same quantum numbers is fine.
        assert!(build_solution(&config, &qn(0, 1, Branch::Particle)).is_ok());
    }

    #[test]
    fn singular_window_state_is_normalizable_and_exact() {
        // An explicit phase override puts the shifted angular number inside
        // (−η/2, η/2): the partner component then carries a ρ^{p−1} exponent
        // in (−1, 0) — singular at the origin but square integrable.
        let config = PhysicalConfig {
            phi_ac_override: Some(-0.6 * std::f64::consts::PI),
            ..PhysicalConfig::default()
        };
        let state = qn(1, 1, Branch::Particle);
        let s = build_solution(&config, &state).unwrap();
        assert!(s.lower.power < 0.0 && s.lower.power > -1.0, "{}", s.lower.power);
        assert!(s.lower_at(1e-8).abs() > 1e3);
        let p = total_probability(&s, &QuadratureSpec::default()).unwrap();
        assert!((p - 1.0).abs() < 1e-11, "{p}");
        let grid = residual_grid(s.alpha);
        assert!(ode_residual(&config, &state, &s, &grid).unwrap() < 1e-9);
        assert!(first_order_residual(&config, &state, &s, &grid).unwrap() < 1e-9);
    }

    #[test]
    fn spinor_density_is_stationary_and_axisymmetric() {
        let config = PhysicalConfig {
            spin: Spin::Down,
            background: Background::CosmicString { eta: 0.8 },
            ..PhysicalConfig::default()
        };
        let state = qn(1, -3, Branch::Particle);
        let s = build_solution(&config, &state).unwrap();
        let reference = spinor_at(&config, &state, &s, 0.0, 1.3, 0.0).density();
        for (t, theta) in [(0.0, 1.0), (2.5, 0.3), (10.0, -2.0)] {
            let d = spinor_at(&config, &state, &s, t, 1.3, theta).density();
            assert!((d - reference).abs() <= 1e-14 * reference);
        }
        // Angular quantum numbers: upper carries m_l − 1/2, lower m_l + 1/2.
        let sample = spinor_at(&config, &state, &s, 0.0, 1.3, std::f64::consts::PI);
        // two_ml = −3: k_up = −2, so e^{ik·π} = 1; k_lo = −1, e^{−iπ} = −1.
        assert!((sample.upper.im).abs() < 1e-12);
        assert!(sample.upper.re * s.upper_at(1.3) > 0.0);
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let shape = ComponentShape { power: 1.75, degree: 3, b: 2.75 };
        let alpha = 0.9;
        let h = 1e-5;
        for &rho in &[0.4, 1.1, 2.3] {
            let [_, dphi, ddphi] = shape.derivs(alpha, rho);
            let f = |r: f64| shape.eval(alpha, r);
            let fd1 = (f(rho + h) - f(rho - h)) / (2.0 * h);
            let fd2 = (f(rho + h) - 2.0 * f(rho) + f(rho - h)) / (h * h);
            assert!((dphi - fd1).abs() < 1e-7 * dphi.abs().max(1.0), "{dphi} vs {fd1}");
            assert!((ddphi - fd2).abs() < 1e-4 * ddphi.abs().max(1.0), "{ddphi} vs {fd2}");
        }
    }
}
