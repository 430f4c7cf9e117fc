//! Closed-form bound-state energies and parameter sweeps.
//!
//! Relativistic spectrum on a cone with deficit parameter η:
//!
//!   E = μB/η ± √( m0² + 4·m0·ω̄·[ n_s + (|γ| − γ)/(2η) ] ),
//!
//! the upper sign for the particle branch, the lower for the antiparticle
//! branch. At the resonant threshold ω̄ = 0 the bracket is multiplied away and
//! every state collapses to E = μB/η ± m0. Nonrelativistic spectrum (particle
//! branch only): Ē = μB/η + 2·ω̄·[same bracket].

use thiserror::Error;

use crate::params::{
    self, Background, Branch, DerivedQuantities, ParamError, PhysicalConfig, QuantumNumbers, Spin,
};

/// Errors specific to spectrum evaluation and sweeps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Param(#[from] ParamError),
    /// The nonrelativistic reduction only exists for the particle branch.
    #[error("BranchError: the nonrelativistic spectrum has no antiparticle branch")]
    Branch,
    /// Sweep axis name not recognized.
    #[error("UnknownAxis: {0:?} is not a sweepable parameter")]
    UnknownAxis(String),
    /// Sweep range produced no values.
    #[error("EmptyRange: start {start}, stop {stop}, step {step} yields no axis values")]
    EmptyRange { start: f64, stop: f64, step: f64 },
}

/// One evaluated state: the energy plus every intermediate a test or a table
/// might want.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub qn: QuantumNumbers,
    pub derived: DerivedQuantities,
    /// n_s + (|γ| − γ)/(2η) — the only nontrivial intermediate, kept for
    /// diagnostics. Always ≥ 0.
    pub bracket: f64,
    /// E (relativistic) or Ē (nonrelativistic), depending on the op.
    pub energy: f64,
}

fn bracket_of(d: &DerivedQuantities) -> f64 {
    d.n_s as f64 + (d.gamma.abs() - d.gamma) / (2.0 * d.eta)
}

/// Relativistic energy of one state. The radicand is m0² + 4m0ω̄·bracket ≥ m0²
/// in-domain, so the square root never fails after validation.
pub fn energy(config: &PhysicalConfig, qn: &QuantumNumbers) -> Result<SpectrumPoint, ParamError> {
    energy_with_bracket_shift(config, qn, 0.0)
}

/// Internal hook: same as [`energy`] with the bracket perturbed by `shift`.
/// Used by the verification suite to prove the oracle-agreement check can
/// detect a closed-form regression; `shift = 0` is the production path.
pub(crate) fn energy_with_bracket_shift(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
    shift: f64,
) -> Result<SpectrumPoint, ParamError> {
    let derived = params::derive(config, qn)?;
    let bracket = bracket_of(&derived) + shift;
    let radicand = config.m0 * config.m0 + 4.0 * config.m0 * derived.omega_bar * bracket;
    let energy = derived.mu_b_over_eta + qn.branch().sign() * radicand.sqrt();
    Ok(SpectrumPoint {
        qn: *qn,
        derived,
        bracket,
        energy,
    })
}

/// Nonrelativistic energy Ē = μB/η + 2ω̄·bracket (valid when 4ω̄·bracket ≪ m0).
pub fn energy_nonrel(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
) -> Result<SpectrumPoint, SpectrumError> {
    if qn.branch() == Branch::Antiparticle {
        return Err(SpectrumError::Branch);
    }
    let derived = params::derive(config, qn)?;
    let bracket = bracket_of(&derived);
    Ok(SpectrumPoint {
        qn: *qn,
        derived,
        bracket,
        energy: derived.mu_b_over_eta + 2.0 * derived.omega_bar * bracket,
    })
}

/// Parameter that a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    BField,
    Omega,
    Mu,
    Lambda1,
    Lambda2,
    Eta,
    /// Sweeps the explicit Φ_AC override (exact phase shifts, unlike λ₁).
    PhiAc,
}

impl SweepAxis {
    /// Parse an axis name as used on the command line or in config files.
    pub fn parse(name: &str) -> Result<Self, SpectrumError> {
        match name.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "b" | "b_field" => Ok(SweepAxis::BField),
            "omega" => Ok(SweepAxis::Omega),
            "mu" => Ok(SweepAxis::Mu),
            "lambda1" => Ok(SweepAxis::Lambda1),
            "lambda2" => Ok(SweepAxis::Lambda2),
            "eta" => Ok(SweepAxis::Eta),
            "phi_ac" | "phi_ac_override" => Ok(SweepAxis::PhiAc),
            _ => Err(SpectrumError::UnknownAxis(name.to_string())),
        }
    }

    /// Canonical column name for tabulated output.
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::BField => "b",
            SweepAxis::Omega => "omega",
            SweepAxis::Mu => "mu",
            SweepAxis::Lambda1 => "lambda1",
            SweepAxis::Lambda2 => "lambda2",
            SweepAxis::Eta => "eta",
            SweepAxis::PhiAc => "phi_ac",
        }
    }

    /// Copy of `base` with this axis set to `value`.
    pub fn apply(self, base: &PhysicalConfig, value: f64) -> PhysicalConfig {
        let mut config = *base;
        match self {
            SweepAxis::BField => config.b_field = value,
            SweepAxis::Omega => config.omega = value,
            SweepAxis::Mu => config.mu = value,
            SweepAxis::Lambda1 => config.lambda1 = value,
            SweepAxis::Lambda2 => config.lambda2 = value,
            SweepAxis::Eta => config.background = Background::CosmicString { eta: value },
            SweepAxis::PhiAc => config.phi_ac_override = Some(value),
        }
        config
    }
}

/// Inclusive arithmetic range `start, start+step, …, ≤ stop` along one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl AxisSpec {
    /// Materialize the axis values (ascending). The count is computed up
    /// front with a small relative slack so that e.g. 0.5:1.0:0.25 reliably
    /// includes the 1.0 endpoint despite rounding.
    pub fn values(&self) -> Result<Vec<f64>, SpectrumError> {
        let empty = SpectrumError::EmptyRange {
            start: self.start,
            stop: self.stop,
            step: self.step,
        };
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return Err(empty);
        }
        if self.step <= 0.0 || self.stop < self.start {
            return Err(empty);
        }
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        Ok((0..count)
            .map(|i| self.start + i as f64 * self.step)
            .collect())
    }
}

/// One sweep table entry. Rows that fail validation (for example an eta sweep
/// running into ω̄ < 0 territory) are kept, carrying the error instead of a
/// point, so tables stay rectangular.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub spin: Spin,
    pub qn: QuantumNumbers,
    pub result: Result<SpectrumPoint, ParamError>,
}

/// Evaluate the spectrum along one axis for every requested state.
///
/// Row order is deterministic: axis values ascending (outer), then `qn_set`
/// in the order given (inner). The config's spin applies to every row.
pub fn sweep(
    config: &PhysicalConfig,
    spec: &AxisSpec,
    qn_set: &[QuantumNumbers],
) -> Result<Vec<SweepRow>, SpectrumError> {
    let values = spec.values()?;
    let mut rows = Vec::with_capacity(values.len() * qn_set.len());
    for &value in &values {
        let swept = spec.axis.apply(config, value);
        for qn in qn_set {
            rows.push(SweepRow {
                axis_value: value,
                spin: swept.spin,
                qn: *qn,
                result: energy(&swept, qn),
            });
        }
    }
    Ok(rows)
}
