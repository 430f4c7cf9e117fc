//! Physical parameters, quantum numbers, and derived quantities.
//!
//! Everything downstream (spectra, wavefunctions, the finite-difference
//! oracle) consumes the derived set computed here. Conventions, in natural
//! units (ħ = c = 1):
//!
//! - `ω_AC = μλ₂/(η·m0)`: effective frequency induced by the radial electric
//!   field of a uniformly charged cylinder acting on the moving dipole.
//! - `ω̄ = ω − ω_AC/2`: effective oscillator frequency. Bound configurations
//!   require ω̄ ≥ 0; ω̄ = 0 is the resonant threshold where the whole spectrum
//!   collapses to E = μB/η ± m0.
//! - `Φ_AC = 4π·s·μ·λ₁`: Aharonov–Casher phase accumulated on a loop around a
//!   charged line. An explicit override is available so phase identities can
//!   be probed at exact multiples of 2π without going through λ₁.
//! - `γ_± = m_l + s·Φ_AC/(2π) ∓ η/2`: effective angular parameters of the two
//!   spinor components on a cone with deficit parameter η. `gamma` denotes the
//!   spin-aligned one (γ₊ for s = +1, γ₋ for s = −1); it is the parameter that
//!   enters the energy formula, and shifting Φ_AC by 2π is exactly equivalent
//!   to shifting m_l by s·1.
//! - `n_s = n + (1 − s)/2`: spin-shifted radial index.

use std::f64::consts::PI;

use thiserror::Error;

/// Errors from parameter validation and derivation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    /// A field is outside its admissible domain.
    #[error("DomainError {field}: {reason} (got {value})")]
    Domain {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The effective oscillator frequency ω̄ = ω − ω_AC/2 came out negative;
    /// such configurations have no bound oscillator states and are rejected.
    #[error(
        "NegativeEffectiveFrequency: omega_bar = omega - omega_ac/2 = {omega_bar} < 0 \
         (omega = {omega}, omega_ac = {omega_ac})"
    )]
    NegativeEffectiveFrequency {
        omega: f64,
        omega_ac: f64,
        omega_bar: f64,
    },
}

/// Spacetime background seen by the oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Background {
    /// Minkowski plane. Identical in every observable to `CosmicString { eta: 1.0 }`.
    Flat,
    /// Conical geometry, `ds² = −dt² + dρ² + η²ρ²dθ²`, with angular deficit
    /// parameter `eta ∈ (0, 1]`.
    CosmicString { eta: f64 },
}

impl Background {
    /// Deficit parameter; `1` for the flat background.
    pub fn eta(self) -> f64 {
        match self {
            Background::Flat => 1.0,
            Background::CosmicString { eta } => eta,
        }
    }
}

/// Dipole spin projection along the symmetry axis, s = ±1.
///
/// Ordered so that `Down < Up`, i.e. ascending in the numeric value of s;
/// sorted outputs list s = −1 rows first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    /// s as a float, ±1.0.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    /// s as an integer, ±1.
    pub fn value(self) -> i32 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    /// Parse the integer spin projection; only ±1 are legal.
    pub fn from_value(v: i32) -> Result<Self, ParamError> {
        match v {
            1 => Ok(Spin::Up),
            -1 => Ok(Spin::Down),
            _ => Err(ParamError::Domain {
                field: "s",
                value: v as f64,
                reason: "spin projection must be +1 or -1",
            }),
        }
    }
}

/// Energy branch: the ± sign in front of the square root of the spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Particle,
    Antiparticle,
}

impl Branch {
    /// +1 for the particle branch, −1 for the antiparticle branch.
    pub fn sign(self) -> f64 {
        match self {
            Branch::Particle => 1.0,
            Branch::Antiparticle => -1.0,
        }
    }

    /// Lowercase name used in tabulated output.
    pub fn name(self) -> &'static str {
        match self {
            Branch::Particle => "particle",
            Branch::Antiparticle => "antiparticle",
        }
    }
}

/// Static physical inputs of one oscillator configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConfig {
    /// Rest mass m0 > 0.
    pub m0: f64,
    /// Bare oscillator frequency ω ≥ 0.
    pub omega: f64,
    /// Magnetic dipole moment μ.
    pub mu: f64,
    /// Effective line-charge coupling λ₁ ≥ 0 (sources the AC phase).
    pub lambda1: f64,
    /// Effective volume-charge coupling λ₂ ≥ 0 (sources ω_AC).
    pub lambda2: f64,
    /// Magnetic field strength B; enters only through the offset μB/η.
    pub b_field: f64,
    /// Dipole projection s = ±1.
    pub spin: Spin,
    /// Flat plane or cone.
    pub background: Background,
    /// When set, used as Φ_AC verbatim instead of the default 4π·s·μ·λ₁.
    pub phi_ac_override: Option<f64>,
}

impl Default for PhysicalConfig {
    fn default() -> Self {
        PhysicalConfig {
            m0: 1.0,
            omega: 1.0,
            mu: 0.0,
            lambda1: 0.0,
            lambda2: 0.0,
            b_field: 0.0,
            spin: Spin::Up,
            background: Background::Flat,
            phi_ac_override: None,
        }
    }
}

/// Label of one bound state: radial index, half-integral angular momentum
/// projection (stored doubled so γ arithmetic stays exact), and branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumNumbers {
    n: u32,
    two_ml: i32,
    branch: Branch,
}

impl QuantumNumbers {
    /// `two_ml` must be odd: m_l runs over ±1/2, ±3/2, …
    pub fn new(n: u32, two_ml: i32, branch: Branch) -> Result<Self, ParamError> {
        if two_ml % 2 == 0 {
            return Err(ParamError::Domain {
                field: "two_ml",
                value: two_ml as f64,
                reason: "must be an odd integer (m_l is half-integral)",
            });
        }
        Ok(QuantumNumbers { n, two_ml, branch })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn two_ml(&self) -> i32 {
        self.two_ml
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// m_l = two_ml/2, exact (half-integers are representable).
    pub fn ml(&self) -> f64 {
        self.two_ml as f64 / 2.0
    }

    /// Same state on the other energy branch.
    pub fn with_branch(&self, branch: Branch) -> Self {
        QuantumNumbers { branch, ..*self }
    }

    /// Total angular momentum projection m_j = m_l + s/2, always an integer.
    pub fn mj(&self, spin: Spin) -> i32 {
        (self.two_ml + spin.value()) / 2
    }
}

/// Everything the spectrum and wavefunction formulas need, computed once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    /// Deficit parameter (1 when flat).
    pub eta: f64,
    /// ω_AC = μλ₂/(η·m0).
    pub omega_ac: f64,
    /// ω̄ = ω − ω_AC/2 ≥ 0.
    pub omega_bar: f64,
    /// Gaussian scale α = m0·ω̄ of the radial bound states.
    pub alpha: f64,
    /// AC phase Φ_AC (override or 4π·s·μ·λ₁).
    pub phi_ac: f64,
    /// Spin-aligned angular parameter: γ₊ for s = +1, γ₋ for s = −1.
    pub gamma: f64,
    /// Upper-component angular parameter γ₊ = m_l + sΦ_AC/(2π) − η/2.
    pub gamma_plus: f64,
    /// Lower-component angular parameter γ₋ = m_l + sΦ_AC/(2π) + η/2.
    pub gamma_minus: f64,
    /// n_s = n for s = +1, n + 1 for s = −1.
    pub n_s: u32,
    /// μB/η, the uniform offset of both energy branches.
    pub mu_b_over_eta: f64,
}

fn require_finite(field: &'static str, value: f64) -> Result<(), ParamError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(ParamError::Domain {
            field,
            value,
            reason: "must be finite",
        })
    }
}

/// Check every static domain constraint, then the derived ω̄ ≥ 0 condition.
pub fn validate(config: &PhysicalConfig) -> Result<(), ParamError> {
    require_finite("m0", config.m0)?;
    if config.m0 <= 0.0 {
        return Err(ParamError::Domain {
            field: "m0",
            value: config.m0,
            reason: "rest mass must be positive",
        });
    }
    require_finite("omega", config.omega)?;
    if config.omega < 0.0 {
        return Err(ParamError::Domain {
            field: "omega",
            value: config.omega,
            reason: "oscillator frequency must be nonnegative",
        });
    }
    require_finite("mu", config.mu)?;
    require_finite("lambda1", config.lambda1)?;
    if config.lambda1 < 0.0 {
        return Err(ParamError::Domain {
            field: "lambda1",
            value: config.lambda1,
            reason: "line-charge coupling must be nonnegative",
        });
    }
    require_finite("lambda2", config.lambda2)?;
    if config.lambda2 < 0.0 {
        return Err(ParamError::Domain {
            field: "lambda2",
            value: config.lambda2,
            reason: "volume-charge coupling must be nonnegative",
        });
    }
    require_finite("b", config.b_field)?;
    let eta = config.background.eta();
    require_finite("eta", eta)?;
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(ParamError::Domain {
            field: "eta",
            value: eta,
            reason: "deficit parameter must satisfy 0 < eta <= 1",
        });
    }
    if let Some(phi) = config.phi_ac_override {
        require_finite("phi_ac", phi)?;
    }

    let omega_ac = config.mu * config.lambda2 / (eta * config.m0);
    let omega_bar = config.omega - 0.5 * omega_ac;
    if omega_bar < 0.0 {
        return Err(ParamError::NegativeEffectiveFrequency {
            omega: config.omega,
            omega_ac,
            omega_bar,
        });
    }
    Ok(())
}

/// Compute the derived quantities for one `(config, qn)` pair.
///
/// Validates first, so `derive` alone is a complete gate for downstream code.
pub fn derive(
    config: &PhysicalConfig,
    qn: &QuantumNumbers,
) -> Result<DerivedQuantities, ParamError> {
    validate(config)?;
    let eta = config.background.eta();
    let s = config.spin.sign();

    let omega_ac = config.mu * config.lambda2 / (eta * config.m0);
    let omega_bar = config.omega - 0.5 * omega_ac;
    let phi_ac = config
        .phi_ac_override
        .unwrap_or(4.0 * PI * s * config.mu * config.lambda1);

    // The phase enters exactly like a shift of m_l: a 2π change of Φ_AC moves
    // the spectrum one m_l step (times s).
    let shifted_ml = qn.ml() + s * phi_ac / (2.0 * PI);
    let gamma_plus = shifted_ml - 0.5 * eta;
    let gamma_minus = shifted_ml + 0.5 * eta;
    let gamma = match config.spin {
        Spin::Up => gamma_plus,
        Spin::Down => gamma_minus,
    };
    let n_s = match config.spin {
        Spin::Up => qn.n(),
        Spin::Down => qn.n() + 1,
    };

    Ok(DerivedQuantities {
        eta,
        omega_ac,
        omega_bar,
        alpha: config.m0 * omega_bar,
        phi_ac,
        gamma,
        gamma_plus,
        gamma_minus,
        n_s,
        mu_b_over_eta: config.mu * config.b_field / eta,
    })
}
