//! Planar Dirac oscillator with an Aharonov–Casher coupling on a conical
//! (cosmic-string) background: exact spectra, spinor eigenfunctions, and an
//! independent finite-difference cross-check.
//!
//! The model: a (2+1)-dimensional Dirac oscillator of mass m0 and frequency
//! ω, for a neutral particle carrying a magnetic moment μ, moving on a cone
//! with deficit parameter η ∈ (0, 1] threaded by electric and magnetic field
//! configurations. The radial problem separates per total angular quantum
//! number m_l (half-odd) and spin projection s = ±1, and is exactly solvable:
//!
//! * [`params`] — configuration and quantum-number types, validation, and
//!   the derived quantities (effective frequency ω̄, anyonic phase Φ_AC,
//!   angular factors γ_±) every other module consumes;
//! * [`specfun`] — the small set of special functions needed in closed form
//!   (Kummer M, generalized Laguerre, log-gamma);
//! * [`spectrum`] — bound-state energies, the nonrelativistic reduction, and
//!   parameter sweeps;
//! * [`wavefunction`] — normalized two-component radial eigenfunctions with
//!   analytic derivatives, residual diagnostics, and full spinor sampling;
//! * [`oracle`] — a finite-difference eigensolver for the same radial
//!   operator that never touches the closed form, used as a second route;
//! * [`verify`] — the named end-to-end check battery tying it all together.

pub mod oracle;
pub mod params;
mod quad;
pub mod specfun;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;

pub use oracle::{fd_eigenvalues, oracle_energy, FdProblem, OracleError};
pub use params::{
    derive, validate, Background, Branch, DerivedQuantities, ParamError, PhysicalConfig,
    QuantumNumbers, Spin,
};
pub use spectrum::{energy, energy_nonrel, sweep, AxisSpec, SpectrumError, SweepAxis};
pub use verify::{run_all, seeded_oracle_suite, Check, VerifyOptions};
pub use wavefunction::{
    build_solution, component_ratio, normalize, ode_residual, spinor_at, QuadratureSpec,
    RadialSolution, WfError,
};
