//! Self-contained verification battery: every structural identity the model
//! promises, each reduced to one named check with a numeric observable and a
//! pinned tolerance.
//!
//! The checks deliberately re-derive their reference values through routes
//! independent of the code under test: residuals come from analytic
//! derivatives plugged into the defining equations, energies are compared
//! against a finite-difference eigensolver that never sees the closed form,
//! and reductions (flat limit, vanishing moment, nonrelativistic limit) are
//! recomputed inline from first principles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::oracle;
use crate::params::{self, Background, Branch, PhysicalConfig, QuantumNumbers, Spin};
use crate::spectrum;
use crate::wavefunction::{self, QuadratureSpec, WfError};

/// Outcome of one named verification check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed figure of merit (NaN if a state failed to build).
    pub observed: f64,
    pub tolerance: f64,
}

impl Check {
    fn against_max(name: &'static str, observed: f64, tolerance: f64) -> Self {
        Check {
            name,
            passed: observed <= tolerance,
            observed,
            tolerance,
        }
    }
}

/// Knobs for [`run_all`]. `bracket_shift` perturbs the closed-form spectrum
/// inside the oracle-agreement check only — it exists to demonstrate that the
/// cross-check actually has teeth, and must be 0 for a production run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub bracket_shift: f64,
    pub oracle_points: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 42,
            bracket_shift: 0.0,
            oracle_points: 4000,
        }
    }
}

/// Run the full battery in a fixed order. Never panics on check failure —
/// every outcome is reported in the returned list.
pub fn run_all(options: &VerifyOptions) -> Vec<Check> {
    vec![
        ode_residual_check(),
        coupled_closure_check(),
        phase_periodicity_check(options.seed),
        flat_limit_check(options.seed),
        branch_symmetry_check(options.seed),
        mu_zero_reduction_check(options.seed),
        oracle_agreement_check(options),
        nonrel_asymptotics_check(),
        resonance_threshold_check(options.seed),
        normalization_orthogonality_check(),
    ]
}

/// NaN-preserving maximum: one broken sample must fail the whole check.
fn fold_max(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0_f64, |m, v| {
        if v.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(v)
        }
    })
}

fn probe_grid(alpha: f64) -> Vec<f64> {
    (0..40)
        .map(|j| (0.05 + 0.15 * j as f64) / alpha.sqrt())
        .collect()
}

/// Deterministic grid of states for the residual and closure checks:
/// three deficit values, fields off and on, both spins, n ≤ 5, |2m_l| ≤ 9,
/// both energy branches.
fn residual_state_set() -> Vec<(PhysicalConfig, QuantumNumbers)> {
    let mut out = Vec::new();
    for &eta in &[0.5, 0.8, 1.0] {
        for fields_on in [false, true] {
            for spin in [Spin::Up, Spin::Down] {
                let config = PhysicalConfig {
                    mu: if fields_on { 1.0 } else { 0.0 },
                    lambda1: if fields_on { 0.5 } else { 0.0 },
                    lambda2: if fields_on { 0.4 } else { 0.0 },
                    b_field: if fields_on { 0.7 } else { 0.0 },
                    spin,
                    background: Background::CosmicString { eta },
                    ..PhysicalConfig::default()
                };
                for n in 0..=5 {
                    for two_ml in (-9..=9).step_by(2) {
                        for branch in [Branch::Particle, Branch::Antiparticle] {
                            out.push((
                                config,
                                QuantumNumbers::new(n, two_ml, branch).unwrap(),
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

fn worst_over_states<F>(per_state: F) -> f64
where
    F: Fn(&PhysicalConfig, &QuantumNumbers) -> f64 + Sync,
{
    let states = residual_state_set();
    let values: Vec<f64> = states
        .par_iter()
        .map(|(config, qn)| per_state(config, qn))
        .collect();
    fold_max(values)
}

fn ode_residual_check() -> Check {
    let observed = worst_over_states(|config, qn| {
        match wavefunction::build_solution(config, qn) {
            Ok(s) => {
                let grid = probe_grid(s.alpha);
                wavefunction::ode_residual(config, qn, &s, &grid).unwrap_or(f64::NAN)
            }
            // The lowest aligned level has no antiparticle partner; that is
            // expected structure, not a residual failure.
            Err(WfError::DegeneratePairing) => 0.0,
            Err(_) => f64::NAN,
        }
    });
    Check::against_max("ode_residual", observed, 1e-8)
}

fn coupled_closure_check() -> Check {
    let observed = worst_over_states(|config, qn| {
        match wavefunction::build_solution(config, qn) {
            Ok(s) => {
                let grid = probe_grid(s.alpha);
                wavefunction::first_order_residual(config, qn, &s, &grid).unwrap_or(f64::NAN)
            }
            Err(WfError::DegeneratePairing) => 0.0,
            Err(_) => f64::NAN,
        }
    });
    Check::against_max("coupled_closure", observed, 1e-8)
}

const ETA_CHOICES: [f64; 3] = [0.5, 0.8, 1.0];

fn random_config(rng: &mut ChaCha8Rng) -> PhysicalConfig {
    PhysicalConfig {
        m0: rng.gen_range(0.5..=2.0),
        omega: rng.gen_range(0.5..=2.0),
        mu: rng.gen_range(0.0..=1.0),
        lambda1: rng.gen_range(0.0..=1.0),
        lambda2: rng.gen_range(0.0..=1.0),
        b_field: rng.gen_range(0.0..=1.0),
        spin: if rng.gen_bool(0.5) { Spin::Up } else { Spin::Down },
        background: Background::CosmicString {
            eta: ETA_CHOICES[rng.gen_range(0..3)],
        },
        phi_ac_override: None,
    }
}

fn random_branch(rng: &mut ChaCha8Rng) -> Branch {
    if rng.gen_bool(0.5) {
        Branch::Particle
    } else {
        Branch::Antiparticle
    }
}

/// Shifting the anyonic phase by one full period must be exactly the same
/// thing as stepping the angular quantum number by one unit of spin.
fn phase_periodicity_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7065726f4449);
    let mut worst = 0.0_f64;
    let mut produced = 0;
    while produced < 50 {
        let phi0 = rng.gen_range(-10.0..10.0);
        let config = PhysicalConfig {
            phi_ac_override: Some(phi0),
            ..random_config(&mut rng)
        };
        let sv = config.spin.value();
        let n = rng.gen_range(0..=5);
        let two_ml = 2 * rng.gen_range(-5..5) + 1;
        let branch = random_branch(&mut rng);
        let base_qn = QuantumNumbers::new(n, two_ml, branch).unwrap();
        let stepped_qn = QuantumNumbers::new(n, two_ml + 2 * sv, branch).unwrap();
        let shifted = PhysicalConfig {
            phi_ac_override: Some(phi0 + 2.0 * std::f64::consts::PI),
            ..config
        };
        let (Ok(d_shift), Ok(d_step)) = (
            params::derive(&shifted, &base_qn),
            params::derive(&config, &stepped_qn),
        ) else {
            continue; // ω̄ < 0 for this draw; phase plays no role in that cut
        };
        produced += 1;
        worst = fold_max([
            worst,
            (d_shift.gamma - d_step.gamma).abs(),
            (d_shift.gamma_plus - d_step.gamma_plus).abs(),
            (d_shift.gamma_minus - d_step.gamma_minus).abs(),
            match (
                spectrum::energy(&shifted, &base_qn),
                spectrum::energy(&config, &stepped_qn),
            ) {
                (Ok(a), Ok(b)) => (a.energy - b.energy).abs(),
                _ => f64::NAN,
            },
        ]);
    }
    Check::against_max("phase_periodicity", worst, 1e-12)
}

/// The flat background must be bit-for-bit the η → 1 cone.
fn flat_limit_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x666c6174);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let flat = PhysicalConfig {
            background: Background::Flat,
            ..random_config(&mut rng)
        };
        let cone = PhysicalConfig {
            background: Background::CosmicString { eta: 1.0 },
            ..flat
        };
        let n = rng.gen_range(0..=5);
        let two_ml = 2 * rng.gen_range(-5..5) + 1;
        let qn = QuantumNumbers::new(n, two_ml, random_branch(&mut rng)).unwrap();
        let pair = (spectrum::energy(&flat, &qn), spectrum::energy(&cone, &qn));
        worst = fold_max([
            worst,
            match pair {
                (Ok(a), Ok(b)) => {
                    (a.energy - b.energy)
                        .abs()
                        .max((a.derived.gamma - b.derived.gamma).abs())
                        .max((a.derived.omega_bar - b.derived.omega_bar).abs())
                }
                (Err(_), Err(_)) => 0.0, // both reject identically: equivalent
                _ => f64::NAN,
            },
        ]);
    }
    Check::against_max("flat_limit", worst, 1e-12)
}

/// E₊ + E₋ = 2μB/η for any state: the branches are mirror images around the
/// magnetic offset.
fn branch_symmetry_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6272616e6368);
    let mut worst = 0.0_f64;
    let mut produced = 0;
    while produced < 30 {
        let config = random_config(&mut rng);
        let n = rng.gen_range(0..=5);
        let two_ml = 2 * rng.gen_range(-5..5) + 1;
        let plus = QuantumNumbers::new(n, two_ml, Branch::Particle).unwrap();
        let minus = plus.with_branch(Branch::Antiparticle);
        let (Ok(a), Ok(b)) = (
            spectrum::energy(&config, &plus),
            spectrum::energy(&config, &minus),
        ) else {
            continue;
        };
        produced += 1;
        let offset = 2.0 * a.derived.mu_b_over_eta;
        worst = fold_max([worst, (a.energy + b.energy - offset).abs()]);
    }
    Check::against_max("branch_symmetry", worst, 1e-12)
}

/// With the moment switched off on a flat background the model must collapse
/// to the plain oscillator: γ = m_l − s/2 and the textbook energy, both
/// recomputed here from raw inputs.
fn mu_zero_reduction_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d75303d30);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let config = PhysicalConfig {
            mu: 0.0,
            background: Background::Flat,
            ..random_config(&mut rng)
        };
        let n = rng.gen_range(0..=5u32);
        let two_ml = 2 * rng.gen_range(-5..5) + 1;
        let branch = random_branch(&mut rng);
        let qn = QuantumNumbers::new(n, two_ml, branch).unwrap();
        let s = config.spin.sign();
        let gamma_ref = 0.5 * two_ml as f64 - 0.5 * s;
        let n_s = n as f64 + 0.5 * (1.0 - s);
        let bracket = n_s + 0.5 * (gamma_ref.abs() - gamma_ref);
        let e_ref = branch.sign()
            * (config.m0 * config.m0 + 4.0 * config.m0 * config.omega * bracket).sqrt();
        match spectrum::energy(&config, &qn) {
            Ok(p) => {
                worst = fold_max([
                    worst,
                    (p.derived.gamma - gamma_ref).abs(),
                    (p.energy - e_ref).abs(),
                ]);
            }
            Err(_) => worst = f64::NAN,
        }
    }
    Check::against_max("mu_zero_reduction", worst, 1e-12)
}

/// Twenty seeded configurations for the closed-form vs finite-difference
/// comparison: a fixed anchor first (its sensitivity to a bracket
/// perturbation is known), then random draws over the full parameter box,
/// filtered to keep the oscillator comfortably confining and the energies
/// away from zero.
pub fn seeded_oracle_suite(seed: u64) -> Vec<(PhysicalConfig, QuantumNumbers)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![(
        PhysicalConfig::default(),
        QuantumNumbers::new(1, 1, Branch::Particle).unwrap(),
    )];
    while out.len() < 20 {
        let config = random_config(&mut rng);
        let two_ml = [-3, -1, 1, 3][rng.gen_range(0..4)];
        let n = rng.gen_range(0..=3u32);
        let qn = QuantumNumbers::new(n, two_ml, Branch::Particle).unwrap();
        let Ok(d) = params::derive(&config, &qn) else {
            continue;
        };
        if d.omega_bar < 0.1 {
            continue;
        }
        // The lowest aligned spin-up level has no antiparticle partner; keep
        // the suite to states where both branches are ordinary.
        if config.spin == Spin::Up && n == 0 && d.gamma_plus >= 0.0 {
            continue;
        }
        let e_plus = spectrum::energy(&config, &qn).unwrap().energy;
        let e_minus = spectrum::energy(&config, &qn.with_branch(Branch::Antiparticle))
            .unwrap()
            .energy;
        if e_plus.abs() < 0.05 || e_minus.abs() < 0.05 {
            continue;
        }
        out.push((config, qn));
    }
    out
}

fn oracle_agreement_check(options: &VerifyOptions) -> Check {
    let mut jobs = Vec::new();
    for (config, qn) in seeded_oracle_suite(options.seed) {
        jobs.push((config, qn));
        jobs.push((config, qn.with_branch(Branch::Antiparticle)));
    }
    let devs: Vec<f64> = jobs
        .par_iter()
        .map(|(config, qn)| {
            let closed = match spectrum::energy_with_bracket_shift(
                config,
                qn,
                options.bracket_shift,
            ) {
                Ok(p) => p.energy,
                Err(_) => return f64::NAN,
            };
            match oracle::oracle_energy(config, qn, options.oracle_points) {
                Ok(e) => (closed - e).abs() / closed.abs().max(0.05),
                Err(_) => f64::NAN,
            }
        })
        .collect();
    Check::against_max("oracle_agreement", fold_max(devs), 1e-4)
}

/// The gap E − m0 − Ē between the exact and the nonrelativistic energy must
/// scale as the square of the oscillator strength; the check fits the
/// log-log slope over ε ∈ {1e−2, 1e−3, 1e−4} and expects 2.
fn nonrel_asymptotics_check() -> Check {
    let qn = QuantumNumbers::new(2, 1, Branch::Particle).unwrap();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &eps in &[1e-2, 1e-3, 1e-4] {
        let config = PhysicalConfig {
            omega: eps,
            ..PhysicalConfig::default()
        };
        let exact = spectrum::energy(&config, &qn).map(|p| p.energy);
        let bar = spectrum::energy_nonrel(&config, &qn).map(|p| p.energy);
        let (Ok(exact), Ok(bar)) = (exact, bar) else {
            return Check {
                name: "nonrel_asymptotics",
                passed: false,
                observed: f64::NAN,
                tolerance: 0.1,
            };
        };
        let defect = (exact - config.m0 - bar).abs();
        xs.push(eps.ln());
        ys.push(defect.ln());
    }
    let xm = xs.iter().sum::<f64>() / xs.len() as f64;
    let ym = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xm) * (y - ym))
        .sum::<f64>()
        / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
    Check {
        name: "nonrel_asymptotics",
        passed: (slope - 2.0).abs() <= 0.1,
        observed: slope,
        tolerance: 0.1,
    }
}

/// At ω̄ = 0 every level must land exactly on μB/η ± m0, and eigenfunction
/// construction must refuse the configuration.
fn resonance_threshold_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7265736f);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let m0 = rng.gen_range(0.5..=2.0);
        let mu = rng.gen_range(0.2..=1.0);
        let lambda2 = rng.gen_range(0.2..=1.0);
        let eta = ETA_CHOICES[rng.gen_range(0..3)];
        let config = PhysicalConfig {
            m0,
            // Exactly half the induced frequency, in the same floating-point
            // expression shape the derivation uses, so ω̄ = 0 to the bit.
            omega: 0.5 * (mu * lambda2 / (eta * m0)),
            mu,
            lambda1: rng.gen_range(0.0..=1.0),
            lambda2,
            b_field: rng.gen_range(0.0..=1.0),
            spin: if rng.gen_bool(0.5) { Spin::Up } else { Spin::Down },
            background: Background::CosmicString { eta },
            phi_ac_override: None,
        };
        let n = rng.gen_range(0..=4);
        let two_ml = 2 * rng.gen_range(-5..5) + 1;
        let qn = QuantumNumbers::new(n, two_ml, Branch::Particle).unwrap();
        let offset = mu * config.b_field / eta;
        match (
            spectrum::energy(&config, &qn),
            spectrum::energy(&config, &qn.with_branch(Branch::Antiparticle)),
        ) {
            (Ok(p), Ok(a)) => {
                worst = fold_max([
                    worst,
                    (p.energy - (offset + m0)).abs(),
                    (a.energy - (offset - m0)).abs(),
                ]);
            }
            _ => worst = f64::NAN,
        }
        if !matches!(
            wavefunction::build_solution(&config, &qn),
            Err(WfError::DegenerateOscillator)
        ) {
            worst = f64::NAN;
        }
    }
    Check::against_max("resonance_threshold", worst, 1e-12)
}

fn normalization_orthogonality_check() -> Check {
    let channels = [
        (
            PhysicalConfig::default(),
            -1,
            Branch::Particle,
        ),
        (
            PhysicalConfig {
                mu: 1.0,
                lambda1: 0.5,
                lambda2: 0.4,
                b_field: 0.7,
                spin: Spin::Down,
                background: Background::CosmicString { eta: 0.8 },
                ..PhysicalConfig::default()
            },
            3,
            Branch::Antiparticle,
        ),
    ];
    let spec = QuadratureSpec::default();
    let mut worst = 0.0_f64;
    for (config, two_ml, branch) in channels {
        let states: Vec<_> = (0..=3)
            .map(|n| {
                let qn = QuantumNumbers::new(n, two_ml, branch).unwrap();
                wavefunction::build_solution(&config, &qn)
            })
            .collect();
        for (i, a) in states.iter().enumerate() {
            let Ok(a) = a else {
                worst = f64::NAN;
                continue;
            };
            match wavefunction::total_probability(a, &spec) {
                Ok(p) => worst = fold_max([worst, (p - 1.0).abs()]),
                Err(_) => worst = f64::NAN,
            }
            for b in states.iter().skip(i + 1) {
                let Ok(b) = b else {
                    worst = f64::NAN;
                    continue;
                };
                match wavefunction::overlap(a, b, &spec) {
                    Ok(v) => worst = fold_max([worst, v.abs()]),
                    Err(_) => worst = f64::NAN,
                }
            }
        }
    }
    Check::against_max("normalization_orthogonality", worst, 1e-8)
}
