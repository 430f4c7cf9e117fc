//! `acdo` — command-line interface to the planar Dirac oscillator library.
//!
//! Subcommands:
//! - `spectrum`: closed-form bound-state energies over a quantum-number grid;
//! - `sweep`: the spectrum along one swept physical parameter;
//! - `wavefunction`: radial profiles of one normalized eigenstate;
//! - `verify`: the named end-to-end verification battery;
//! - `oracle`: the independent finite-difference eigensolver, either on raw
//!   operator parameters or on a physical configuration (where it
//!   cross-checks the closed-form energies).
//!
//! Exit codes: 0 success; 1 verification failure (a FAIL line, a quadrature
//! self-check failure, or an inconsistent pairing ratio); 2 input or domain
//! error; 3 degenerate configuration (resonant ω̄ = 0, or a structurally
//! absent paired state).
//!
//! All tabular output is deterministic, full-precision, and available as CSV
//! or JSON carrying identical values.

mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use acdo::oracle::{analytic_eigenvalue, convergence_order};
use acdo::{
    build_solution, energy, energy_nonrel, fd_eigenvalues, oracle_energy, run_all, sweep,
    validate, AxisSpec, Background, Branch, FdProblem, OracleError, ParamError, PhysicalConfig,
    QuantumNumbers, Spin, SpectrumError, SweepAxis, VerifyOptions, WfError,
};
use clap::{Args, Parser, Subcommand};

use output::{fmt_float, write_output, Cell, Format, Table};
use parse::{
    domain_error, parse_branch_set, parse_grid_spec, parse_ml_spec, parse_spin_set,
    parse_two_ml_spec, parse_u32_spec, ConfigMap,
};

/// Exact spectra and eigenfunctions of a planar Dirac oscillator with an
/// Aharonov-Casher coupling, on the flat plane and on a cone.
#[derive(Parser)]
#[command(name = "acdo", version)]
struct Cli {
    /// Output encoding for tabular results.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write results to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Flat JSON file of default flag values; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energies over a grid of quantum numbers.
    Spectrum(SpectrumArgs),
    /// Energies along one swept physical parameter.
    Sweep(SweepArgs),
    /// Radial profiles of one normalized eigenstate.
    Wavefunction(WavefunctionArgs),
    /// Run the verification battery and report PASS/FAIL per check.
    Verify(VerifyArgs),
    /// Finite-difference eigenvalues, independent of every closed form.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct PhysFlags {
    /// Rest mass m0 > 0 [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    m0: Option<f64>,
    /// Oscillator frequency omega >= 0 [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    /// Magnetic dipole moment mu [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// Line-charge coupling lambda1 >= 0, sources the AC phase [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    lambda1: Option<f64>,
    /// Volume-charge coupling lambda2 >= 0, sources omega_AC [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    lambda2: Option<f64>,
    /// Magnetic field strength B [default: 0].
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Deficit parameter eta in (0, 1]; 1 is the flat plane [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    /// Spin projection set: +1, -1, or both.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Explicit AC phase override, replacing 4*pi*s*mu*lambda1.
    #[arg(long, allow_hyphen_values = true, value_name = "PHI")]
    phi_ac: Option<f64>,
}

#[derive(Args)]
struct QnFlags {
    /// Radial index: single value, comma list, or inclusive range like 0..2.
    #[arg(long)]
    n: Option<String>,
    /// Half-integral m_l: fractions (1/2, -3/2) or decimals, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    ml: Option<String>,
    /// Doubled m_l as odd integers: comma list or range like -3..3.
    #[arg(long, allow_hyphen_values = true)]
    two_ml: Option<String>,
    /// Energy branch set: particle, antiparticle, or both.
    #[arg(long)]
    branch: Option<String>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    phys: PhysFlags,
    #[command(flatten)]
    qn: QnFlags,
    /// Emit nonrelativistic energies instead (particle branch only).
    #[arg(long)]
    nonrel: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    phys: PhysFlags,
    #[command(flatten)]
    qn: QnFlags,
    /// Swept parameter: b, omega, mu, lambda1, lambda2, eta, or phi_ac.
    #[arg(long)]
    axis: Option<String>,
    /// First axis value.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    /// Last axis value (inclusive).
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<f64>,
    /// Axis increment, > 0.
    #[arg(long, allow_hyphen_values = true)]
    step: Option<f64>,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[command(flatten)]
    phys: PhysFlags,
    #[command(flatten)]
    qn: QnFlags,
    /// Radial sample grid start:stop:step [default: 0.05:6:0.05].
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Grid points for the finite-difference oracle-agreement check
    /// [default: 4000].
    #[arg(long)]
    points: Option<usize>,
    /// Test-harness hook: perturb the closed-form bracket by 1e-3 so the
    /// oracle-agreement check must fail.
    #[arg(long, hide = true)]
    inject_bracket_bug: bool,
}

#[derive(Args)]
struct OracleArgs {
    /// Effective angular parameter gamma/eta of the radial operator (raw
    /// mode; omit both this and --alpha to use the physical flags instead).
    #[arg(long, allow_hyphen_values = true)]
    gamma_eff: Option<f64>,
    /// Gaussian scale alpha = m0*omega_bar (raw mode) [default: 1].
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Number of eigenvalues, lowest first (raw mode) [default: 3].
    #[arg(long)]
    count: Option<usize>,
    /// Interior grid points [default: 4000].
    #[arg(long)]
    points: Option<usize>,
    /// Truncation radius (raw mode) [default: sized to count].
    #[arg(long)]
    rho_max: Option<f64>,
    #[command(flatten)]
    phys: PhysFlags,
    #[command(flatten)]
    qn: QnFlags,
}

/// Terminal failure: one stderr line plus a process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::input(message)
    }
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<WfError> for Failure {
    fn from(e: WfError) -> Self {
        let code = match &e {
            WfError::DegenerateOscillator | WfError::DegeneratePairing => 3,
            WfError::QuadratureFailure(_) | WfError::InconsistentRatio { .. } => 1,
            WfError::Param(_) | WfError::SpecFun(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Ctx {
    cfg: ConfigMap,
    format: Format,
    output: Option<PathBuf>,
    seed: u64,
}

fn make_ctx(cli: &Cli) -> Result<Ctx, Failure> {
    let cfg = match &cli.config {
        Some(path) => ConfigMap::load(path)?,
        None => ConfigMap::empty(),
    };
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.string("format")? {
            Some(name) => Format::parse_name(&name)?,
            None => Format::Csv,
        },
    };
    let output = match &cli.output {
        Some(p) => Some(p.clone()),
        None => cfg.string("output")?.map(PathBuf::from),
    };
    let seed = match cli.seed {
        Some(s) => s,
        None => cfg.u64("seed")?.unwrap_or(42),
    };
    Ok(Ctx {
        cfg,
        format,
        output,
        seed,
    })
}

/// Merge physical flags over config-file values over defaults. The spin slot
/// is a placeholder; commands set it per row from the `--s` set.
fn merged_phys(flags: &PhysFlags, cfg: &ConfigMap) -> Result<PhysicalConfig, Failure> {
    let pick = |flag: Option<f64>, key: &str, default: f64| -> Result<f64, Failure> {
        Ok(match flag {
            Some(v) => v,
            None => cfg.f64(key)?.unwrap_or(default),
        })
    };
    let b_field = match flags.b {
        Some(v) => v,
        None => match cfg.f64("b")? {
            Some(v) => v,
            None => cfg.f64("b_field")?.unwrap_or(0.0),
        },
    };
    let phi_ac_override = match flags.phi_ac {
        Some(v) => Some(v),
        None => match cfg.f64("phi_ac")? {
            Some(v) => Some(v),
            None => cfg.f64("phi_ac_override")?,
        },
    };
    Ok(PhysicalConfig {
        m0: pick(flags.m0, "m0", 1.0)?,
        omega: pick(flags.omega, "omega", 1.0)?,
        mu: pick(flags.mu, "mu", 0.0)?,
        lambda1: pick(flags.lambda1, "lambda1", 0.0)?,
        lambda2: pick(flags.lambda2, "lambda2", 0.0)?,
        b_field,
        spin: Spin::Up,
        background: Background::CosmicString {
            eta: pick(flags.eta, "eta", 1.0)?,
        },
        phi_ac_override,
    })
}

fn spin_set(flag: &Option<String>, cfg: &ConfigMap, default: &str) -> Result<Vec<Spin>, Failure> {
    let text = match flag {
        Some(t) => t.clone(),
        None => match cfg.string("s")? {
            Some(t) => t,
            None => cfg
                .string("spin")?
                .unwrap_or_else(|| default.to_string()),
        },
    };
    Ok(parse_spin_set(&text)?)
}

/// Quantum-number grids with per-command defaults, sorted and deduplicated.
struct StateGrid {
    ns: Vec<u32>,
    two_mls: Vec<i32>,
    branches: Vec<Branch>,
}

fn merged_qn(
    flags: &QnFlags,
    cfg: &ConfigMap,
    default_n: &str,
    default_ml: &str,
    default_branch: &str,
) -> Result<StateGrid, Failure> {
    let n_text = match &flags.n {
        Some(t) => t.clone(),
        None => cfg.string("n")?.unwrap_or_else(|| default_n.to_string()),
    };
    let ns = parse_u32_spec("n", &n_text)?;

    let ml_text = match &flags.ml {
        Some(t) => Some(t.clone()),
        None => cfg.string("ml")?,
    };
    let two_ml_text = match &flags.two_ml {
        Some(t) => Some(t.clone()),
        None => cfg.string("two_ml")?,
    };
    let two_mls = match (ml_text, two_ml_text) {
        (Some(_), Some(_)) => {
            return Err(Failure::input(domain_error(
                "ml",
                "give either --ml or --two-ml, not both",
            )))
        }
        (Some(m), None) => parse_ml_spec(&m)?,
        (None, Some(t)) => parse_two_ml_spec(&t)?,
        (None, None) => parse_ml_spec(default_ml)?,
    };

    let branch_text = match &flags.branch {
        Some(t) => t.clone(),
        None => cfg
            .string("branch")?
            .unwrap_or_else(|| default_branch.to_string()),
    };
    let branches = parse_branch_set(&branch_text)?;
    Ok(StateGrid { ns, two_mls, branches })
}

fn single<T: Copy>(field: &'static str, values: &[T]) -> Result<T, Failure> {
    if values.len() == 1 {
        Ok(values[0])
    } else {
        Err(Failure::input(domain_error(
            field,
            &format!("this command needs exactly one value (got {})", values.len()),
        )))
    }
}

const SPECTRUM_COLUMNS: [&str; 10] = [
    "n",
    "two_ml",
    "s",
    "branch",
    "eta",
    "omega_bar",
    "phi_ac",
    "gamma",
    "bracket",
    "energy",
];

fn cmd_spectrum(ctx: &Ctx, args: &SpectrumArgs) -> Result<(), Failure> {
    let base = merged_phys(&args.phys, &ctx.cfg)?;
    let spins = spin_set(&args.phys.s, &ctx.cfg, "both")?;
    let StateGrid { ns, two_mls, branches } = merged_qn(&args.qn, &ctx.cfg, "0..2", "1/2", "particle")?;
    let nonrel = args.nonrel || ctx.cfg.bool("nonrel")?.unwrap_or(false);
    validate(&base)?;

    let mut rows = Vec::new();
    for &n in &ns {
        for &two_ml in &two_mls {
            for &spin in &spins {
                for &branch in &branches {
                    let qn = QuantumNumbers::new(n, two_ml, branch)?;
                    let config = PhysicalConfig { spin, ..base };
                    let point = if nonrel {
                        energy_nonrel(&config, &qn)?
                    } else {
                        energy(&config, &qn)?
                    };
                    let d = point.derived;
                    rows.push(vec![
                        Cell::Int(n as i64),
                        Cell::Int(two_ml as i64),
                        Cell::Int(spin.value() as i64),
                        Cell::Str(branch.name()),
                        Cell::Float(d.eta),
                        Cell::Float(d.omega_bar),
                        Cell::Float(d.phi_ac),
                        Cell::Float(d.gamma),
                        Cell::Float(point.bracket),
                        Cell::Float(point.energy),
                    ]);
                }
            }
        }
    }
    let table = Table {
        comments: vec![],
        columns: SPECTRUM_COLUMNS.to_vec(),
        rows,
    };
    Ok(write_output(ctx.output.as_deref(), &table.render(ctx.format))?)
}

fn cmd_sweep(ctx: &Ctx, args: &SweepArgs) -> Result<(), Failure> {
    let base = merged_phys(&args.phys, &ctx.cfg)?;
    let spins = spin_set(&args.phys.s, &ctx.cfg, "both")?;
    let StateGrid { ns, two_mls, branches } = merged_qn(&args.qn, &ctx.cfg, "0..2", "1/2", "particle")?;

    let axis_text = match &args.axis {
        Some(t) => t.clone(),
        None => ctx.cfg.string("axis")?.ok_or_else(|| {
            Failure::input(domain_error(
                "axis",
                "--axis is required (b, omega, mu, lambda1, lambda2, eta, phi_ac)",
            ))
        })?,
    };
    let axis = SweepAxis::parse(&axis_text)?;
    let need = |flag: Option<f64>, key: &'static str| -> Result<f64, Failure> {
        match flag {
            Some(v) => Ok(v),
            None => ctx.cfg.f64(key)?.ok_or_else(|| {
                Failure::input(domain_error(key, &format!("--{key} is required for a sweep")))
            }),
        }
    };
    let spec = AxisSpec {
        axis,
        start: need(args.start, "start")?,
        stop: need(args.stop, "stop")?,
        step: need(args.step, "step")?,
    };
    let values = spec.values()?;

    let mut qn_set = Vec::new();
    for &n in &ns {
        for &two_ml in &two_mls {
            for &branch in &branches {
                qn_set.push(QuantumNumbers::new(n, two_ml, branch)?);
            }
        }
    }

    let mut per_spin = Vec::new();
    for &spin in &spins {
        let config = PhysicalConfig { spin, ..base };
        per_spin.push(sweep(&config, &spec, &qn_set)?);
    }

    // Interleave the per-spin sweeps into (axis, n, two_ml, s, branch) order.
    let pair_count = ns.len() * two_mls.len();
    let nb = branches.len();
    let mut rows = Vec::with_capacity(values.len() * pair_count * spins.len() * nb);
    for vi in 0..values.len() {
        for pi in 0..pair_count {
            for rows_of_spin in &per_spin {
                for bi in 0..nb {
                    let row = &rows_of_spin[vi * qn_set.len() + pi * nb + bi];
                    let mut cells = vec![
                        Cell::Float(row.axis_value),
                        Cell::Int(row.qn.n() as i64),
                        Cell::Int(row.qn.two_ml() as i64),
                        Cell::Int(row.spin.value() as i64),
                        Cell::Str(row.qn.branch().name()),
                    ];
                    match &row.result {
                        Ok(p) => {
                            let d = p.derived;
                            cells.push(Cell::Float(d.eta));
                            cells.push(Cell::Float(d.omega_bar));
                            cells.push(Cell::Float(d.phi_ac));
                            cells.push(Cell::Float(d.gamma));
                            cells.push(Cell::Float(p.bracket));
                            cells.push(Cell::Float(p.energy));
                            cells.push(Cell::ErrorText(None));
                        }
                        Err(e) => {
                            for _ in 0..6 {
                                cells.push(Cell::Float(f64::NAN));
                            }
                            cells.push(Cell::ErrorText(Some(e.to_string())));
                        }
                    }
                    rows.push(cells);
                }
            }
        }
    }

    let mut columns = vec![axis.name()];
    columns.extend(SPECTRUM_COLUMNS);
    columns.push("error");
    let table = Table {
        comments: vec![],
        columns,
        rows,
    };
    Ok(write_output(ctx.output.as_deref(), &table.render(ctx.format))?)
}

fn cmd_wavefunction(ctx: &Ctx, args: &WavefunctionArgs) -> Result<(), Failure> {
    let base = merged_phys(&args.phys, &ctx.cfg)?;
    let spins = spin_set(&args.phys.s, &ctx.cfg, "+1")?;
    let StateGrid { ns, two_mls, branches } = merged_qn(&args.qn, &ctx.cfg, "0", "1/2", "particle")?;
    let spin = single("s", &spins)?;
    let n = single("n", &ns)?;
    let two_ml = single("ml", &two_mls)?;
    let branch = single("branch", &branches)?;

    let qn = QuantumNumbers::new(n, two_ml, branch)?;
    let config = PhysicalConfig { spin, ..base };
    let solution = build_solution(&config, &qn)?;

    let rho_text = match &args.rho {
        Some(t) => t.clone(),
        None => ctx
            .cfg
            .string("rho")?
            .unwrap_or_else(|| "0.05:6:0.05".to_string()),
    };
    let grid = parse_grid_spec("rho", &rho_text)?;

    let mut rows = Vec::with_capacity(grid.len());
    let mut profile = Vec::with_capacity(grid.len());
    for &rho in &grid {
        let up = solution.upper_at(rho);
        let lo = solution.lower_at(rho);
        let density = up * up + lo * lo;
        profile.push((rho, density));
        rows.push(vec![
            Cell::Float(rho),
            Cell::Float(up),
            Cell::Float(lo),
            Cell::Float(density),
        ]);
    }
    let mut norm = 0.0;
    for w in profile.windows(2) {
        let (r0, d0) = w[0];
        let (r1, d1) = w[1];
        norm += 0.5 * (r1 - r0) * (r0 * d0 + r1 * d1);
    }
    norm *= 2.0 * std::f64::consts::PI;

    let table = Table {
        comments: vec![
            "density = phi_plus^2 + phi_minus^2 (angle-independent)".to_string(),
            format!(
                "normalization convention: 2*pi * integral rho*density drho = 1; \
                 trapezoid over this grid = {}",
                fmt_float(norm)
            ),
            format!("energy = {}", fmt_float(solution.energy)),
        ],
        columns: vec!["rho", "phi_plus", "phi_minus", "density"],
        rows,
    };
    Ok(write_output(ctx.output.as_deref(), &table.render(ctx.format))?)
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<(), Failure> {
    let points = match args.points {
        Some(p) => p,
        None => ctx.cfg.usize("points")?.unwrap_or(4000),
    };
    if points < 100 {
        return Err(Failure::input(domain_error(
            "points",
            &format!("the oracle needs at least 100 grid points (got {points})"),
        )));
    }
    let inject = args.inject_bracket_bug || ctx.cfg.bool("inject_bracket_bug")?.unwrap_or(false);
    let options = VerifyOptions {
        seed: ctx.seed,
        bracket_shift: if inject { 1e-3 } else { 0.0 },
        oracle_points: points,
    };
    let checks = run_all(&options);

    let mut report = String::new();
    for c in &checks {
        report.push_str(&format!(
            "{} {} {} {:e}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            fmt_float(c.observed),
            c.tolerance
        ));
    }
    write_output(ctx.output.as_deref(), &report)?;

    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: format!(
                "VerificationFailure: {failed} of {} checks failed",
                checks.len()
            ),
        })
    }
}

fn cmd_oracle(ctx: &Ctx, args: &OracleArgs) -> Result<(), Failure> {
    let gamma_flag = match args.gamma_eff {
        Some(v) => Some(v),
        None => ctx.cfg.f64("gamma_eff")?,
    };
    let alpha_flag = match args.alpha {
        Some(v) => Some(v),
        None => ctx.cfg.f64("alpha")?,
    };
    let points = match args.points {
        Some(p) => p,
        None => ctx.cfg.usize("points")?.unwrap_or(4000),
    };

    let table = if gamma_flag.is_some() || alpha_flag.is_some() {
        // Raw operator mode: eigenvalues against the analytic prediction.
        let gamma_eff = gamma_flag.unwrap_or(0.0);
        let alpha = alpha_flag.unwrap_or(1.0);
        let count = match args.count {
            Some(c) => c,
            None => ctx.cfg.usize("count")?.unwrap_or(3),
        };
        if count == 0 {
            return Err(Failure::input(domain_error(
                "count",
                "need at least one eigenvalue",
            )));
        }
        let rho_max = match args.rho_max {
            Some(v) => v,
            None => match ctx.cfg.f64("rho_max")? {
                Some(v) => v,
                None => FdProblem::recommended_rho_max(gamma_eff, alpha, count),
            },
        };
        let problem = FdProblem::new(gamma_eff, alpha, rho_max, points)?;
        let lambdas = fd_eigenvalues(&problem, count)?;
        let order = convergence_order(&problem, count)?;
        let rows = lambdas
            .iter()
            .enumerate()
            .map(|(k, &fd)| {
                let exact = analytic_eigenvalue(gamma_eff, alpha, k);
                vec![
                    Cell::Int(k as i64),
                    Cell::Float(fd),
                    Cell::Float(exact),
                    Cell::Float(((fd - exact) / exact).abs()),
                    Cell::Float(order),
                ]
            })
            .collect();
        Table {
            comments: vec![],
            columns: vec!["k", "lambda_fd", "lambda_analytic", "rel_dev", "order"],
            rows,
        }
    } else {
        // Physical mode: cross-check closed-form energies state by state.
        let base = merged_phys(&args.phys, &ctx.cfg)?;
        let spins = spin_set(&args.phys.s, &ctx.cfg, "+1")?;
        let StateGrid { ns, two_mls, branches } = merged_qn(&args.qn, &ctx.cfg, "0", "1/2", "particle")?;
        validate(&base)?;
        let mut rows = Vec::new();
        for &n in &ns {
            for &two_ml in &two_mls {
                for &spin in &spins {
                    for &branch in &branches {
                        let qn = QuantumNumbers::new(n, two_ml, branch)?;
                        let config = PhysicalConfig { spin, ..base };
                        let closed = energy(&config, &qn)?.energy;
                        let fd = oracle_energy(&config, &qn, points)?;
                        rows.push(vec![
                            Cell::Int(n as i64),
                            Cell::Int(two_ml as i64),
                            Cell::Int(spin.value() as i64),
                            Cell::Str(branch.name()),
                            Cell::Float(fd),
                            Cell::Float(closed),
                            Cell::Float(((fd - closed) / closed).abs()),
                        ]);
                    }
                }
            }
        }
        Table {
            comments: vec![],
            columns: vec![
                "n",
                "two_ml",
                "s",
                "branch",
                "energy_oracle",
                "energy_closed",
                "rel_dev",
            ],
            rows,
        }
    };
    Ok(write_output(ctx.output.as_deref(), &table.render(ctx.format))?)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let ctx = make_ctx(cli)?;
    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(&ctx, args),
        Command::Sweep(args) => cmd_sweep(&ctx, args),
        Command::Wavefunction(args) => cmd_wavefunction(&ctx, args),
        Command::Verify(args) => cmd_verify(&ctx, args),
        Command::Oracle(args) => cmd_oracle(&ctx, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("{}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}
