//! Command-line front end. [`run`] parses arguments, executes one verb and
//! returns the process exit code: 0 on success, 1 when a check fails or
//! output cannot be written, 2 on usage and configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;
use crate::error::Error;
use crate::field_commutators::{sweep, write_csv, CommutatorKind, Convention, Grid, Sweep};
use crate::observables::GeometryKind;
use crate::ring::suite::{run_suite, UnitTable};
use crate::states::{
    asymptotic_state_finite, asymptotic_state_infinite, evolution_pairs, evolve_vacuum, norm_preservation,
    schmidt_rank, truncation_remainder, AsymptoticKernel, Partition,
};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bicomplex-fields", version, about = "Bicomplex field commutators, vacuum evolution and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exact ring property suite.
    RingCheck(RingCheckArgs),
    /// Tabulate a field commutator as CSV.
    Commutator(CommutatorArgs),
    /// Evolve the vacuum to time t and dump the truncated state.
    Evolve(EvolveArgs),
    /// Build the late-time state.
    Asymptotic(AsymptoticArgs),
    /// Evaluate every acceptance criterion.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct RingCheckArgs {
    #[arg(long, default_value_t = verify::RING_CASES)]
    pub cases: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, hide = true)]
    pub inject_bad_unit_table: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "omega-omega")]
    OmegaOmega,
    #[value(name = "pi-pi")]
    PiPi,
    #[value(name = "omega-pi")]
    OmegaPi,
    #[value(name = "w-omega-omega")]
    WOmegaOmega,
    #[value(name = "w-pi-pi")]
    WPiPi,
    #[value(name = "w-omega-pi")]
    WOmegaPi,
}

impl From<Which> for CommutatorKind {
    fn from(w: Which) -> Self {
        match w {
            Which::OmegaOmega => CommutatorKind::OmegaOmega,
            Which::PiPi => CommutatorKind::PiPi,
            Which::OmegaPi => CommutatorKind::OmegaPi,
            Which::WOmegaOmega => CommutatorKind::WeightedOmegaOmega,
            Which::WPiPi => CommutatorKind::WeightedPiPi,
            Which::WOmegaPi => CommutatorKind::WeightedOmegaPi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    Separation,
    Mass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Oracle,
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Finite,
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Printed,
    Contracted,
}

/// Flags shared by verbs that read a configuration file.
#[derive(Debug, Args)]
pub struct Common {
    /// JSON configuration; flags override its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Directory for outputs written under their default names.
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GeometryFlags {
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryArg>,
    #[arg(long = "L1", allow_hyphen_values = true)]
    pub l1: Option<f64>,
    #[arg(long = "L2", allow_hyphen_values = true)]
    pub l2: Option<f64>,
}

#[derive(Debug, Args)]
pub struct CommutatorArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.05)]
    pub x_min: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 5.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Vary the separation, or the modified mass at fixed `--delta`.
    #[arg(long, value_enum, default_value = "separation")]
    pub sweep: SweepArg,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, value_enum, default_value = "oracle")]
    pub convention: ConventionArg,
    /// CSV destination, `-` for standard output; defaults to
    /// `<output_dir>/<which>.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long)]
    pub order: Option<u32>,
    #[command(flatten)]
    pub geometry: GeometryFlags,
    #[command(flatten)]
    pub common: Common,
    /// JSON destination, `-` for standard output; defaults to
    /// `<output_dir>/state.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    #[command(flatten)]
    pub geometry: GeometryFlags,
    #[arg(long, value_enum, default_value = "printed")]
    pub kernel: KernelArg,
    /// Add the mirrored-momentum branch to the contracted kernel.
    #[arg(long)]
    pub cross_term: bool,
    #[arg(long)]
    pub order: Option<u32>,
    /// Time grid of the infinite-line diagnostics.
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 11)]
    pub t_steps: usize,
    #[command(flatten)]
    pub common: Common,
    /// Destination, `-` for standard output; defaults to
    /// `<output_dir>/asymptotic.json` or `asymptotic.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// JSON report destination; defaults to `<output_dir>/verify.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn load(common: &Common) -> Result<RunConfig, Error> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(m) = common.m {
        cfg.m = m;
    }
    if let Some(g) = common.gamma {
        cfg.gamma = g;
    }
    if let Some(d) = &common.output_dir {
        cfg.output_dir = d.clone();
    }
    Ok(cfg)
}

/// `None` means standard output.
fn destination(out: &Option<PathBuf>, cfg: &RunConfig, default_name: &str) -> Option<PathBuf> {
    match out {
        Some(p) if p.as_os_str() == "-" => None,
        Some(p) => Some(p.clone()),
        None => Some(cfg.output_dir.join(default_name)),
    }
}

/// Writes `text` to its destination and returns the sink for the human
/// summary, which goes to stderr whenever stdout carries the data.
fn emit<'a>(text: &str, dest: Option<&Path>, out: &'a mut dyn Write, err: &'a mut dyn Write) -> Result<&'a mut dyn Write, Error> {
    match dest {
        Some(p) => {
            write_file(p, text)?;
            writeln!(out, "wrote {}", p.display()).map_err(stdout_err)?;
            Ok(out)
        }
        None => {
            write!(out, "{text}").map_err(stdout_err)?;
            Ok(err)
        }
    }
}

fn apply_geometry(cfg: &mut RunConfig, g: &GeometryFlags) {
    if let Some(kind) = g.geometry {
        cfg.geometry.kind = match kind {
            GeometryArg::Finite => GeometryKind::FiniteInterval,
            GeometryArg::Infinite => GeometryKind::InfiniteLine,
        };
    }
    if let Some(l1) = g.l1 {
        cfg.geometry.l1 = l1;
    }
    if let Some(l2) = g.l2 {
        cfg.geometry.l2 = l2;
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, text).map_err(io)
}

fn stdout_err(source: std::io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Parses `args` (including the program name) and runs the chosen verb.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::RingCheck(a) => ring_check(a, out),
        Command::Commutator(a) => commutator(a, out, err),
        Command::Evolve(a) => evolve(a, out, err),
        Command::Asymptotic(a) => asymptotic(a, out, err),
        Command::Verify(a) => run_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn ring_check(a: RingCheckArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let table = if a.inject_bad_unit_table {
        UnitTable::with_bad_j_square()
    } else {
        UnitTable::standard()
    };
    let report = run_suite(&table, a.cases, a.seed.unwrap_or(RunConfig::default().seed));
    for p in &report.properties {
        let status = if p.failures == 0 { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {} ({} failures in {} cases)", p.name, p.failures, p.cases).map_err(stdout_err)?;
    }
    writeln!(out, "{} checks in {:.2?}", report.total_cases(), report.elapsed).map_err(stdout_err)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn commutator(a: CommutatorArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let cfg = load(&a.common)?;
    cfg.validate()?;
    let params = cfg.params()?;
    let table = cfg.table()?;
    let grid = Grid::new(a.x_min, a.x_max, a.steps)?;
    let s = match a.sweep {
        SweepArg::Separation => Sweep::Separation(grid),
        SweepArg::Mass => Sweep::Mass { grid, delta_x: a.delta },
    };
    let convention = match a.convention {
        ConventionArg::Oracle => Convention::Oracle,
        ConventionArg::Printed => Convention::Printed,
    };
    let kind = CommutatorKind::from(a.which);
    if kind.is_distributional() {
        let _ = writeln!(err, "note: {} is distributional; values are lattice sums", kind.name());
    }
    let rows = sweep(kind, s, &params, &table, convention)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).map_err(stdout_err)?;
    let dest = destination(&a.out, &cfg, &format!("{}.csv", kind.name()));
    emit(&String::from_utf8_lossy(&buf), dest.as_deref(), out, err)?;
    Ok(EXIT_OK)
}

/// Bipartition used for reported Schmidt ranks: every mode at the lowest
/// momentum of the state lattice against the rest.
fn report_partition(cfg: &RunConfig) -> Result<Partition, Error> {
    let table = cfg.state_table()?;
    Ok(Partition::momenta([*table.lattice.indices().start()]))
}

fn evolve(a: EvolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let mut cfg = load(&a.common)?;
    apply_geometry(&mut cfg, &a.geometry);
    if let Some(o) = a.order {
        cfg.truncation_order = o;
    }
    cfg.validate()?;
    if !a.t.is_finite() {
        return Err(Error::Config(format!("t must be finite, got {}", a.t)));
    }
    let params = cfg.params()?;
    let geom = cfg.geometry()?;
    let table = cfg.state_table()?;
    let order = cfg.truncation_order;
    let state = evolve_vacuum(a.t, order, &params, &geom, &table, &cfg.constrained_rules(), cfg.basis_cap)?;
    let exponent = evolution_pairs(a.t, &params, &geom, &table)?;
    let dest = destination(&a.out, &cfg, "state.json");
    let sink = emit(&format!("{}\n", state.to_json()), dest.as_deref(), out, err)?;
    let summary = format!(
        "kets {}\nnorm deviation {:.3e}\ntruncation remainder {:.3e}\nschmidt rank {}",
        state.len(),
        norm_preservation(&state),
        truncation_remainder(&exponent, order),
        schmidt_rank(&state, &report_partition(&cfg)?)
    );
    writeln!(sink, "{summary}").map_err(stdout_err)?;
    if geom.length().is_none() && params.gamma > 0.0 {
        writeln!(sink, "warning: the infinite-line state grows without bound for gamma > 0").map_err(stdout_err)?;
    }
    Ok(EXIT_OK)
}

fn asymptotic(a: AsymptoticArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    let mut cfg = load(&a.common)?;
    apply_geometry(&mut cfg, &a.geometry);
    if let Some(o) = a.order {
        cfg.truncation_order = o;
    }
    cfg.validate()?;
    let params = cfg.params()?;
    let table = cfg.state_table()?;
    let geom = cfg.geometry()?;
    if geom.length().is_some() {
        let kernel = match a.kernel {
            KernelArg::Printed => AsymptoticKernel::Printed,
            KernelArg::Contracted => AsymptoticKernel::Contracted { cross_term: a.cross_term },
        };
        let state = asymptotic_state_finite(cfg.truncation_order, &params, &geom, &table, kernel, cfg.basis_cap)?;
        let dest = destination(&a.out, &cfg, "asymptotic.json");
        let sink = emit(&format!("{}\n", state.to_json()), dest.as_deref(), out, err)?;
        writeln!(sink, "kets {}\nschmidt rank {}", state.len(), schmidt_rank(&state, &report_partition(&cfg)?))
            .map_err(stdout_err)?;
        return Ok(EXIT_OK);
    }
    let grid = Grid::new(0.0, a.t_max, a.t_steps)?;
    let diags = asymptotic_state_infinite(&grid.points(), &params, &table);
    let mut text = String::from("t,modulus,phase,growth_rate,cyclostationary,divergent\n");
    for d in &diags {
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            d.t, d.modulus, d.phase, d.modulus_growth_rate, d.is_cyclostationary, d.divergent
        ));
    }
    let dest = destination(&a.out, &cfg, "asymptotic.csv");
    let sink = emit(&text, dest.as_deref(), out, err)?;
    if diags.iter().any(|d| d.divergent) {
        writeln!(sink, "warning: the infinite-line state grows without bound for gamma > 0").map_err(stdout_err)?;
    }
    Ok(EXIT_OK)
}

fn run_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Error> {
    let mut cfg = match &a.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(d) = &a.output_dir {
        cfg.output_dir = d.clone();
    }
    let report = verify::run_all(&cfg);
    for c in &report.criteria {
        writeln!(out, "{}", c.line()).map_err(stdout_err)?;
    }
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} criteria passed", report.criteria.len()).map_err(stdout_err)?;
    match destination(&a.out, &cfg, "verify.json") {
        Some(p) => {
            write_file(&p, &report.to_json())?;
            writeln!(out, "wrote {}", p.display()).map_err(stdout_err)?;
        }
        None => writeln!(out, "{}", report.to_json()).map_err(stdout_err)?,
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILURE })
}
