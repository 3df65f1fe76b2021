//! Command-line front end: `verify`, `sweep`, `audit` and `steering`.
//!
//! Exit codes: 0 success, 1 verification or property failure, 2 input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{audit_state, BoundReport};
use crate::designs::{
    assign_povms, builtin_design, verify_design, BuiltinDesign, Grouping, PovmAssignment, QuantumDesign,
    VerificationReport, VerifyMethod, DEFAULT_VERIFY_TOL,
};
use crate::entropy::{parse_alphas, Alpha};
use crate::error::{input, Error, Result};
use crate::io::{load_bipartite, load_design, load_grouping};
use crate::quantum::{random_density, seeded_rng, DensityMatrix, Ensemble};
use crate::steering::{matched_alice_povms, steering_check_maxprob, steering_check_renyi, SteeringOutcome};
use crate::sweep::sweep_bounds;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qdesign", version, about = "Uncertainty bounds for POVMs assigned to quantum t-designs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Frame,
    Operator,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    /// Hilbert–Schmidt mixed states.
    Hs,
    Pure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SteeringMode {
    Renyi,
    Maxprob,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the t-design property of a built-in or file design.
    Verify {
        /// Built-in name (octahedron, icosahedron, icosidodecahedron) or JSON path.
        #[arg(long)]
        design: String,
        /// Strength to verify; defaults to the design's declared strength.
        #[arg(long = "t", short = 's', alias = "s")]
        t: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write bound curves over the admissible β̄ interval.
    Sweep {
        #[arg(long)]
        design: String,
        /// `single`, `mub` (octahedron axis pairs) or a grouping JSON path.
        #[arg(long, default_value = "single")]
        grouping: String,
        #[arg(long = "t", short = 's', alias = "s")]
        t: Option<usize>,
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Comma-separated Rényi orders, `inf` for min-entropy.
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check every bound on seeded random states.
    Audit {
        #[arg(long)]
        design: String,
        #[arg(long, default_value = "single")]
        grouping: String,
        #[arg(long = "t", short = 's', alias = "s")]
        t: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long, value_enum, default_value = "hs")]
        ensemble: EnsembleArg,
        /// Also audit the maximally mixed state.
        #[arg(long)]
        include_maximally_mixed: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the steering inequalities on a bipartite state file.
    Steering {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value = "octahedron")]
        design: String,
        #[arg(long, default_value = "mub")]
        grouping: String,
        #[arg(long, default_value = "inf")]
        alphas: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: SteeringMode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Resolves a built-in name or a design file path.
pub fn resolve_design(source: &str) -> Result<QuantumDesign> {
    match source.parse::<BuiltinDesign>() {
        Ok(which) => Ok(builtin_design(which)),
        Err(_) => load_design(source),
    }
}

pub fn resolve_grouping(source: &str) -> Result<Grouping> {
    match source {
        "single" => Ok(Grouping::Single),
        "mub" => Ok(Grouping::octahedron_mub()),
        path => load_grouping(path),
    }
}

fn default_alphas(t: usize) -> Vec<Alpha> {
    vec![Alpha::Finite(t as f64), Alpha::Finite(2.0 * t as f64), Alpha::Infinity]
}

fn alphas_or_default(list: Option<&str>, t: usize) -> Result<Vec<Alpha>> {
    list.map_or_else(|| Ok(default_alphas(t)), parse_alphas)
}

fn assignment_and_order(design: &str, grouping: &str, t: Option<usize>) -> Result<(PovmAssignment, usize)> {
    let design = resolve_design(design)?;
    let s = t.unwrap_or(design.strength());
    Ok((assign_povms(&design, &resolve_grouping(grouping)?)?, s))
}

fn emit(text: &str, output: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Solver(_) | Error::Identity(_) => EXIT_FAILURE,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Verify { design, t, tol, method, format } => cmd_verify(&design, t, tol, method, format, out),
        Command::Sweep { design, grouping, t, points, alphas, output, format } => {
            let (assignment, s) = assignment_and_order(&design, &grouping, t)?;
            let alphas = match alphas {
                Some(list) => parse_alphas(&list)?,
                None => vec![Alpha::Infinity],
            };
            let sweep = sweep_bounds(&assignment, s, points, &alphas)?;
            if let Some(row) = sweep.first_unordered() {
                writeln!(out, "row {row} violates the ordering prop1 >= prop1_nr >= prior; nothing written")?;
                return Ok(EXIT_FAILURE);
            }
            let text = match format {
                Format::Json => sweep.to_json()?,
                _ => sweep.to_csv(),
            };
            emit(&text, output.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Audit {
            design,
            grouping,
            t,
            samples,
            seed,
            alphas,
            ensemble,
            include_maximally_mixed,
            output,
            format,
        } => {
            let (assignment, s) = assignment_and_order(&design, &grouping, t)?;
            let alphas = alphas_or_default(alphas.as_deref(), s)?;
            let ensemble = match ensemble {
                EnsembleArg::Hs => Ensemble::HilbertSchmidt,
                EnsembleArg::Pure => Ensemble::Pure,
            };
            let summary = cmd_audit(&assignment, s, samples, seed, &alphas, ensemble, include_maximally_mixed)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&summary)? + "\n",
                _ => summary.to_text(),
            };
            emit(&text, output.as_ref(), out)?;
            Ok(if summary.violations == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Steering { state, design, grouping, alphas, mode, format } => {
            let (assignment, _) = assignment_and_order(&design, &grouping, None)?;
            let rho_ab = load_bipartite(&state)?;
            let report = cmd_steering(&rho_ab, &assignment, &parse_alphas(&alphas)?, mode)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                _ => report.iter().map(SteeringLine::to_text).collect(),
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_verify(
    source: &str,
    t: Option<usize>,
    tol: f64,
    method: MethodArg,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32> {
    let design = resolve_design(source)?;
    let t = t.unwrap_or(design.strength());
    let methods = match method {
        MethodArg::Frame => vec![VerifyMethod::Frame],
        MethodArg::Operator => vec![VerifyMethod::Operator],
        MethodArg::Both => vec![VerifyMethod::Frame, VerifyMethod::Operator],
    };
    let reports =
        methods.into_iter().map(|m| verify_design(&design, t, tol, m)).collect::<Result<Vec<VerificationReport>>>()?;
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?;
    } else {
        writeln!(out, "design: d = {}, K = {}, t = {t}, tol = {tol:e}", design.dimension(), design.len())?;
        for r in &reports {
            for o in &r.residuals {
                writeln!(
                    out,
                    "{:<8} s = {}  value = {:.12e}  target = {:.12e}  residual = {:.3e}  {}",
                    r.method,
                    o.s,
                    o.value,
                    o.target,
                    o.residual,
                    if o.passes { "ok" } else { "FAIL" }
                )?;
            }
        }
        let passes = reports.iter().all(|r| r.passes);
        writeln!(out, "{}", if passes { "PASS" } else { "FAIL" })?;
    }
    Ok(if reports.iter().all(|r| r.passes) { EXIT_OK } else { EXIT_FAILURE })
}

/// Aggregate of an audit run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditSummary {
    pub samples: usize,
    pub order: usize,
    pub alphas: Vec<Alpha>,
    pub violations: usize,
    /// Smallest `actual − best bound` in nats.
    pub worst_entropy_margin: f64,
    /// Smallest `cap − actual` for the maximal probability.
    pub worst_landau_pollak_margin: f64,
    /// Sample indices where the min-entropy bound is saturated.
    pub saturation_events: Vec<usize>,
    pub violation_messages: Vec<String>,
}

impl AuditSummary {
    pub fn to_text(&self) -> String {
        let alphas: Vec<String> = self.alphas.iter().map(Alpha::to_string).collect();
        let mut s = format!(
            "samples: {}\norder: {}\nalphas: {}\nviolations: {}\nworst entropy margin: {:.6e}\nworst Landau-Pollak margin: {:.6e}\nsaturation events: {}\n",
            self.samples,
            self.order,
            alphas.join(","),
            self.violations,
            self.worst_entropy_margin,
            self.worst_landau_pollak_margin,
            self.saturation_events.len()
        );
        for i in &self.saturation_events {
            s.push_str(&format!("  saturated at sample {i}\n"));
        }
        for v in &self.violation_messages {
            s.push_str(&format!("  violation: {v}\n"));
        }
        s
    }
}

/// Audits `samples` seeded random states, preceded by `ρ*` (sample 0) when
/// `include_maximally_mixed` is set.
pub fn cmd_audit(
    assignment: &PovmAssignment,
    s: usize,
    samples: usize,
    seed: u64,
    alphas: &[Alpha],
    ensemble: Ensemble,
    include_maximally_mixed: bool,
) -> Result<AuditSummary> {
    if samples == 0 {
        return input("samples must be at least 1");
    }
    let d = assignment.design().dimension();
    let mut rng = seeded_rng(seed);
    let mut states = Vec::with_capacity(samples + 1);
    if include_maximally_mixed {
        states.push(DensityMatrix::maximally_mixed(d)?);
    }
    for _ in 0..samples {
        states.push(random_density(d, ensemble, &mut rng)?);
    }
    let mut summary = AuditSummary {
        samples: states.len(),
        order: s,
        alphas: alphas.to_vec(),
        violations: 0,
        worst_entropy_margin: f64::INFINITY,
        worst_landau_pollak_margin: f64::INFINITY,
        saturation_events: Vec::new(),
        violation_messages: Vec::new(),
    };
    for (i, rho) in states.iter().enumerate() {
        let report: BoundReport = audit_state(assignment, rho, alphas, s)?;
        summary.worst_entropy_margin = summary.worst_entropy_margin.min(report.worst_margin());
        summary.worst_landau_pollak_margin = summary.worst_landau_pollak_margin.min(report.landau_pollak_margin());
        if report.flags.saturated {
            summary.saturation_events.push(i);
        }
        if !report.flags.all_satisfied {
            summary.violations += 1;
            summary.violation_messages.extend(report.flags.violations.iter().map(|v| format!("sample {i}: {v}")));
        }
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteeringLine {
    pub inequality: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Alpha>,
    #[serde(flatten)]
    pub outcome: SteeringOutcome,
}

impl SteeringLine {
    fn to_text(&self) -> String {
        let label = match self.alpha {
            Some(a) => format!("{} alpha={a}", self.inequality),
            None => self.inequality.clone(),
        };
        format!(
            "{label}: lhs = {:.12e}  rhs = {:.12e}  {}\n",
            self.outcome.lhs,
            self.outcome.rhs,
            if self.outcome.satisfied { "satisfied" } else { "VIOLATED" }
        )
    }
}

/// Evaluates the requested inequalities with Alice measuring Bob's POVMs.
pub fn cmd_steering(
    rho_ab: &crate::steering::BipartiteDensityMatrix,
    bob: &PovmAssignment,
    alphas: &[Alpha],
    mode: SteeringMode,
) -> Result<Vec<SteeringLine>> {
    let alice = matched_alice_povms(bob)?;
    let mut lines = Vec::new();
    if mode != SteeringMode::Maxprob {
        for &alpha in alphas {
            let outcome = steering_check_renyi(rho_ab, &alice, bob, alpha)?;
            lines.push(SteeringLine { inequality: "renyi".into(), alpha: Some(alpha), outcome });
        }
    }
    if mode != SteeringMode::Renyi {
        let outcome = steering_check_maxprob(rho_ab, &alice, bob)?;
        lines.push(SteeringLine { inequality: "maxprob".into(), alpha: None, outcome });
    }
    Ok(lines)
}
