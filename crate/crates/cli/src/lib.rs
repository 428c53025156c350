//! Command-line front end for `kenmotsu-core`: manifold description files,
//! structure checks, soliton solving and connection reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage or input errors, 3 for mathematical failures (singular frame or
//! metric, poles).

pub mod commands;
pub mod error;
pub mod example;
pub mod format;
pub mod manifest;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use kenmotsu_core::soliton::SolitonKind;
use kenmotsu_core::symkernel::{parse_rational, Rational};

pub use error::{CliError, Result};
pub use manifest::{parse_manifold, Manifold, Source};
pub use report::{Check, Report, Status};

use commands::{ConnectionArgs, ConnectionMode, SolitonArgs};

#[derive(Debug, Parser)]
#[command(
    name = "kenmotsu",
    version,
    about = "Exact checks for almost-contact metric manifolds"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Curvature and the almost-contact / Kenmotsu identities.
    Check {
        /// Manifold file, or a built-in fixture name (kenmotsu3, euclid3).
        file: String,
    },
    /// Solve or evaluate a soliton equation for a potential field.
    Soliton(SolitonCmd),
    /// CL-connection or Schouten-Van Kampen connection reports.
    Connection(ConnectionCmd),
    /// Run the golden assertions of a built-in example.
    Example { name: String },
}

#[derive(Debug, Args)]
struct SolitonCmd {
    file: String,
    #[arg(long, value_parser = parse_kind)]
    kind: SolitonKind,
    /// Potential vector field, e.g. "2*f1*@f1 + xi".
    #[arg(long, allow_hyphen_values = true)]
    potential: String,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
    beta: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
    mu: Option<Rational>,
    #[arg(long)]
    check_torse: bool,
    #[arg(long)]
    check_ckv: bool,
    #[arg(long)]
    check_phi_ric: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["cl", "svk"]))]
struct ConnectionCmd {
    file: String,
    #[arg(long, requires_all = ["rho", "alpha"])]
    cl: bool,
    #[arg(long)]
    svk: bool,
    /// One-form ρ, e.g. "-(1/f3)*d[f3]" or "eta".
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
    alpha: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    potential: Option<String>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
    beta: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
    mu: Option<Rational>,
}

fn parse_kind(s: &str) -> std::result::Result<SolitonKind, String> {
    s.parse().map_err(|_| {
        let known: Vec<&str> = SolitonKind::ALL.iter().map(|k| k.as_str()).collect();
        format!("expected one of {}", known.join(", "))
    })
}

fn parse_q(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn load(file: &str) -> Result<(Manifold, Report)> {
    let source = Source::resolve(file)?;
    let manifold = parse_manifold(&source.text)?;
    Ok((manifold, Report::new(source.digest(), source.fixture)))
}

fn execute(command: Command) -> Result<Report> {
    match command {
        Command::Check { file } => {
            let (m, mut report) = load(&file)?;
            commands::check(&m, &mut report)?;
            Ok(report)
        }
        Command::Soliton(cmd) => {
            let (m, mut report) = load(&cmd.file)?;
            let args = SolitonArgs {
                kind: cmd.kind,
                potential: cmd.potential,
                beta: cmd.beta,
                mu: cmd.mu,
                check_torse: cmd.check_torse,
                check_ckv: cmd.check_ckv,
                check_phi_ric: cmd.check_phi_ric,
            };
            commands::soliton(&m, &args, &mut report)?;
            Ok(report)
        }
        Command::Connection(cmd) => {
            let (m, mut report) = load(&cmd.file)?;
            let mode = match (cmd.cl, cmd.rho, cmd.alpha) {
                (true, Some(rho), Some(alpha)) => ConnectionMode::Cl { rho, alpha },
                (true, ..) => return Err(CliError::Usage("--cl needs --rho and --alpha".into())),
                (false, ..) => ConnectionMode::Svk,
            };
            let args = ConnectionArgs {
                mode,
                potential: cmd.potential,
                beta: cmd.beta,
                mu: cmd.mu,
            };
            commands::connection(&m, &args, &mut report)?;
            Ok(report)
        }
        Command::Example { name } => example::run(&name),
    }
}

/// Parse `args` (including the program name), run the command and write
/// the report; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            let text = if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            };
            let _ = out.write_all(text.as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
