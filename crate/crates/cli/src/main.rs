//! `plustrace` command-line interface.

mod commands;
mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::CliError;

/// Kloosterman sums, Weyl sums, traces of j_m over CM points, closed geodesics and surfaces.
///
/// Cache directory resolution for the j q-expansion: --cache-dir, then PLUSTRACE_CACHE_DIR,
/// then $XDG_CACHE_HOME/plustrace, then ~/.cache/plustrace.
///
/// Exit codes: 0 success, 1 computation error, 2 invalid input.
#[derive(Parser, Debug)]
#[command(name = "plustrace", version, about, long_about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads (defaults to all cores). Output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for the cached j q-expansion.
    #[arg(long, global = true, env = "PLUSTRACE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Output format (default: json for trace, surface and phiplus, csv otherwise).
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Omit the '#' provenance header.
    #[arg(long, global = true)]
    pub no_header: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plus-space Kloosterman sums S_k^+(m, n, c) and their partial sums.
    Kloosterman(commands::KloostermanArgs),
    /// Weyl sums T_m(d′, d; c) and their partial sums.
    Weyl(commands::WeylArgs),
    /// Trace of j_m over the closed geodesics of discriminant D.
    Trace(commands::TraceArgs),
    /// Regularized surface trace of j_m.
    Surface(commands::SurfaceArgs),
    /// Traces of j_m over CM points of discriminant d < 0.
    Cm(commands::CmArgs),
    /// Residual trends of traces over a range of discriminants.
    Scan(commands::ScanArgs),
    /// Run a verification suite.
    Verify(commands::VerifyArgs),
    /// The series φ⁺(n, s) against its closed form.
    Phiplus(commands::PhiPlusArgs),
    /// Cycles of Zagier-reduced forms of discriminant D.
    Cycles(commands::CyclesArgs),
    /// Exact q-expansion coefficients of j, through the disk cache.
    Jcoeffs(commands::JcoeffsArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    #[cfg(feature = "parallel")]
    if let Some(t) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Compute(e.to_string()))?;
    }
    let mut out = output::Sink::open(&cli.global)?;
    match cli.command {
        Command::Kloosterman(a) => commands::kloosterman(&a, &mut out),
        Command::Weyl(a) => commands::weyl(&a, &mut out),
        Command::Trace(a) => commands::trace_cmd(&a, &mut out),
        Command::Surface(a) => commands::surface(&a, &mut out),
        Command::Cm(a) => commands::cm(&a, &mut out),
        Command::Scan(a) => commands::scan(&a, &mut out),
        Command::Verify(a) => commands::verify(&a, &mut out),
        Command::Phiplus(a) => commands::phiplus(&a, &mut out),
        Command::Cycles(a) => commands::cycles(&a, &mut out),
        Command::Jcoeffs(a) => commands::jcoeffs(&a, &cli.global, &mut out),
    }?;
    out.finish()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("plustrace: {e}");
            ExitCode::from(e.code())
        }
    }
}
