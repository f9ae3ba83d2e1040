//! Command-line front end: figure data, reports, and protocol transcripts
//! for the nuclear-spin cat-qubit library.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod commands;
mod config;
mod dataset;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dataset::Convention;

#[derive(Parser)]
#[command(
    name = "spincat",
    about = "Nuclear-spin cat qubits: spectra, clock transitions, decoherence, and gate protocols",
    version
)]
struct Cli {
    /// TOML configuration file; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for datasets.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Master seed for every stochastic element.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Unit convention for emitted frequency columns.
    #[arg(long, global = true, value_enum, default_value_t = ConventionArg::PaperLiteral)]
    convention: ConventionArg,
    /// Also write JSON mirrors of every dataset.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    PaperLiteral,
    Angular,
}

#[derive(Subcommand)]
enum Command {
    /// Field sweep of the parity-labelled spectrum and qubit splitting.
    Spectrum,
    /// Cat-frame fit (fidelity, angle, clock field) across asymmetry.
    Catfit,
    /// Dephasing tables: noise amplitude, phase variance, clock dephasing
    /// times, curvature coefficients, and a Monte Carlo overlay.
    Dephasing,
    /// Charge-noise and phonon relaxation rates with a simulation check.
    Relaxation,
    /// Gate-fidelity heatmap over quadrupole coupling and asymmetry.
    Gatemap,
    /// CZ, readout, and initialization dry runs.
    Protocol,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
        {
            eprintln!("thread pool: {e}");
        }
    }

    let cfg = match config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e:#}");
            return ExitCode::from(2);
        }
    };

    let convention = match cli.convention {
        ConventionArg::PaperLiteral => Convention::PaperLiteral,
        ConventionArg::Angular => Convention::Angular,
    };
    let ctx = commands::Ctx {
        cfg: &cfg,
        out: &cli.out,
        seed: cli.seed,
        convention,
        json: cli.json,
    };

    let result = match cli.command {
        Command::Spectrum => commands::cmd_spectrum(&ctx),
        Command::Catfit => commands::cmd_catfit(&ctx),
        Command::Dephasing => commands::cmd_dephasing(&ctx),
        Command::Relaxation => commands::cmd_relaxation(&ctx),
        Command::Gatemap => commands::cmd_gatemap(&ctx),
        Command::Protocol => commands::cmd_protocol(&ctx),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("numerical failure: {e:#}");
            ExitCode::from(3)
        }
    }
}
