use clap::{Parser, Subcommand};
use std::path::PathBuf;

use fuzzy_fluid::app;
use fuzzy_fluid::verify::VerifyOptions;

#[derive(Parser)]
#[command(name = "fuzzy-fluid", version, about = "Clebsch fluid simulator with an SU(2) momentum cutoff")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a configuration and write diagnostics and snapshots.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the built-in check suite.
    Verify {
        /// Perturb one check so that the suite fails.
        #[arg(long)]
        inject_fault: bool,
    },
    /// Compare fuzzy runs at several cutoffs against the classical run.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated cutoff values; defaults to 0.2h, 0.1h, 0.05h.
        #[arg(long, value_delimiter = ',')]
        a_list: Option<Vec<f64>>,
    },
    /// Shell-binned energy spectrum of a snapshot.
    Spectrum {
        #[arg(long)]
        snapshot: PathBuf,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { app::EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match cli.command {
        Command::Simulate { config } => app::simulate(&config),
        Command::Verify { inject_fault } => app::verify(&VerifyOptions {
            inject_fault,
            ..Default::default()
        }),
        Command::Sweep { config, a_list } => app::sweep(&config, a_list.as_deref()),
        Command::Spectrum { snapshot, out } => app::spectrum(&snapshot, out.as_deref()),
    };
    std::process::exit(code);
}
