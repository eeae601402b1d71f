use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fanocav_cli::config::Format;
use fanocav_cli::{run, Command, Invocation};

#[derive(Parser)]
#[command(name = "fanocav", version, about = "Fano-mirror cavity spectra, kernels and optomechanical cooling")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Transmission from the coupled-mode and transfer-matrix models.
    Transmission(Common),
    /// Steady-state phonon occupation against coupling strength.
    Cooling(Common),
    /// Optical force noise spectrum and sideband markers.
    SfSpectrum(Common),
    /// Memory kernels of the eliminated mirror mode.
    Kernels(Common),
    /// Model agreement across mirror linewidths.
    Compare(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file (defaults to the config's output_path, else stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads for parallel sweeps.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (command, c) = match cli.verb {
        Verb::Transmission(c) => (Command::Transmission, c),
        Verb::Cooling(c) => (Command::Cooling, c),
        Verb::SfSpectrum(c) => (Command::SfSpectrum, c),
        Verb::Kernels(c) => (Command::Kernels, c),
        Verb::Compare(c) => (Command::Compare, c),
    };
    let inv = Invocation {
        command,
        config: c.config,
        out: c.out,
        format: c.format,
        threads: c.threads,
    };
    std::process::exit(run(&inv));
}
