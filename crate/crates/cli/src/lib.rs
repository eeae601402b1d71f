//! Command-line front end for `fanocav`: configuration, commands and
//! CSV/JSON output.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use fanocav::Execution;

use config::{Format, RunConfig};
use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("computation failed: {0}")]
    Compute(fanocav::Error),
    #[error("{0}")]
    Gate(String),
}

impl From<fanocav::Error> for CliError {
    fn from(e: fanocav::Error) -> Self {
        match e {
            fanocav::Error::InvalidParameter { .. } | fanocav::Error::InvalidGrid { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Compute(other),
        }
    }
}

impl CliError {
    /// Process exit status: 1 computation, 2 configuration, 3 failed
    /// checks, 4 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Config(_) => 2,
            CliError::Gate(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Transmission,
    Cooling,
    SfSpectrum,
    Kernels,
    Compare,
}

impl Command {
    pub fn compute(self, cfg: &RunConfig, exec: Execution) -> Result<Report, CliError> {
        match self {
            Command::Transmission => commands::transmission(cfg, exec),
            Command::Cooling => commands::cooling(cfg, exec),
            Command::SfSpectrum => commands::sf_spectrum(cfg, exec),
            Command::Kernels => commands::kernels(cfg, exec),
            Command::Compare => commands::compare(cfg, exec),
        }
    }
}

/// Everything needed for one invocation.
#[derive(Debug, Clone)]
pub struct Invocation {
    pub command: Command,
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

/// Rendered output and where it should go.
#[derive(Debug, Clone)]
pub struct Output {
    pub text: String,
    pub path: Option<PathBuf>,
    pub report: Report,
}

/// Installs a global worker pool of `n` threads; only the first call takes
/// effect.
pub fn configure_threads(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Config("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Loads the configuration, runs the command and renders the result. The
/// output format is `--format`, then the config `format`, then the `--out`
/// extension, then CSV.
pub fn execute(inv: &Invocation, exec: Execution) -> Result<Output, CliError> {
    let cfg = RunConfig::load(&inv.config)?;
    let products = cfg.products(commands::PRODUCTS)?;
    let path = inv.out.clone().or_else(|| cfg.output_path.clone());
    let format = inv
        .format
        .or(cfg.format)
        .or_else(|| {
            path.as_ref()
                .and_then(|p| p.extension())
                .filter(|e| e.eq_ignore_ascii_case("json"))
                .map(|_| Format::Json)
        })
        .unwrap_or(Format::Csv);
    let report = inv.command.compute(&cfg, exec)?;
    let text = report.render(format, products.contains(&"table"), products.contains(&"summary"));
    Ok(Output { text, path, report })
}

/// Writes the output to its file, or stdout when there is none.
pub fn write_output(out: &Output) -> Result<(), CliError> {
    use std::io::Write;
    match &out.path {
        Some(p) => std::fs::write(p, &out.text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(out.text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Runs an invocation end to end and returns the exit status.
pub fn run(inv: &Invocation) -> i32 {
    let result = (|| {
        if let Some(n) = inv.threads {
            configure_threads(n)?;
        }
        let out = execute(inv, Execution::default())?;
        write_output(&out)?;
        let failed = out.report.failed_gates();
        if failed.is_empty() {
            Ok(())
        } else {
            let names: Vec<_> = failed.iter().map(|g| format!("{}: {}", g.name, g.detail)).collect();
            Err(CliError::Gate(format!("check failed: {}", names.join("; "))))
        }
    })();
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fanocav: {e}");
            e.exit_code()
        }
    }
}
