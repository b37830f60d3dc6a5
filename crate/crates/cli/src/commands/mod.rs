//! One module per subcommand. Each produces an [`ExperimentRecord`] plus
//! the tables it emits in the requested formats.

mod decay;
mod nonlinear;
mod report;
mod sweep;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

pub use decay::linear_decay;
pub use nonlinear::nonlinear_run;
pub use report::{report, Summary};
pub use sweep::spectral_sweep;

use crate::config::ConfigErrors;
use crate::record::ExperimentRecord;
use crate::svg::Plot;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub out: PathBuf,
    pub strict: bool,
    pub formats: Vec<Format>,
}

impl Options {
    fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid invocation, config or input files; exit 2.
    Usage(String),
    /// Failure while computing; exit 3.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
        }
    }
}

impl From<ConfigErrors> for CliError {
    fn from(e: ConfigErrors) -> Self {
        CliError::Usage(format!("invalid configuration:\n{e}"))
    }
}

impl From<radhydro::Error> for CliError {
    fn from(e: radhydro::Error) -> Self {
        match e {
            radhydro::Error::InvalidParameter { .. } | radhydro::Error::Checkpoint(_) => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

pub(crate) fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

/// What an experiment hands back for writing.
pub struct Emission {
    pub record: ExperimentRecord,
    pub csv: String,
    pub json: serde_json::Value,
    pub plot: Plot,
}

/// Writes the record and the requested formats; returns the written paths.
pub fn emit(e: &Emission, opts: &Options) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(&opts.out).map_err(|err| io_error(&opts.out, err))?;
    let kind = &e.record.kind;
    let hash = &e.record.provenance.config_hash;
    let mut written = vec![e.record.write(&opts.out).map_err(|err| io_error(&opts.out, err))?];
    let mut put = |name: String, text: String| -> Result<(), CliError> {
        let p = opts.out.join(name);
        fs::write(&p, text).map_err(|err| io_error(&p, err))?;
        written.push(p);
        Ok(())
    };
    if opts.wants(Format::Csv) {
        put(format!("{kind}.csv"), e.csv.clone())?;
    }
    if opts.wants(Format::Json) {
        let doc = serde_json::json!({ "config_hash": hash, "kind": kind, "tables": e.json });
        put(format!("{kind}.json"), serde_json::to_string_pretty(&doc).expect("json") + "\n")?;
    }
    if opts.wants(Format::Svg) {
        put(format!("{kind}.svg"), e.plot.render(hash))?;
    }
    Ok(written)
}
