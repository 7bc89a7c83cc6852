//! Batch driver: every verification as a command reading a JSON
//! [`RunConfig`] and producing a deterministic CSV table.
//!
//! Exit codes of the binary: [`EXIT_PASS`], [`EXIT_NUMERICAL`] when a
//! residual exceeds its tolerance or a computation fails, and
//! [`EXIT_CONFIG`] for unreadable or invalid configurations.

pub mod commands;
pub mod config;
pub mod sampling;

pub use commands::{run, Report};
pub use config::{BcChoice, Range, RunConfig, Tolerances};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_CONFIG: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Print T_k and compare it with the shipped golden form.
    Tk,
    /// Random-matrix check of the modified-determinant product formula.
    VerifyProduct,
    /// Half-line determinants against Jost data, and the m-function chain.
    VerifyHalfline,
    /// Disk identities: Dirichlet form, Neumann form and per-mode boundary identity.
    VerifyDisk,
    /// Disk eigenvalues from boundary-determinant zeros.
    Spectra,
    /// Spectral shift values against eigenvalue counts.
    XiScan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Tk => "tk",
            Command::VerifyProduct => "verify-product",
            Command::VerifyHalfline => "verify-halfline",
            Command::VerifyDisk => "verify-disk",
            Command::Spectra => "spectra",
            Command::XiScan => "xi-scan",
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum JplabError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl JplabError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JplabError::Config(_) => EXIT_CONFIG,
            JplabError::Numerical(_) | JplabError::Io(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<disk2d::DiskError> for JplabError {
    fn from(e: disk2d::DiskError) -> Self {
        JplabError::Numerical(e.to_string())
    }
}

impl From<halfline::HalfLineError> for JplabError {
    fn from(e: halfline::HalfLineError) -> Self {
        JplabError::Numerical(e.to_string())
    }
}

impl From<detcalc::DetError> for JplabError {
    fn from(e: detcalc::DetError) -> Self {
        JplabError::Numerical(e.to_string())
    }
}
