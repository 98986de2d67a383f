//! Tool-level errors carrying the process exit code.

use std::fmt;

/// Exit code classes of the tool. `Config` covers malformed configs,
/// unknown presets, and bad command lines; `Domain` covers parameter values
/// the models reject (including unstable drift); `Io` covers filesystem
/// failures; `CheckFailed` is reserved for a failing self-check run.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Domain(String),
    Io(String),
    CheckFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Io(_) => 3,
            CliError::CheckFailed(_) => 4,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub(crate) fn io(msg: impl Into<String>) -> Self {
        CliError::Io(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Domain(msg) => write!(f, "domain error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
            CliError::CheckFailed(failed) => {
                write!(f, "self-check failed: {failed} check(s) did not pass")
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<optowork_core::Error> for CliError {
    fn from(e: optowork_core::Error) -> Self {
        let msg = e.to_string();
        CliError::Domain(
            msg.strip_prefix("domain error: ")
                .unwrap_or(&msg)
                .to_string(),
        )
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
