//! Library side of the `umbraldob` binary: argument parsing helpers,
//! the subcommands and their output formats.

pub mod commands;
pub mod output;
pub mod seqspec;

use umbraldob_core::SumConfig;

/// Environment variable overriding the summation hard cap.
pub const SUM_CAP_VAR: &str = "UMBRALDOB_SUM_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input, a cap violation or an inadmissible sequence.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] umbraldob_core::Error),
    #[error(transparent)]
    Render(#[from] output::RenderError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// The series configuration, honouring `UMBRALDOB_SUM_CAP` when given.
pub fn sum_config(cap_override: Option<&str>) -> Result<SumConfig, CliError> {
    let config = umbraldob_core::dobinski::default_config();
    match cap_override {
        None => Ok(config),
        Some(text) => match text.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(config.with_cap(cap)),
            _ => Err(CliError::Usage(format!("{SUM_CAP_VAR}: {text:?} is not a positive integer"))),
        },
    }
}
