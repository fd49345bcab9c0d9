use std::path::Path;

/// Failures surfaced to the command line, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: malformed scene file, out-of-range parameter, I/O trouble.
    #[error("{0}")]
    Invalid(String),
    /// Input was valid but the requested result does not exist.
    #[error("{0}")]
    Infeasible(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Infeasible(_) => 1,
            CliError::Invalid(_) | CliError::Io { .. } => 2,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<tiltpick::Error> for CliError {
    fn from(e: tiltpick::Error) -> Self {
        use tiltpick::Error as E;
        match e {
            E::NoFeasiblePath
            | E::ArcBudgetExceeded { .. }
            | E::DegenerateEdgeImages
            | E::ParallelNormals => CliError::Infeasible(e.to_string()),
            E::InvalidParameter(_)
            | E::NoValidPlacement { .. }
            | E::DeltaOutOfRange { .. }
            | E::MissingSlipDirection
            | E::SpecMismatch => CliError::Invalid(e.to_string()),
        }
    }
}
