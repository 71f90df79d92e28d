use std::path::PathBuf;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{1}")]
    Usage(String, String),

    #[error("invalid option: {0}")]
    Config(String),

    #[error("cannot access {path}: {source}")]
    Path {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("verification failed: max error {max_abs_error:e} exceeds {tolerance:e}")]
    VerificationFailed { max_abs_error: f64, tolerance: f64 },

    #[error(transparent)]
    Core(#[from] pbe_core::Error),
}

impl CliError {
    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(kind, _) => format!("usage: {kind}"),
            CliError::Config(_) => "config".into(),
            CliError::Path { .. } => "io".into(),
            CliError::VerificationFailed { .. } => "verification".into(),
            CliError::Core(e) => core_kind(e).into(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } }).to_string()
    }
}

fn core_kind(e: &pbe_core::Error) -> &'static str {
    use pbe_core::Error::*;
    match e {
        DimensionMismatch { .. } => "dimension_mismatch",
        QubitOutOfRange { .. } | DuplicateQubit(_) | OverlappingControls(_) => "invalid_circuit",
        QubitCapExceeded { .. } => "qubit_cap",
        UnknownGateKind(_) => "unknown_gate",
        InvalidParameter(_) => "invalid_parameter",
        NotNormalized { .. } => "not_normalized",
        SingularMatrix { .. } => "singular_matrix",
        NonConvergence { .. } => "non_convergence",
        MixedParity => "mixed_parity",
        FlagMismatch(_) => "flag_mismatch",
        Unsupported(_) => "unsupported",
        Json(_) => "json",
        Csv(_) => "csv",
        Io(_) => "io",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_json_is_machine_readable() {
        let e = CliError::Core(pbe_core::Error::InvalidParameter("k must be >= 1".into()));
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["error"]["kind"], "invalid_parameter");
        assert!(v["error"]["message"].as_str().unwrap().contains("k must be"));
    }
}
