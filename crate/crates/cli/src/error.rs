use injspec_core::Error as CoreError;

/// A command failure, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    /// Malformed input, unsupported request or exhausted budget.
    #[error("input error: {0}")]
    Input(String),
    /// A mathematical invariant failed.
    #[error("invariant `{invariant}` violated: {detail}")]
    Invariant { invariant: String, detail: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant { .. } => 1,
        }
    }
}

/// The invariant a core error names, if it is an invariant failure.
pub fn invariant_of(e: &CoreError) -> Option<String> {
    match e {
        CoreError::Invariant { invariant, .. } => Some(invariant.clone()),
        CoreError::NotCommuting { arrow } => Some(format!("commuting square for arrow {arrow}")),
        CoreError::NotArrowClosed { arrow } => Some(format!("closed under arrow {arrow}")),
        _ => None,
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match invariant_of(&e) {
            Some(invariant) => CliError::Invariant { invariant, detail: e.to_string() },
            None => CliError::Input(e.to_string()),
        }
    }
}
