use qk_core::ifunction::IFunctionError;
use qk_core::localization::LocalizationError;
use qk_core::presentation::PresentationError;
use qk_core::ring::RingError;
use qk_core::toric::ToricError;
use qk_core::wallcross::WallcrossError;

/// Every failure carries a machine-readable code and maps to an exit status:
/// 1 for bad input, 2 for a mathematical check that did not hold.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    IFunction(#[from] IFunctionError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Wallcross(WallcrossError),
    #[error("check failed: {0}")]
    Check(String),
}

impl From<WallcrossError> for CliError {
    fn from(e: WallcrossError) -> Self {
        match e {
            WallcrossError::Telescope(table) => CliError::Check(format!("wall terms do not telescope\n{table}")),
            other => CliError::Wallcross(other),
        }
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "input.usage",
            CliError::Io { .. } => "input.io",
            CliError::Json { .. } => "input.json",
            CliError::Toric(_) => "input.toric",
            CliError::Presentation(_) => "input.presentation",
            CliError::IFunction(IFunctionError::Normalization { .. }) => "check.normalization",
            CliError::IFunction(_) => "input.ifunction",
            CliError::Localization(_) => "input.localization",
            CliError::Ring(_) => "input.ring",
            CliError::Wallcross(_) => "input.wallcross",
            CliError::Check(_) => "check.failed",
        }
    }

    pub fn exit_status(&self) -> i32 {
        if self.code().starts_with("check.") {
            2
        } else {
            1
        }
    }
}
