use thiserror::Error;

pub const FAMILY_GRAMMAR: &str = "stable:alpha=<f> | brownian | relativistic:alpha=<f>,m=<f> | \
mixture:a1=<f>,alpha1=<f>[,a2=<f>,alpha2=<f>...] | cpp-cosine | sbm:file=<path>";

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] levy_suprema_core::Error),
    #[error("bad family spec `{spec}`: {reason} (expected {FAMILY_GRAMMAR})")]
    FamilySpec { spec: String, reason: String },
    #[error("bad range `{0}`: expected <value> or <start>:<stop>:<count> with 0 < start <= stop, count >= 1")]
    Range(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl AppError {
    /// 2 for bad input or a violated hypothesis, 3 for a numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(e) if !e.is_precondition() => 3,
            _ => 2,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
