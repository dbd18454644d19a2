use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}\n  hint: {hint}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
        hint: String,
    },
    #[error("line {line}, column {col}: unknown name `{name}`\n  hint: {hint}")]
    UnknownName {
        line: usize,
        col: usize,
        name: String,
        hint: String,
    },
    #[error("{stage}: {source}")]
    Core {
        stage: &'static str,
        #[source]
        source: quotcat_core::Error,
    },
    #[error("{0}")]
    Scenario(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown fixture `{0}`; run `quotcat fixtures` for the list")]
    UnknownFixture(String),
    #[error("report encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn core(stage: &'static str) -> impl FnOnce(quotcat_core::Error) -> CliError {
        move |source| CliError::Core { stage, source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
