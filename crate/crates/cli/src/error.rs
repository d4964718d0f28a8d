use std::fmt;

use thiserror::Error;

/// Machine-readable error classes, each with its own exit code.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Category {
    Usage,
    Config,
    Parameter,
    Numerics,
    Verification,
    Io,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Usage => 2,
            Self::Config => 3,
            Self::Parameter => 4,
            Self::Numerics => 5,
            Self::Verification => 6,
            Self::Io => 7,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Usage => "usage",
            Self::Config => "config",
            Self::Parameter => "parameter",
            Self::Numerics => "numerics",
            Self::Verification => "verification",
            Self::Io => "io",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("config key `{key}`: {reason}")]
    ConfigKey { key: String, reason: String },

    #[error("{0}")]
    ConfigParse(String),

    #[error(transparent)]
    Core(#[from] iontrap_core::Error),

    #[error("{0}")]
    Verification(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn key(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::ConfigKey { key: key.into(), reason: reason.into() }
    }

    pub fn io(path: impl fmt::Display, source: std::io::Error) -> Self {
        Self::Io { path: path.to_string(), source }
    }

    pub fn category(&self) -> Category {
        use iontrap_core::Error as E;
        match self {
            Self::Usage(_) => Category::Usage,
            Self::ConfigKey { .. } | Self::ConfigParse(_) => Category::Config,
            Self::Core(E::StepSizeUnderflow { .. } | E::TooManySteps(_)) => Category::Numerics,
            Self::Core(_) => Category::Parameter,
            Self::Verification(_) => Category::Verification,
            Self::Io { .. } => Category::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
