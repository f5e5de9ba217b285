use std::fmt;

/// A failure carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const PRECONDITION: u8 = 3;

    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: Self::USAGE,
            message: message.into(),
        }
    }

    pub fn check_failed(message: impl Into<String>) -> Self {
        CliError {
            code: Self::CHECK_FAILED,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<krun::Error> for CliError {
    fn from(e: krun::Error) -> Self {
        use krun::Error::*;
        let code = match e {
            DegenerateProbability(_) | SingularMomentSolve(_) | NegativeMass { .. } => Self::PRECONDITION,
            _ => Self::USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}
