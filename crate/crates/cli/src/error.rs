use std::fmt;

pub const EXIT_OK: u8 = 0;
pub const EXIT_REQUIREMENT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_ANOMALY: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

/// Failure carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Self::usage(message)
    }

    pub fn anomaly(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_ANOMALY,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
