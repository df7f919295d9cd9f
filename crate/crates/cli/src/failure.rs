//! Process exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | other failure (unreadable input, kernel error) |
//! | 2 | invalid configuration or usage |
//! | 3 | output could not be written |
//! | 4 | result file failed to parse or has the wrong schema |
//! | 5 | malformed PGM image or graph file |

use std::fmt::Display;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Code {
    Generic = 1,
    Config = 2,
    Output = 3,
    Schema = 4,
    Input = 5,
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub message: String,
}

impl Failure {
    pub fn new(code: Code, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }

    pub fn config(message: impl Display) -> Self {
        Self::new(Code::Config, message)
    }

    pub fn read(path: &Path, err: std::io::Error) -> Self {
        Self::new(Code::Generic, format!("cannot read {}: {err}", path.display()))
    }

    pub fn write(path: &Path, err: std::io::Error) -> Self {
        Self::new(Code::Output, format!("cannot write {}: {err}", path.display()))
    }
}

impl From<xbench_harness::Error> for Failure {
    fn from(err: xbench_harness::Error) -> Self {
        use xbench_harness::Error as E;
        let code = match &err {
            E::UnknownWorkload(_) | E::Config(_) | E::Aggregation(_) => Code::Config,
            E::SchemaVersion { .. } | E::Schema(_) | E::Json(_) => Code::Schema,
            E::Kernel { .. } | E::EmptySamples | E::Busy => Code::Generic,
        };
        Self::new(code, err)
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;
