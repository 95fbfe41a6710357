use std::fmt;

use dlchow::dlclass::DlError;
use dlchow::hecke::HeckeError;
use dlchow::permgroup::PermError;
use dlchow::polyring::PolyError;
use dlchow::schubert::SchubertError;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Cap(String),
    Cache(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Cache(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Cap(m) | CliError::Cache(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse(_) | PolyError::UnknownVariable(_) => CliError::Parse(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::Perm(p) => p.into(),
            HeckeError::Poly(p) => p.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<SchubertError> for CliError {
    fn from(e: SchubertError) -> Self {
        match e {
            SchubertError::RankOutOfRange(_) => CliError::Cap(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<DlError> for CliError {
    fn from(e: DlError) -> Self {
        match e {
            DlError::Perm(p) => p.into(),
            DlError::Poly(p) => p.into(),
            DlError::Schubert(s) => s.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
