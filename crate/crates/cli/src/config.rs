//! Numeric defaults read from a TOML file. Command-line flags win over the
//! file, the file wins over built-in defaults.

use crate::error::CliError;
use num_rational::BigRational;
use poly_core::parse_number;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub tolerance: Option<f64>,
    pub width: Option<NumberValue>,
    pub t_max: Option<NumberValue>,
    pub at: Option<NumberValue>,
    pub step: Option<f64>,
    pub t_end: Option<f64>,
    pub newton_filter: Option<bool>,
    pub validate: Option<bool>,
    pub retries: Option<usize>,
    pub moment_degree: Option<u32>,
    pub snapshots: Option<Vec<f64>>,
}

/// A number written either as a TOML number or as an exact string such as
/// `"1/9"` or `"2e-4"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum NumberValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl NumberValue {
    pub fn to_rational(&self) -> Result<BigRational, CliError> {
        let text = match self {
            NumberValue::Int(i) => i.to_string(),
            // shortest round-trip form, so 1e-5 reads back as exactly 1/100000
            NumberValue::Float(f) => format!("{f}"),
            NumberValue::Text(s) => s.clone(),
        };
        parse_number(&text).map_err(|e| CliError::Input(format!("config value {text:?}: {e}")))
    }
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((0, 0), |span| line_column(text, span.start));
            CliError::Parse { path: origin.to_string(), line, column, message: e.message().to_string() }
        })
    }
}

/// One-based line and column of a byte offset.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly_core::ratio;

    #[test]
    fn numbers_stay_exact() {
        let c = FileConfig::parse("width = 1e-5\nt_max = \"1/9\"\nat = 2\n", "cfg").unwrap();
        assert_eq!(c.width.unwrap().to_rational().unwrap(), ratio(1, 100000));
        assert_eq!(c.t_max.unwrap().to_rational().unwrap(), ratio(1, 9));
        assert_eq!(c.at.unwrap().to_rational().unwrap(), ratio(2, 1));
    }

    #[test]
    fn errors_carry_position() {
        match FileConfig::parse("tolerance = 1e-9\nwidth = [\n", "cfg") {
            Err(CliError::Parse { line, .. }) => assert!(line >= 2),
            other => panic!("expected a parse error, got {other:?}"),
        }
        assert!(matches!(FileConfig::parse("colour = 1\n", "cfg"), Err(CliError::Parse { line: 1, .. })));
    }
}
