use crate::error::CliError;
use poly_core::{catalog, default_var_names, Polynomial, PolynomialDoc};
use serde::de::DeserializeOwned;
use std::io::Read;
use std::path::Path;

/// Reads a file, or standard input for `-`.
pub fn read_text(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::from_json(&path.display().to_string(), &e))
}

/// Writes to a file, or standard output when no path is given.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

/// A polynomial from a JSON file or a named fixture, with its variable names.
pub fn load_polynomial(input: Option<&Path>, example: Option<&str>) -> Result<(Polynomial, Vec<String>), CliError> {
    match (input, example) {
        (Some(_), Some(_)) => Err(CliError::Input("give either an input file or --example, not both".into())),
        (None, None) => Err(CliError::Input("no input polynomial (pass a file or --example)".into())),
        (None, Some(name)) => {
            let p = catalog::by_name(name).ok_or_else(|| {
                let names: Vec<&str> = catalog::all().iter().map(|(n, _)| *n).collect();
                CliError::Input(format!("unknown example {name:?}; known: {}", names.join(", ")))
            })?;
            let vars = default_var_names(p.nvars());
            Ok((p, vars))
        }
        (Some(path), None) => {
            let doc: PolynomialDoc = read_json(path)?;
            let p = doc.to_polynomial()?;
            Ok((p, doc.vars))
        }
    }
}
