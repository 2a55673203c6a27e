use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use galqm::{FieldElement, Ket};
use serde::Serialize;

use crate::error::CliResult;

/// Schema tag carried by every JSON document.
pub const SCHEMA: &str = "galqm/1";

pub trait Render {
    fn json(&self) -> CliResult<String>;
    fn csv(&self) -> CliResult<String>;
    fn text(&self) -> String;
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Serializes rows (header first) as CSV.
pub fn to_csv(rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| crate::error::CliError::Invariant(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| crate::error::CliError::Invariant(e.to_string()))
}

pub fn elements(coords: &[FieldElement]) -> Vec<String> {
    coords.iter().map(ToString::to_string).collect()
}

pub fn ket(v: &Ket) -> Vec<String> {
    elements(v.coords())
}

/// Space-separated coordinates, for CSV cells and text.
pub fn joined(coords: &[String]) -> String {
    coords.join(" ")
}

pub fn strs<T: Display>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

pub fn emit(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
