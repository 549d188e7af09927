use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Fixed 17-significant-digit formatting used in every CSV cell.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Table {
    text: String,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: format!("{}\n", header.join(",")),
        }
    }

    /// A row whose first cell is printed as an integer.
    pub fn indexed(&mut self, n: impl std::fmt::Display, cells: &[f64]) {
        let _ = write!(self.text, "{n}");
        for c in cells {
            let _ = write!(self.text, ",{}", num(*c));
        }
        self.text.push('\n');
    }

    pub fn row(&mut self, cells: &[f64]) {
        let line: Vec<String> = cells.iter().map(|c| num(*c)).collect();
        self.text.push_str(&line.join(","));
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("cannot encode report: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Writes to `path` through a temporary file in the same directory, or to stdout.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let io_err = |e: io::Error| CliError::Io(format!("{}: {e}", p.display()));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
            tmp.write_all(text.as_bytes()).map_err(io_err)?;
            tmp.persist(p).map_err(|e| io_err(e.error))?;
            Ok(())
        }
    }
}
