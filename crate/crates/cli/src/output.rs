//! Tables and their byte-stable serialization.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Flag(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

/// Nine significant digits in scientific notation; `-0` prints as `0`.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.8e}")
}

/// A named table destined for one output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File stem without extension.
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Numeric column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match r[k] {
                    Cell::Num(v) => v,
                    Cell::Flag(b) => f64::from(u8::from(b)),
                })
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    /// `{"columns": [...], "rows": [[...], ...]}` with the CSV number strings.
    pub fn to_json(&self) -> String {
        let mut s = String::from("{\n  \"columns\": [");
        let cols: Vec<String> = self.columns.iter().map(|c| format!("\"{c}\"")).collect();
        s.push_str(&cols.join(", "));
        s.push_str("],\n  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            s.push_str(if i == 0 { "\n    [" } else { ",\n    [" });
            let cells: Vec<String> = row.iter().map(json_cell).collect();
            s.push_str(&cells.join(", "));
            s.push(']');
        }
        if !self.rows.is_empty() {
            s.push_str("\n  ");
        }
        s.push_str("]\n}\n");
        s
    }

    pub fn file_name(&self, format: Format) -> String {
        match format {
            Format::Csv => format!("{}.csv", self.name),
            Format::Json => format!("{}.json", self.name),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn csv_cell(c: &Cell) -> String {
    match *c {
        Cell::Num(v) => format_number(v),
        Cell::Flag(b) => b.to_string(),
    }
}

fn json_cell(c: &Cell) -> String {
    match *c {
        Cell::Num(v) if !v.is_finite() => "null".into(),
        other => csv_cell(&other),
    }
}

/// Writes every table into `dir`. Each file goes to a temporary name first
/// and is renamed into place, so readers never see a half-written file.
pub fn write_tables(dir: &Path, format: Format, tables: &[Table]) -> CliResult<Vec<PathBuf>> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::with_capacity(tables.len());
    for t in tables {
        let path = dir.join(t.file_name(format));
        let tmp = dir.join(format!(".{}.tmp", t.file_name(format)));
        fs::write(&tmp, t.render(format)).map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}

/// Summary line for stdout listing the written files.
pub fn describe(paths: &[PathBuf]) -> String {
    let mut s = String::new();
    for p in paths {
        let _ = writeln!(s, "wrote {}", p.display());
    }
    s
}
