//! CSV tables, run manifests and atomic file writes.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;

use super::CliError;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// A CSV table headed by a `#schema=<name>` version line.
#[derive(Debug, Clone)]
pub struct Table {
    schema: &'static str,
    columns: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(schema: &'static str, columns: &'static [&'static str]) -> Self {
        Self {
            schema,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width for {}",
            self.schema
        );
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut s = format!("#schema={}\n{}\n", self.schema, self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Usage(format!("cannot write {}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

pub fn output_dir(dir: &Path) -> Result<&Path, CliError> {
    if dir.is_dir() {
        Ok(dir)
    } else {
        Err(CliError::Usage(format!(
            "output directory {} does not exist",
            dir.display()
        )))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FileRows {
    pub file: String,
    pub rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellRows {
    pub cell: usize,
    pub rows: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config_digest: String,
    pub master_seed: u64,
    pub started_at: String,
    pub finished_at: String,
    pub files: Vec<FileRows>,
    pub cells: Vec<CellRows>,
}

fn stamp(t: DateTime<Utc>) -> String {
    t.to_rfc3339_opts(SecondsFormat::Millis, true)
}

/// Collects tables for one run and emits them with a manifest.
pub struct RunWriter<'a> {
    dir: &'a Path,
    command: &'static str,
    config_digest: String,
    master_seed: u64,
    started: DateTime<Utc>,
    files: Vec<FileRows>,
}

impl<'a> RunWriter<'a> {
    pub fn new(
        dir: &'a Path,
        command: &'static str,
        config_digest: String,
        master_seed: u64,
    ) -> Self {
        Self {
            dir,
            command,
            config_digest,
            master_seed,
            started: Utc::now(),
            files: Vec::new(),
        }
    }

    pub fn table(&mut self, name: &str, table: &Table) -> Result<(), CliError> {
        write_atomic(&self.dir.join(name), table.render().as_bytes())?;
        self.files.push(FileRows {
            file: name.to_string(),
            rows: table.len(),
        });
        Ok(())
    }

    /// Writes `<command>.manifest.json` last.
    pub fn finish(self, cells: Vec<CellRows>) -> Result<(), CliError> {
        let manifest = RunManifest {
            tool: "rmt",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            config_digest: self.config_digest,
            master_seed: self.master_seed,
            started_at: stamp(self.started),
            finished_at: stamp(Utc::now()),
            files: self.files,
            cells,
        };
        let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        write_atomic(
            &self.dir.join(format!("{}.manifest.json", self.command)),
            json.as_bytes(),
        )
    }
}
