//! Result files with a provenance header.
//!
//! CSV files start with `# key: value` lines, JSON files wrap the data as
//! `{"metadata": ..., "data": ...}`. Neither carries timestamps, so the same
//! configuration always yields the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{Format, Settings};

pub const TOOL: &str = "netparadox";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub config_hash: String,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

impl Metadata {
    pub fn new(command: &str, settings: &Settings) -> anyhow::Result<Self> {
        let config = serde_json::to_value(settings)?;
        let canonical = serde_json::to_string(&config)?;
        let digest = Sha256::digest(canonical.as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        Ok(Metadata {
            tool: TOOL,
            version: VERSION,
            command: command.to_owned(),
            seed: settings.seed,
            config_hash: format!("sha256:{hex}"),
            config,
            notes: BTreeMap::new(),
        })
    }

    fn csv_header(&self) -> String {
        let mut out = format!(
            "# tool: {} {}\n# command: {}\n# seed: {}\n# config_hash: {}\n# config: {}\n",
            self.tool, self.version, self.command, self.seed, self.config_hash, self.config
        );
        for (k, v) in &self.notes {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out
    }
}

pub struct Writer {
    dir: PathBuf,
    format: Format,
    meta: Metadata,
    written: Vec<PathBuf>,
}

impl Writer {
    pub fn new(dir: &Path, format: Format, meta: Metadata) -> anyhow::Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        Ok(Writer {
            dir: dir.to_path_buf(),
            format,
            meta,
            written: Vec::new(),
        })
    }

    /// Writes `stem.csv` or `stem.json` depending on the format.
    pub fn emit<D: Serialize + ?Sized>(
        &mut self,
        stem: &str,
        csv: &str,
        data: &D,
        notes: &[(&str, String)],
    ) -> anyhow::Result<()> {
        let mut meta = self.meta.clone();
        for (k, v) in notes {
            meta.notes.insert((*k).to_owned(), v.clone());
        }
        let (path, body) = match self.format {
            Format::Csv => (
                self.dir.join(format!("{stem}.csv")),
                format!("{}{csv}", meta.csv_header()),
            ),
            Format::Json => {
                #[derive(Serialize)]
                struct Doc<'a, D: ?Sized> {
                    metadata: &'a Metadata,
                    data: &'a D,
                }
                let mut text = serde_json::to_string_pretty(&Doc {
                    metadata: &meta,
                    data,
                })?;
                text.push('\n');
                (self.dir.join(format!("{stem}.json")), text)
            }
        };
        fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}
