use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

pub const MANIFEST_NAME: &str = "manifest.json";

/// Everything needed to rerun a command and get the same attempt counts.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: serde_json::Value,
    /// File names relative to the manifest's directory.
    pub outputs: Vec<String>,
    /// `[test, prefix_len]` cells whose attempt budget ran out.
    pub budget_exceeded_cells: Vec<(usize, usize)>,
}

impl RunManifest {
    pub fn new(command: &'static str, config: serde_json::Value) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            outputs: Vec::new(),
            budget_exceeded_cells: Vec::new(),
        }
    }
}

/// An output directory that remembers what was written into it.
pub struct Bundle {
    dir: PathBuf,
    written: Vec<String>,
}

impl Bundle {
    pub fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("cannot create output directory {}", dir.display()))?;
        Ok(Bundle {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: impl AsRef<[u8]>) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// Renders into memory with `render`, then writes the file.
    pub fn write_with(
        &mut self,
        name: &str,
        render: impl FnOnce(&mut Vec<u8>) -> monkeysim::Result<()>,
    ) -> Result<()> {
        let mut buf = Vec::new();
        render(&mut buf).with_context(|| format!("cannot render {name}"))?;
        self.write(name, buf)
    }

    pub fn finish(self, mut manifest: RunManifest) -> Result<PathBuf> {
        manifest.outputs = self.written;
        let path = self.dir.join(MANIFEST_NAME);
        let json = serde_json::to_string_pretty(&manifest)? + "\n";
        fs::write(&path, json).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }
}
