//! Run manifests: configuration echo, timestamps, file digests, and
//! per-stage status. Output files are written atomically (temp + rename)
//! and the manifest is always written last.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL_NAME: &str = "nslog";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct StageStatus {
    pub name: String,
    pub status: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub mode: String,
    pub seed: u64,
    pub started: String,
    pub finished: String,
    pub config_echo: String,
    pub config_sha256: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub stages: Vec<StageStatus>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

pub fn sha256_file(path: &Path) -> std::io::Result<String> {
    Ok(sha256_hex(&fs::read(path)?))
}

/// Write bytes to `path` through a temporary sibling and an atomic rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!(
        "{}.tmp-{}",
        path.extension()
            .map(|e| e.to_string_lossy().to_string())
            .unwrap_or_default(),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Collects output files as they are produced and assembles the manifest.
pub struct RunRecorder {
    pub out_dir: PathBuf,
    started: String,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    stages: Vec<StageStatus>,
}

fn now_rfc3339() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Micros, true)
}

impl RunRecorder {
    pub fn new(out_dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(out_dir)?;
        Ok(Self {
            out_dir: out_dir.to_path_buf(),
            started: now_rfc3339(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            stages: Vec::new(),
        })
    }

    /// Record an input file digest.
    pub fn note_input(&mut self, path: &Path) -> std::io::Result<()> {
        self.inputs.push(FileDigest {
            path: path.to_string_lossy().into_owned(),
            sha256: sha256_file(path)?,
        });
        Ok(())
    }

    /// Atomically write an output file under the run directory.
    pub fn write_output(&mut self, name: &str, bytes: &[u8]) -> std::io::Result<PathBuf> {
        let path = self.out_dir.join(name);
        write_atomic(&path, bytes)?;
        self.outputs.push(FileDigest {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
        });
        Ok(path)
    }

    pub fn stage_ok(&mut self, name: &str) {
        self.stages.push(StageStatus {
            name: name.to_string(),
            status: "ok".to_string(),
        });
    }

    pub fn stage_failed(&mut self, name: &str, message: &str) {
        self.stages.push(StageStatus {
            name: name.to_string(),
            status: format!("failed: {message}"),
        });
    }

    /// Write the manifest last and return it.
    pub fn finish(
        mut self,
        mode: &str,
        seed: u64,
        config_echo: &str,
    ) -> std::io::Result<RunManifest> {
        let manifest = RunManifest {
            tool: TOOL_NAME.to_string(),
            version: TOOL_VERSION.to_string(),
            mode: mode.to_string(),
            seed,
            started: self.started.clone(),
            finished: now_rfc3339(),
            config_echo: config_echo.to_string(),
            config_sha256: sha256_hex(config_echo.as_bytes()),
            inputs: std::mem::take(&mut self.inputs),
            outputs: std::mem::take(&mut self.outputs),
            stages: std::mem::take(&mut self.stages),
        };
        let json = serde_json::to_string_pretty(&manifest)?;
        write_atomic(&self.out_dir.join("manifest.json"), json.as_bytes())?;
        Ok(manifest)
    }
}

pub fn load_manifest(path: &Path) -> std::io::Result<RunManifest> {
    let bytes = fs::read(path)?;
    serde_json::from_slice(&bytes)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}
