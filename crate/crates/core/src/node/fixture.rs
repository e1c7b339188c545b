use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use async_trait::async_trait;
use futures::StreamExt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{BlockPair, BlockSource, NodeClient, RawBlockMessage, RawInfoMessage, SourceError};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("directory {0} is not empty")]
    NonEmptyDirectory(PathBuf),
    #[error("archive {0} has no manifest (recording incomplete)")]
    PartialArchive(PathBuf),
    #[error("archive is missing {0}")]
    MissingFile(PathBuf),
    #[error("bad manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> FixtureError + '_ {
    move |source| FixtureError::Io {
        path: path.to_owned(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FixtureManifest {
    pub start: u64,
    pub end: u64,
    pub endpoint: String,
    pub recorded_at: String,
}

/// A recorded range of raw node responses.
#[derive(Debug, Clone)]
pub struct FixtureArchive {
    dir: PathBuf,
    manifest: FixtureManifest,
}

pub fn block_file(height: u64) -> String {
    format!("block-{height}.bin")
}

pub fn info_file(height: u64) -> String {
    format!("info-{height}.bin")
}

impl FixtureArchive {
    /// Opens a complete archive, checking that every file is present.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, FixtureError> {
        let dir = dir.as_ref().to_owned();
        let manifest_path = dir.join(MANIFEST_FILE);
        if !manifest_path.exists() {
            return Err(FixtureError::PartialArchive(dir));
        }
        let text = fs::read_to_string(&manifest_path).map_err(io_err(&manifest_path))?;
        let manifest: FixtureManifest =
            serde_json::from_str(&text).map_err(|e| FixtureError::Manifest(e.to_string()))?;
        if manifest.start > manifest.end {
            return Err(FixtureError::Manifest(format!(
                "start {} after end {}",
                manifest.start, manifest.end
            )));
        }
        for h in manifest.start..=manifest.end {
            for name in [block_file(h), info_file(h)] {
                let path = dir.join(name);
                if !path.is_file() {
                    return Err(FixtureError::MissingFile(path));
                }
            }
        }
        Ok(FixtureArchive { dir, manifest })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn manifest(&self) -> &FixtureManifest {
        &self.manifest
    }

    pub fn contains(&self, height: u64) -> bool {
        (self.manifest.start..=self.manifest.end).contains(&height)
    }

    pub fn read_block(&self, height: u64) -> Result<RawBlockMessage, FixtureError> {
        let path = self.dir.join(block_file(height));
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        Ok(RawBlockMessage { height, bytes })
    }

    pub fn read_info(&self, height: u64) -> Result<RawInfoMessage, FixtureError> {
        let path = self.dir.join(info_file(height));
        let bytes = fs::read(&path).map_err(io_err(&path))?;
        Ok(RawInfoMessage { height, bytes })
    }
}

fn ensure_empty_dir(dir: &Path) -> Result<(), FixtureError> {
    if dir.exists() {
        let mut entries = fs::read_dir(dir).map_err(io_err(dir))?;
        if entries.next().is_some() {
            return Err(FixtureError::NonEmptyDirectory(dir.to_owned()));
        }
    } else {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), FixtureError> {
    let mut f = fs::File::create(path).map_err(io_err(path))?;
    f.write_all(bytes).map_err(io_err(path))?;
    Ok(())
}

fn finish(dir: &Path, manifest: FixtureManifest) -> Result<FixtureArchive, FixtureError> {
    let json = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    let tmp = dir.join(".manifest.json.tmp");
    write_file(&tmp, &json)?;
    let path = dir.join(MANIFEST_FILE);
    fs::rename(&tmp, &path).map_err(io_err(&path))?;
    Ok(FixtureArchive {
        dir: dir.to_owned(),
        manifest,
    })
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

/// Incrementally writes an archive; the manifest goes down in `finish`.
#[derive(Debug)]
pub struct FixtureWriter {
    dir: PathBuf,
    start: Option<u64>,
    next: Option<u64>,
}

impl FixtureWriter {
    /// Fails unless `dir` is absent or empty.
    pub fn create(dir: impl AsRef<Path>) -> Result<Self, FixtureError> {
        let dir = dir.as_ref().to_owned();
        ensure_empty_dir(&dir)?;
        Ok(FixtureWriter {
            dir,
            start: None,
            next: None,
        })
    }

    /// Heights must arrive contiguous and ascending.
    pub fn write(&mut self, pair: &BlockPair) -> Result<(), FixtureError> {
        let h = pair.height();
        if let Some(next) = self.next
            && h != next {
                return Err(FixtureError::Manifest(format!(
                    "expected height {next}, got {h}"
                )));
            }
        write_file(&self.dir.join(block_file(h)), &pair.block.bytes)?;
        write_file(&self.dir.join(info_file(h)), &pair.info.bytes)?;
        self.start.get_or_insert(h);
        self.next = Some(h + 1);
        Ok(())
    }

    pub fn finish(self, endpoint: &str) -> Result<FixtureArchive, FixtureError> {
        let (Some(start), Some(next)) = (self.start, self.next) else {
            return Err(FixtureError::Manifest("empty range".into()));
        };
        finish(
            &self.dir,
            FixtureManifest {
                start,
                end: next - 1,
                endpoint: endpoint.to_owned(),
                recorded_at: now(),
            },
        )
    }
}

/// Records `[start, end]` from `client` into `dir`. The manifest is written
/// last, so an interrupted recording is detectable.
pub async fn record(
    client: &NodeClient,
    start: u64,
    end: u64,
    dir: impl AsRef<Path>,
    window: usize,
) -> Result<FixtureArchive, FixtureError> {
    if start > end {
        return Err(FixtureError::Manifest(format!("start {start} after end {end}")));
    }
    let mut writer = FixtureWriter::create(dir)?;
    let mut stream = Box::pin(client.stream_range(start, end, window));
    while let Some(pair) = stream.next().await {
        writer.write(&pair?)?;
    }
    writer.finish(&client.describe())
}

/// Writes already-materialized pairs (ascending, contiguous) as an archive.
pub fn write_archive(
    dir: impl AsRef<Path>,
    endpoint: &str,
    pairs: &[BlockPair],
) -> Result<FixtureArchive, FixtureError> {
    let mut writer = FixtureWriter::create(dir)?;
    for pair in pairs {
        writer.write(pair)?;
    }
    writer.finish(endpoint)
}

/// Replays an archive as a [`BlockSource`].
#[derive(Debug, Clone)]
pub struct FixtureSource {
    archive: FixtureArchive,
}

impl FixtureSource {
    pub fn new(archive: FixtureArchive) -> Self {
        FixtureSource { archive }
    }

    pub fn open(dir: impl AsRef<Path>) -> Result<Self, FixtureError> {
        FixtureArchive::open(dir).map(Self::new)
    }

    pub fn archive(&self) -> &FixtureArchive {
        &self.archive
    }

    fn check(&self, height: u64) -> Result<(), SourceError> {
        if self.archive.contains(height) {
            Ok(())
        } else {
            Err(SourceError::NotFound { height })
        }
    }
}

fn closed(err: FixtureError) -> SourceError {
    tracing::error!(error = %err, "fixture read failed");
    SourceError::SourceClosed
}

#[async_trait]
impl BlockSource for FixtureSource {
    async fn fetch_block(&self, height: u64) -> Result<RawBlockMessage, SourceError> {
        self.check(height)?;
        self.archive.read_block(height).map_err(closed)
    }

    async fn fetch_info(&self, height: u64) -> Result<RawInfoMessage, SourceError> {
        self.check(height)?;
        self.archive.read_info(height).map_err(closed)
    }

    async fn head(&self) -> Result<u64, SourceError> {
        Ok(self.archive.manifest.end)
    }

    fn describe(&self) -> String {
        format!("fixture:{}", self.archive.dir.display())
    }
}
