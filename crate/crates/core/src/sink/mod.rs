//! Loading rows into a columnar store: the local row-file directory and the
//! ClickHouse HTTP interface.

mod clickhouse;
mod frontier;
mod local;
pub mod rowfile;

use std::fmt;

use async_trait::async_trait;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::schema::{Row, SchemaError};

pub use clickhouse::{ClickHouseConfig, ClickHouseSink};
pub use frontier::FrontierTracker;
pub use local::LocalSink;

/// Inclusive block range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockRange {
    pub first: u64,
    pub last: u64,
}

impl BlockRange {
    pub fn new(first: u64, last: u64) -> Self {
        assert!(first <= last, "empty block range {first}..{last}");
        BlockRange { first, last }
    }

    pub fn contains(&self, block: u64) -> bool {
        self.first <= block && block <= self.last
    }

    pub fn overlaps(&self, other: &BlockRange) -> bool {
        self.first <= other.last && other.first <= self.last
    }

    pub fn len(&self) -> u64 {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Splits into consecutive chunks of at most `size` blocks.
    pub fn chunks(&self, size: u64) -> impl Iterator<Item = BlockRange> + use<> {
        let size = size.max(1);
        let last = self.last;
        (self.first..=last)
            .step_by(usize::try_from(size).unwrap_or(usize::MAX))
            .map(move |f| BlockRange::new(f, f.saturating_add(size - 1).min(last)))
    }

    /// Sub-ranges of `self` not covered by any of `covered`.
    pub fn gaps(&self, covered: &[BlockRange]) -> Vec<BlockRange> {
        let mut sorted: Vec<BlockRange> = covered
            .iter()
            .filter(|c| c.overlaps(self))
            .copied()
            .collect();
        sorted.sort();
        let mut gaps = Vec::new();
        let mut next = self.first;
        for c in sorted {
            if c.first > next {
                gaps.push(BlockRange::new(next, c.first - 1));
            }
            if c.last >= next {
                if c.last >= self.last {
                    return gaps;
                }
                next = c.last + 1;
            }
        }
        if next <= self.last {
            gaps.push(BlockRange::new(next, self.last));
        }
        gaps
    }
}

impl fmt::Display for BlockRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.first, self.last)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Checkpoint {
    pub table_group: String,
    pub last_loaded_block: u64,
    pub updated_at: u64,
}

/// Rows stored versus distinct primary keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct TableCount {
    pub physical: u64,
    pub logical: u64,
}

#[derive(Debug, Error)]
pub enum SinkError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("table {table}: {reason}")]
    SchemaMismatch { table: String, reason: String },
    #[error("store unavailable: {0}")]
    StoreUnavailable(String),
    #[error("corrupt store file {path}: {reason}")]
    Corrupt { path: String, reason: String },
}

impl SinkError {
    pub fn is_retryable(&self) -> bool {
        matches!(self, SinkError::StoreUnavailable(_))
    }
}

pub(crate) fn now_ms() -> u64 {
    u64::try_from(chrono::Utc::now().timestamp_millis()).unwrap_or_default()
}

/// A columnar store that accepts batches keyed by block range.
#[async_trait]
pub trait Sink: Send + Sync {
    fn describe(&self) -> String;

    /// Creates every registered table if missing.
    async fn ensure_tables(&self) -> Result<(), SinkError>;

    /// Stores `rows` as the content of `table` for `range`. Replaying a
    /// batch is harmless; on key collision the latest write wins.
    async fn insert_batch(&self, table: &str, range: BlockRange, rows: &[Row])
    -> Result<u64, SinkError>;

    /// Collapses duplicate-key versions.
    async fn optimize(&self, table: &str) -> Result<(), SinkError>;

    /// `None` means nothing has been loaded for the group.
    async fn checkpoint_read(&self, group: &str) -> Result<Option<Checkpoint>, SinkError>;

    /// Moves the checkpoint forward; moving it back is a no-op.
    async fn checkpoint_advance(&self, group: &str, block: u64) -> Result<Checkpoint, SinkError>;

    async fn count(&self, table: &str, range: Option<BlockRange>) -> Result<TableCount, SinkError>;

    /// Block ranges for which a batch of `table` has been committed.
    async fn coverage(&self, table: &str) -> Result<Vec<BlockRange>, SinkError>;

    /// Deduplicated rows ordered by primary key.
    async fn scan(&self, table: &str, range: Option<BlockRange>) -> Result<Vec<Row>, SinkError>;
}
