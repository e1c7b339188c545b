//! Extract, transform and load over checkpointed block ranges, plus
//! verification and the aggregate statistics.

mod endpoints;
mod run;
pub mod stats;
mod verify;

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::node::{FixtureError, SourceError};
use crate::sink::SinkError;

pub use endpoints::{SinkSpec, SourceSpec};
pub use run::{FollowConfig, follow, run};
pub use stats::{RankBy, Stat, StatParams, StatTable, StatsError, compute_stat};
pub use verify::{Discrepancy, VerifyReport, verify};

pub const DEFAULT_TABLE_GROUP: &str = "tron";

/// Test hook that stops a run at a chosen point, as a crash would.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KillPoint {
    /// After the k-th batch is committed and checkpointed.
    AfterCommits(u64),
    /// After the k-th batch is committed but before the checkpoint moves.
    BeforeCheckpoint(u64),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub from: u64,
    pub to: u64,
    pub batch_blocks: u64,
    pub window: usize,
    /// Attempts per fetch and per batch insert.
    pub retry_budget: u32,
    pub table_group: String,
    /// Ignore any checkpoint and load the whole range again.
    pub restart: bool,
    /// Collapse duplicates once the range is loaded.
    pub optimize: bool,
    pub record_fixtures_to: Option<PathBuf>,
    pub kill: Option<KillPoint>,
}

impl RunConfig {
    pub fn new(from: u64, to: u64) -> Self {
        RunConfig {
            from,
            to,
            batch_blocks: 1000,
            window: 8,
            retry_budget: 5,
            table_group: DEFAULT_TABLE_GROUP.into(),
            restart: false,
            optimize: true,
            record_fixtures_to: None,
            kill: None,
        }
    }

    pub fn batch(mut self, blocks: u64) -> Self {
        self.batch_blocks = blocks;
        self
    }

    pub fn window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.from > self.to {
            return Err(PipelineError::Config(format!(
                "from ({}) is after to ({})",
                self.from, self.to
            )));
        }
        if self.batch_blocks == 0 {
            return Err(PipelineError::Config("batch size must be at least 1".into()));
        }
        if self.window == 0 {
            return Err(PipelineError::Config("window must be at least 1".into()));
        }
        if self.retry_budget == 0 {
            return Err(PipelineError::Config("retry budget must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Quarantined {
    pub block_num: u64,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub blocks_processed: u64,
    pub rows_per_table: BTreeMap<String, u64>,
    pub fallback_decode_count: u64,
    pub truncated_topic_count: u64,
    pub duration_ms: u64,
    pub resumed_from: Option<u64>,
    pub commits: u64,
    pub checkpoint: Option<u64>,
    pub quarantined: Vec<Quarantined>,
}

impl RunReport {
    pub fn rows(&self, table: &str) -> u64 {
        self.rows_per_table.get(table).copied().unwrap_or(0)
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config error: {0}")]
    Config(String),
    #[error("source error: {0}")]
    Source(#[from] SourceError),
    #[error("fixture error: {0}")]
    Fixture(#[from] FixtureError),
    #[error("sink error: {0}")]
    Sink(#[from] SinkError),
    #[error("run stopped by kill hook after {commits} commits")]
    Killed { commits: u64 },
}

impl PipelineError {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            PipelineError::Source(_) | PipelineError::Fixture(_) => 2,
            PipelineError::Sink(_) | PipelineError::Killed { .. } => 3,
        }
    }
}
