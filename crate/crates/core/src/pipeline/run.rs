use std::collections::BTreeMap;
use std::future::Future;
use std::time::{Duration, Instant};

use futures::StreamExt;
use tokio::sync::mpsc;

use super::{KillPoint, PipelineError, Quarantined, RunConfig, RunReport};
use crate::node::{BlockPair, FixtureWriter, NodeClient, RetryPolicy, SourceError};
use crate::schema::{BLOCKS, EVENTS, INTERNALS, Row, TRANSACTIONS, table_names};
use crate::sink::{BlockRange, FrontierTracker, Sink, SinkError};
use crate::transform::transform_block;

/// Rows of every table for one block range.
#[derive(Debug, Default)]
pub(crate) struct Batch {
    pub range: Option<BlockRange>,
    pub tables: BTreeMap<String, Vec<Row>>,
    pub fallback: u64,
    pub truncated: u64,
    pub quarantined: Vec<Quarantined>,
}

pub(crate) fn transform_chunk(range: BlockRange, pairs: &[BlockPair]) -> Batch {
    let mut batch = Batch {
        range: Some(range),
        tables: table_names().into_iter().map(|t| (t, Vec::new())).collect(),
        ..Batch::default()
    };
    for pair in pairs {
        let tables = match transform_block(&pair.block, &pair.info) {
            Ok(t) => t,
            Err(err) => {
                tracing::warn!(block = pair.height(), error = %err, "block quarantined");
                batch.quarantined.push(Quarantined {
                    block_num: pair.height(),
                    reason: err.to_string(),
                });
                continue;
            }
        };
        let mut push = |table: &str, row: Row| {
            batch
                .tables
                .get_mut(table)
                .expect("registered table")
                .push(row);
        };
        if let Some(block) = &tables.block {
            push(BLOCKS, block.to_values());
        }
        for tx in &tables.transactions {
            push(TRANSACTIONS, tx.to_values());
        }
        for log in &tables.events {
            push(EVENTS, log.to_values());
        }
        for itx in &tables.internals {
            push(INTERNALS, itx.to_values());
        }
        for param in &tables.params {
            push(param.table_name(), param.to_values());
        }
        batch.fallback += tables.fallback_count();
        batch.truncated += tables.truncated_topics;
    }
    batch
}

async fn insert_with_retry(
    sink: &dyn Sink,
    table: &str,
    range: BlockRange,
    rows: &[Row],
    policy: RetryPolicy,
) -> Result<u64, SinkError> {
    let mut attempt = 1;
    loop {
        match sink.insert_batch(table, range, rows).await {
            Err(err) if err.is_retryable() && attempt < policy.max_attempts => {
                tracing::warn!(table, %range, attempt, error = %err, "retrying batch insert");
                tokio::time::sleep(policy.delay(attempt)).await;
                attempt += 1;
            }
            other => return other,
        }
    }
}

/// Loads every table of the batch. The checkpoint moves only after this
/// returns, so a failure here never makes a partial batch count as done.
async fn commit(sink: &dyn Sink, batch: &Batch, policy: RetryPolicy) -> Result<(), SinkError> {
    let range = batch.range.expect("batch has a range");
    for (table, rows) in &batch.tables {
        insert_with_retry(sink, table, range, rows, policy).await?;
    }
    Ok(())
}

/// Loads `[from, to]` from `client` into `sink`, resuming after the table
/// group's checkpoint unless `restart` is set.
pub async fn run(
    config: &RunConfig,
    client: &NodeClient,
    sink: &dyn Sink,
) -> Result<RunReport, PipelineError> {
    config.validate()?;
    let started = Instant::now();
    let policy = RetryPolicy {
        max_attempts: config.retry_budget,
        ..client.retry_policy()
    };
    let client = client.clone().with_retry(policy);
    sink.ensure_tables().await?;

    let mut report = RunReport::default();
    let checkpoint = if config.restart {
        None
    } else {
        sink.checkpoint_read(&config.table_group).await?
    };
    report.checkpoint = checkpoint.as_ref().map(|c| c.last_loaded_block);
    let start = match &checkpoint {
        Some(cp) if cp.last_loaded_block >= config.from => {
            report.resumed_from = Some(cp.last_loaded_block);
            cp.last_loaded_block.saturating_add(1)
        }
        _ => config.from,
    };
    if start > config.to {
        tracing::info!(checkpoint = ?report.checkpoint, "range already loaded");
        report.duration_ms = started.elapsed().as_millis() as u64;
        return Ok(report);
    }

    let mut recorder = config
        .record_fixtures_to
        .as_ref()
        .map(FixtureWriter::create)
        .transpose()?;

    let (tx, mut rx) = mpsc::channel(config.window.max(1));
    let stream = client.stream_range(start, config.to, config.window);
    let producer = tokio::spawn(async move {
        let mut stream = Box::pin(stream);
        while let Some(item) = stream.next().await {
            let failed = item.is_err();
            if tx.send(item).await.is_err() || failed {
                break;
            }
        }
    });
    let _abort = AbortOnDrop(producer);

    let mut frontier = FrontierTracker::new(start);
    for chunk in BlockRange::new(start, config.to).chunks(config.batch_blocks) {
        let mut pairs = Vec::with_capacity(chunk.len() as usize);
        while (pairs.len() as u64) < chunk.len() {
            match rx.recv().await {
                Some(Ok(pair)) => {
                    if let Some(rec) = recorder.as_mut() {
                        rec.write(&pair)?;
                    }
                    pairs.push(pair);
                }
                Some(Err(err)) => return Err(err.into()),
                None => return Err(SourceError::SourceClosed.into()),
            }
        }
        let batch = tokio::task::spawn_blocking(move || transform_chunk(chunk, &pairs))
            .await
            .map_err(|e| PipelineError::Config(format!("transform worker failed: {e}")))?;
        commit(sink, &batch, policy).await?;

        report.commits += 1;
        report.blocks_processed += chunk.len();
        report.fallback_decode_count += batch.fallback;
        report.truncated_topic_count += batch.truncated;
        report.quarantined.extend(batch.quarantined);
        for (table, rows) in &batch.tables {
            *report.rows_per_table.entry(table.clone()).or_default() += rows.len() as u64;
        }
        tracing::info!(range = %chunk, commits = report.commits, "batch committed");

        if config.kill == Some(KillPoint::BeforeCheckpoint(report.commits)) {
            return Err(PipelineError::Killed {
                commits: report.commits,
            });
        }
        if let Some(f) = frontier.commit(chunk) {
            let cp = sink.checkpoint_advance(&config.table_group, f).await?;
            report.checkpoint = Some(cp.last_loaded_block);
        }
        if config.kill == Some(KillPoint::AfterCommits(report.commits)) {
            return Err(PipelineError::Killed {
                commits: report.commits,
            });
        }
    }

    if let Some(rec) = recorder {
        rec.finish(&client.describe())?;
    }
    if config.optimize {
        for table in table_names() {
            sink.optimize(&table).await?;
        }
    }
    report.duration_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

struct AbortOnDrop(tokio::task::JoinHandle<()>);

impl Drop for AbortOnDrop {
    fn drop(&mut self) {
        self.0.abort();
    }
}

#[derive(Debug, Clone)]
pub struct FollowConfig {
    /// Blocks to stay behind the head.
    pub lag: u64,
    pub poll: Duration,
    /// Stop once the checkpoint reaches this height.
    pub stop_at: Option<u64>,
}

impl Default for FollowConfig {
    fn default() -> Self {
        FollowConfig {
            lag: 20,
            poll: Duration::from_secs(3),
            stop_at: None,
        }
    }
}

fn merge_report(total: &mut RunReport, part: RunReport) {
    total.blocks_processed += part.blocks_processed;
    total.fallback_decode_count += part.fallback_decode_count;
    total.truncated_topic_count += part.truncated_topic_count;
    total.commits += part.commits;
    total.quarantined.extend(part.quarantined);
    for (table, n) in part.rows_per_table {
        *total.rows_per_table.entry(table).or_default() += n;
    }
    if total.resumed_from.is_none() {
        total.resumed_from = part.resumed_from;
    }
    if part.checkpoint.is_some() {
        total.checkpoint = part.checkpoint;
    }
}

/// Keeps loading up to `head - lag` until `shutdown` resolves or the
/// checkpoint reaches `stop_at`. Starts at `base.from` when nothing is
/// loaded yet.
pub async fn follow(
    base: &RunConfig,
    follow: &FollowConfig,
    client: &NodeClient,
    sink: &dyn Sink,
    shutdown: impl Future<Output = ()>,
) -> Result<RunReport, PipelineError> {
    let started = Instant::now();
    let mut total = RunReport::default();
    let mut shutdown = std::pin::pin!(shutdown);
    loop {
        let head = client.get_head().await?;
        let mut target = head.checked_sub(follow.lag);
        if let (Some(t), Some(stop)) = (target, follow.stop_at) {
            target = Some(t.min(stop));
        }
        if let Some(target) = target.filter(|&t| t >= base.from) {
            let config = RunConfig {
                to: target,
                optimize: false,
                ..base.clone()
            };
            merge_report(&mut total, run(&config, client, sink).await?);
        }
        let done = match (follow.stop_at, total.checkpoint) {
            (Some(stop), Some(cp)) => cp >= stop,
            _ => false,
        };
        if done {
            break;
        }
        tokio::select! {
            () = tokio::time::sleep(follow.poll) => {}
            () = &mut shutdown => break,
        }
    }
    if base.optimize {
        for table in table_names() {
            sink.optimize(&table).await?;
        }
    }
    total.duration_ms = started.elapsed().as_millis() as u64;
    Ok(total)
}
