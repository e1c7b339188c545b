use futures::StreamExt;
use serde::Serialize;

use super::run::transform_chunk;
use super::{PipelineError, Quarantined};
use crate::node::NodeClient;
use crate::schema::table_names;
use crate::sink::{BlockRange, Sink};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Discrepancy {
    /// No batch covering these blocks was ever loaded.
    Missing { table: String, range: BlockRange },
    /// Distinct keys in the store differ from a fresh transform of the source.
    #[serde(rename_all = "camelCase")]
    CountMismatch {
        table: String,
        range: BlockRange,
        expected: u64,
        actual: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub range: BlockRange,
    pub blocks_checked: u64,
    pub discrepancies: Vec<Discrepancy>,
    pub quarantined: Vec<Quarantined>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Re-reads `range` from the source and compares per-table row counts with
/// what the sink holds, one `batch`-sized chunk at a time.
pub async fn verify(
    range: BlockRange,
    client: &NodeClient,
    sink: &dyn Sink,
    batch: u64,
    window: usize,
) -> Result<VerifyReport, PipelineError> {
    let mut report = VerifyReport {
        range,
        blocks_checked: 0,
        discrepancies: Vec::new(),
        quarantined: Vec::new(),
    };
    let tables = table_names();
    let mut gaps = Vec::with_capacity(tables.len());
    for table in &tables {
        let covered = sink.coverage(table).await?;
        let missing = range.gaps(&covered);
        for gap in &missing {
            report.discrepancies.push(Discrepancy::Missing {
                table: table.clone(),
                range: *gap,
            });
        }
        gaps.push(missing);
    }

    let mut stream = Box::pin(client.stream_range(range.first, range.last, window.max(1)));
    for chunk in range.chunks(batch) {
        let mut pairs = Vec::with_capacity(chunk.len() as usize);
        for _ in 0..chunk.len() {
            match stream.next().await {
                Some(Ok(pair)) => pairs.push(pair),
                Some(Err(err)) => return Err(err.into()),
                None => return Err(crate::node::SourceError::SourceClosed.into()),
            }
        }
        let expected = tokio::task::spawn_blocking(move || transform_chunk(chunk, &pairs))
            .await
            .map_err(|e| PipelineError::Config(format!("transform worker failed: {e}")))?;
        report.blocks_checked += chunk.len();
        report.quarantined.extend(expected.quarantined.iter().cloned());
        for (table, missing) in tables.iter().zip(&gaps) {
            // Gaps are already reported; counting them again adds noise.
            if missing.iter().any(|g| g.overlaps(&chunk)) {
                continue;
            }
            let want = expected.tables.get(table).map_or(0, |r| r.len() as u64);
            let got = sink.count(table, Some(chunk)).await?.logical;
            if want != got {
                report.discrepancies.push(Discrepancy::CountMismatch {
                    table: table.clone(),
                    range: chunk,
                    expected: want,
                    actual: got,
                });
            }
        }
    }
    Ok(report)
}
