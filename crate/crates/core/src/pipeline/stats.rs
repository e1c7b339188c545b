//! Aggregate statistics over loaded tables. Each stat groups one column,
//! ranks by the aggregate (descending, ties by key) and keeps the top N.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use chrono::DateTime;
use serde::Serialize;
use thiserror::Error;

use crate::chain::{Address, Hash32, lookup_signature};
use crate::contracts::ContractKind;
use crate::schema::{BLOCKS, EVENTS, INTERNALS, Row, TRANSACTIONS, Value, schema_for};
use crate::sink::{BlockRange, Sink, SinkError};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("unknown stat {0:?}")]
    UnknownStat(String),
    #[error("no blocks loaded in {0}")]
    EmptyRange(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Sink(#[from] SinkError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stat {
    WitnessDistribution,
    TxCountByType,
    DailyTxVolume,
    TopInternalSenders,
    TopInternalReceivers,
    Trc10ByTxCount,
    Trc10ByVolume,
    DelegateBandwidthTop,
    DelegateEnergyTop,
    TriggerAddressDistribution,
    EventAddressDistribution,
    EventSignatureCounts,
}

impl Stat {
    pub const ALL: [Stat; 12] = [
        Stat::WitnessDistribution,
        Stat::TxCountByType,
        Stat::DailyTxVolume,
        Stat::TopInternalSenders,
        Stat::TopInternalReceivers,
        Stat::Trc10ByTxCount,
        Stat::Trc10ByVolume,
        Stat::DelegateBandwidthTop,
        Stat::DelegateEnergyTop,
        Stat::TriggerAddressDistribution,
        Stat::EventAddressDistribution,
        Stat::EventSignatureCounts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stat::WitnessDistribution => "witness_distribution",
            Stat::TxCountByType => "tx_count_by_type",
            Stat::DailyTxVolume => "daily_tx_volume",
            Stat::TopInternalSenders => "top_internal_senders",
            Stat::TopInternalReceivers => "top_internal_receivers",
            Stat::Trc10ByTxCount => "trc10_by_tx_count",
            Stat::Trc10ByVolume => "trc10_by_volume",
            Stat::DelegateBandwidthTop => "delegate_bandwidth_top",
            Stat::DelegateEnergyTop => "delegate_energy_top",
            Stat::TriggerAddressDistribution => "trigger_address_distribution",
            Stat::EventAddressDistribution => "event_address_distribution",
            Stat::EventSignatureCounts => "event_signature_counts",
        }
    }

    /// Table the grouped rows come from.
    pub fn source_table(self) -> &'static str {
        match self {
            Stat::WitnessDistribution => BLOCKS,
            Stat::TxCountByType | Stat::DailyTxVolume => TRANSACTIONS,
            Stat::TopInternalSenders | Stat::TopInternalReceivers => INTERNALS,
            Stat::Trc10ByTxCount | Stat::Trc10ByVolume => ContractKind::TransferAsset.table_name(),
            Stat::DelegateBandwidthTop | Stat::DelegateEnergyTop => {
                ContractKind::DelegateResource.table_name()
            }
            Stat::TriggerAddressDistribution => ContractKind::TriggerSmartContract.table_name(),
            Stat::EventAddressDistribution | Stat::EventSignatureCounts => EVENTS,
        }
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stat {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stat::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| StatsError::UnknownStat(s.to_owned()))
    }
}

/// Ranking for the delegation stats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RankBy {
    #[default]
    Count,
    Amount,
}

impl FromStr for RankBy {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "count" => Ok(RankBy::Count),
            "amount" => Ok(RankBy::Amount),
            other => Err(StatsError::Param(format!("rank must be count or amount, got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StatParams {
    pub top: usize,
    /// Contract filter for the event stats; hex or base58.
    pub address: Option<String>,
    pub by: RankBy,
    pub range: Option<BlockRange>,
}

impl Default for StatParams {
    fn default() -> Self {
        StatParams {
            top: 50,
            address: None,
            by: RankBy::Count,
            range: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatTable {
    pub stat: String,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

impl StatTable {
    pub fn to_csv(&self) -> String {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            out.write_record(row.iter().map(Value::to_cell))
                .expect("in-memory write");
        }
        String::from_utf8(out.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    /// One JSON object per row.
    pub fn to_json(&self) -> serde_json::Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.clone(), serde_json::to_value(v).expect("value serializes")))
                    .collect::<serde_json::Map<_, _>>();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::Value::Array(rows)
    }

    /// Sum of the last (aggregate) column.
    pub fn total(&self) -> u64 {
        self.rows
            .iter()
            .filter_map(|r| r.last().and_then(Value::as_u64))
            .sum()
    }

    /// Aggregate for one key, if present.
    pub fn get(&self, key: &str) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.first().and_then(Value::as_str) == Some(key))
            .and_then(|r| r.last().and_then(Value::as_u64))
    }
}

struct Scanned {
    rows: Vec<Row>,
    table: &'static str,
}

impl Scanned {
    fn col(&self, name: &str) -> usize {
        schema_for(self.table)
            .ok()
            .and_then(|s| s.column_index(name))
            .unwrap_or_else(|| panic!("{}.{name} is registered", self.table))
    }
}

async fn scan(sink: &dyn Sink, table: &'static str, range: Option<BlockRange>) -> Result<Scanned, StatsError> {
    Ok(Scanned {
        rows: sink.scan(table, range).await?,
        table,
    })
}

fn text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        other => other.to_cell(),
    }
}

/// Ranks `(key, value)` descending by value, then ascending by key.
fn ranked(groups: HashMap<String, u64>, top: usize) -> Vec<(String, u64)> {
    let mut v: Vec<(String, u64)> = groups.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v.truncate(top);
    v
}

fn count_by(scanned: &Scanned, column: &str, keep: impl Fn(&Row) -> bool) -> HashMap<String, u64> {
    let i = scanned.col(column);
    let mut groups = HashMap::new();
    for row in scanned.rows.iter().filter(|r| keep(r)) {
        *groups.entry(text(&row[i])).or_default() += 1;
    }
    groups
}

fn sum_by(scanned: &Scanned, key: &str, amount: &str, keep: impl Fn(&Row) -> bool) -> HashMap<String, u64> {
    let (k, a) = (scanned.col(key), scanned.col(amount));
    let mut groups = HashMap::new();
    for row in scanned.rows.iter().filter(|r| keep(r)) {
        let v = row[a].as_u64().unwrap_or(0);
        let e: &mut u64 = groups.entry(text(&row[k])).or_default();
        *e = e.saturating_add(v);
    }
    groups
}

fn table(stat: Stat, columns: [&str; 2], rows: Vec<(String, u64)>) -> StatTable {
    StatTable {
        stat: stat.name().to_owned(),
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows: rows
            .into_iter()
            .map(|(k, v)| vec![Value::Text(k), Value::UInt(v)])
            .collect(),
    }
}

fn normalize_address(text: &str) -> Result<String, StatsError> {
    let parsed = if text.starts_with('T') {
        Address::from_base58(text)
    } else {
        Address::from_hex(text.trim_start_matches("0x"))
    };
    parsed
        .map(|a| a.to_hex())
        .map_err(|e| StatsError::Param(format!("address {text:?}: {e}")))
}

fn utc_day(timestamp_ms: u64) -> String {
    i64::try_from(timestamp_ms)
        .ok()
        .and_then(DateTime::from_timestamp_millis)
        .map(|t| t.format("%Y-%m-%d").to_string())
        .unwrap_or_else(|| "invalid".into())
}

async fn ensure_loaded(sink: &dyn Sink, range: Option<BlockRange>) -> Result<(), StatsError> {
    let covered = sink.coverage(BLOCKS).await?;
    let any = match range {
        Some(r) => covered.iter().any(|c| c.overlaps(&r)),
        None => !covered.is_empty(),
    };
    if any {
        Ok(())
    } else {
        Err(StatsError::EmptyRange(
            range.map_or_else(|| "the sink".to_owned(), |r| r.to_string()),
        ))
    }
}

/// Evaluates one stat against the current sink state.
pub async fn compute_stat(sink: &dyn Sink, stat: Stat, params: &StatParams) -> Result<StatTable, StatsError> {
    ensure_loaded(sink, params.range).await?;
    let top = params.top;
    let range = params.range;
    let all = |_: &Row| true;
    let src = scan(sink, stat.source_table(), range).await?;
    let out = match stat {
        Stat::WitnessDistribution => {
            table(stat, ["witnessAddress", "blocks"], ranked(count_by(&src, "witnessAddress", all), top))
        }
        Stat::TxCountByType => {
            table(stat, ["contractType", "transactions"], ranked(count_by(&src, "contractType", all), top))
        }
        Stat::DailyTxVolume => {
            let blocks = scan(sink, BLOCKS, range).await?;
            let (bn, ts) = (blocks.col("blockNum"), blocks.col("timestamp"));
            let day_of: HashMap<u64, String> = blocks
                .rows
                .iter()
                .filter_map(|r| Some((r[bn].as_u64()?, utc_day(r[ts].as_u64()?))))
                .collect();
            let tx_bn = src.col("blockNum");
            let mut days: BTreeMap<String, u64> = BTreeMap::new();
            for row in &src.rows {
                let day = row[tx_bn]
                    .as_u64()
                    .and_then(|b| day_of.get(&b).cloned())
                    .unwrap_or_else(|| "unknown".into());
                *days.entry(day).or_default() += 1;
            }
            // A time series: every bucket, in calendar order.
            table(stat, ["day", "transactions"], days.into_iter().collect())
        }
        Stat::TopInternalSenders => {
            table(stat, ["callerAddress", "internals"], ranked(count_by(&src, "callerAddress", all), top))
        }
        Stat::TopInternalReceivers => table(
            stat,
            ["transferToAddress", "internals"],
            ranked(count_by(&src, "transferToAddress", all), top),
        ),
        Stat::Trc10ByTxCount => {
            table(stat, ["assetName", "transactions"], ranked(count_by(&src, "assetName", all), top))
        }
        Stat::Trc10ByVolume => {
            table(stat, ["assetName", "volume"], ranked(sum_by(&src, "assetName", "amount", all), top))
        }
        Stat::DelegateBandwidthTop | Stat::DelegateEnergyTop => {
            let wanted = if stat == Stat::DelegateBandwidthTop { "BANDWIDTH" } else { "ENERGY" };
            let r = src.col("resource");
            let keep = |row: &Row| row[r].as_str() == Some(wanted);
            match params.by {
                RankBy::Count => table(
                    stat,
                    ["ownerAddress", "delegations"],
                    ranked(count_by(&src, "ownerAddress", keep), top),
                ),
                RankBy::Amount => table(
                    stat,
                    ["ownerAddress", "amount"],
                    ranked(sum_by(&src, "ownerAddress", "balance", keep), top),
                ),
            }
        }
        Stat::TriggerAddressDistribution => table(
            stat,
            ["contractAddress", "triggers"],
            ranked(count_by(&src, "contractAddress", all), top),
        ),
        Stat::EventAddressDistribution => {
            table(stat, ["address", "events"], ranked(count_by(&src, "address", all), top))
        }
        Stat::EventSignatureCounts => {
            let filter = params.address.as_deref().map(normalize_address).transpose()?;
            let (addr, topic0) = (src.col("address"), src.col("topic0"));
            let mut groups: HashMap<String, u64> = HashMap::new();
            for row in &src.rows {
                if filter.as_deref().is_some_and(|f| row[addr].as_str() != Some(f)) {
                    continue;
                }
                let key = match row[topic0].as_str() {
                    None => "(anonymous)".to_owned(),
                    Some(hex) => Hash32::from_hex(hex)
                        .ok()
                        .and_then(|h| lookup_signature(&h))
                        .map_or_else(|| hex.to_owned(), |s| s.name().to_owned()),
                };
                *groups.entry(key).or_default() += 1;
            }
            table(stat, ["signature", "events"], ranked(groups, top))
        }
    };
    Ok(out)
}
