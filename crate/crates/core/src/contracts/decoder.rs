use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use super::params::{Fields, visit_kind};
use super::wire::scan_fields;
use super::{ContractKind, UNKNOWN_TABLE, classify};
use crate::chain::Hash32;
use crate::schema::{ColumnDef, ColumnType, Row, TableSchema, Value};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("malformed {type_name} parameter: {reason}")]
    MalformedParameter { type_name: String, reason: String },
    #[error("parameter type {type_url:?} does not match contract type {type_name}")]
    TypeMismatch { type_name: String, type_url: String },
}

/// Identifies the transaction a parameter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TxContext {
    pub transaction_hash: Hash32,
    pub block_num: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamBody {
    Decoded {
        kind: ContractKind,
        /// Values in the order of the kind's type-specific columns.
        fields: Vec<Value>,
        /// Encoded top-level fields the typed decode did not consume.
        overflow_hex: String,
    },
    Fallback {
        type_name: String,
        type_url: String,
        raw_parameter_hex: String,
        error: String,
    },
}

/// A flattened contract parameter, routed to one parameter table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractParamRow {
    pub transaction_hash: Hash32,
    pub block_num: u64,
    pub body: ParamBody,
}

impl ContractParamRow {
    pub fn table_name(&self) -> &'static str {
        match &self.body {
            ParamBody::Decoded { kind, .. } => kind.table_name(),
            ParamBody::Fallback { .. } => UNKNOWN_TABLE,
        }
    }

    pub fn is_fallback(&self) -> bool {
        matches!(self.body, ParamBody::Fallback { .. })
    }

    /// Looks up a type-specific field by column name.
    pub fn field(&self, name: &str) -> Option<&Value> {
        match &self.body {
            ParamBody::Decoded { kind, fields, .. } => shape(*kind)
                .columns
                .iter()
                .position(|c| c.name == name)
                .map(|i| &fields[i]),
            ParamBody::Fallback { .. } => None,
        }
    }

    pub fn to_values(&self) -> Row {
        let mut row = vec![
            Value::UInt(self.block_num),
            Value::Text(self.transaction_hash.to_hex()),
        ];
        match &self.body {
            ParamBody::Decoded {
                fields,
                overflow_hex,
                ..
            } => {
                row.extend(fields.iter().cloned());
                row.push(Value::text(overflow_hex));
            }
            ParamBody::Fallback {
                type_name,
                type_url,
                raw_parameter_hex,
                error,
            } => {
                row.push(Value::text(type_name));
                row.push(Value::text(type_url));
                row.push(Value::text(raw_parameter_hex));
                row.push(Value::text(error));
            }
        }
        row
    }
}

pub(crate) struct KindShape {
    pub(crate) columns: Vec<ColumnDef>,
    pub(crate) tags: Vec<u32>,
}

fn shape(kind: ContractKind) -> &'static KindShape {
    static SHAPES: OnceLock<Vec<KindShape>> = OnceLock::new();
    let shapes = SHAPES.get_or_init(|| {
        ContractKind::ALL
            .iter()
            .map(|&k| {
                let mut f = Fields::schema();
                visit_kind(k, &[], &mut f).expect("schema mode does not decode");
                KindShape {
                    columns: f.columns,
                    tags: f.tags,
                }
            })
            .collect()
    });
    let index = ContractKind::ALL
        .iter()
        .position(|&k| k == kind)
        .expect("kind listed in ALL");
    &shapes[index]
}

fn common_columns() -> Vec<ColumnDef> {
    vec![
        ColumnDef::new("blockNum", ColumnType::UInt64),
        ColumnDef::new("transactionHash", ColumnType::Hash),
    ]
}

impl ContractKind {
    pub fn schema(self) -> TableSchema {
        let mut columns = common_columns();
        columns.extend(shape(self).columns.iter().cloned());
        columns.push(ColumnDef::new("overflowHex", ColumnType::Hex));
        TableSchema::new(self.table_name(), columns, &["blockNum", "transactionHash"])
    }

    /// Names of the type-specific columns, in order.
    pub fn field_names(self) -> Vec<&'static str> {
        shape(self).columns.iter().map(|c| c.name.as_str()).collect()
    }
}

pub fn unknown_schema() -> TableSchema {
    let mut columns = common_columns();
    columns.extend([
        ColumnDef::new("contractType", ColumnType::Text),
        ColumnDef::new("typeUrl", ColumnType::Text),
        ColumnDef::new("rawParameterHex", ColumnType::Hex),
        ColumnDef::new("error", ColumnType::Text),
    ]);
    TableSchema::new(UNKNOWN_TABLE, columns, &["blockNum", "transactionHash"])
}

fn type_url_matches(type_name: &str, type_url: &str) -> bool {
    if type_url.is_empty() {
        return true;
    }
    let message = type_url.rsplit('/').next().unwrap_or(type_url);
    let message = message.rsplit('.').next().unwrap_or(message);
    message == type_name
}

/// Decodes one contract parameter into its typed row.
///
/// `type_url` is the `Any.type_url` carried next to the bytes; an empty
/// string skips the cross-check. Unclassified type names produce a
/// fallback row without error.
pub fn decode_params(
    type_name: &str,
    type_url: &str,
    parameter: &[u8],
    ctx: TxContext,
) -> Result<ContractParamRow, DecodeError> {
    let fallback = |error: String| ContractParamRow {
        transaction_hash: ctx.transaction_hash,
        block_num: ctx.block_num,
        body: ParamBody::Fallback {
            type_name: type_name.to_owned(),
            type_url: type_url.to_owned(),
            raw_parameter_hex: hex::encode(parameter),
            error,
        },
    };
    let Some(kind) = classify(type_name).kind else {
        return Ok(fallback(String::new()));
    };
    if !type_url_matches(type_name, type_url) {
        return Err(DecodeError::TypeMismatch {
            type_name: type_name.to_owned(),
            type_url: type_url.to_owned(),
        });
    }
    let malformed = |reason: String| DecodeError::MalformedParameter {
        type_name: type_name.to_owned(),
        reason,
    };

    let top_level = scan_fields(parameter).ok_or_else(|| malformed("invalid wire format".into()))?;
    let mut fields = Fields::values();
    visit_kind(kind, parameter, &mut fields).map_err(|e| malformed(e.to_string()))?;
    if let Some(err) = fields.error {
        return Err(malformed(err.to_string()));
    }

    let known = &shape(kind).tags;
    let overflow: Vec<u8> = top_level
        .iter()
        .filter(|f| !known.contains(&f.number))
        .flat_map(|f| f.raw.iter().copied())
        .collect();

    Ok(ContractParamRow {
        transaction_hash: ctx.transaction_hash,
        block_num: ctx.block_num,
        body: ParamBody::Decoded {
            kind,
            fields: fields.values,
            overflow_hex: hex::encode(overflow),
        },
    })
}

/// Like [`decode_params`], but never fails: errors become a fallback row
/// plus the diagnostic.
pub fn decode_or_fallback(
    type_name: &str,
    type_url: &str,
    parameter: &[u8],
    ctx: TxContext,
) -> (ContractParamRow, Option<DecodeError>) {
    match decode_params(type_name, type_url, parameter, ctx) {
        Ok(row) => (row, None),
        Err(err) => {
            tracing::warn!(
                block = ctx.block_num,
                tx = %ctx.transaction_hash,
                error = %err,
                "contract parameter routed to fallback table"
            );
            let row = ContractParamRow {
                transaction_hash: ctx.transaction_hash,
                block_num: ctx.block_num,
                body: ParamBody::Fallback {
                    type_name: type_name.to_owned(),
                    type_url: type_url.to_owned(),
                    raw_parameter_hex: hex::encode(parameter),
                    error: err.to_string(),
                },
            };
            (row, Some(err))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageEntry {
    pub type_name: String,
    pub decoded: u64,
    pub fallback: u64,
}

/// Per-type decode accounting over a corpus.
#[derive(Debug, Clone, Default)]
pub struct Coverage {
    counts: BTreeMap<String, (u64, u64)>,
}

impl Coverage {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, type_name: &str, row: &ContractParamRow) {
        let entry = self.counts.entry(type_name.to_owned()).or_default();
        if row.is_fallback() {
            entry.1 += 1;
        } else {
            entry.0 += 1;
        }
    }

    pub fn merge(&mut self, other: &Coverage) {
        for (name, (d, f)) in &other.counts {
            let entry = self.counts.entry(name.clone()).or_default();
            entry.0 += d;
            entry.1 += f;
        }
    }

    pub fn fallback_total(&self) -> u64 {
        self.counts.values().map(|(_, f)| f).sum()
    }

    /// Observed types in classification order, unclassified names last.
    pub fn report(&self) -> Vec<CoverageEntry> {
        let rank = |name: &str| {
            ContractKind::from_type_name(name)
                .and_then(|k| ContractKind::ALL.iter().position(|&o| o == k))
                .unwrap_or(usize::MAX)
        };
        let mut entries: Vec<CoverageEntry> = self
            .counts
            .iter()
            .map(|(name, (decoded, fallback))| CoverageEntry {
                type_name: name.clone(),
                decoded: *decoded,
                fallback: *fallback,
            })
            .collect();
        entries.sort_by(|a, b| {
            rank(&a.type_name)
                .cmp(&rank(&b.type_name))
                .then_with(|| a.type_name.cmp(&b.type_name))
        });
        entries
    }
}

/// Decodes a corpus of `(type_name, type_url, parameter)` triples and
/// returns the coverage report.
pub fn coverage_report<'a>(
    corpus: impl IntoIterator<Item = (&'a str, &'a str, &'a [u8])>,
) -> Vec<CoverageEntry> {
    let mut coverage = Coverage::new();
    let ctx = TxContext {
        transaction_hash: Hash32::ZERO,
        block_num: 0,
    };
    for (type_name, type_url, bytes) in corpus {
        let (row, _) = decode_or_fallback(type_name, type_url, bytes, ctx);
        coverage.record(type_name, &row);
    }
    coverage.report()
}
