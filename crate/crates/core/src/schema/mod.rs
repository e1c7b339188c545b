//! Table schemas, the schema registry and DDL generation.

mod ddl;
mod value;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ddl::{Dialect, ddl_for};
pub use value::{Row, Value};

use crate::contracts::{ContractKind, UNKNOWN_TABLE};

pub const BLOCKS: &str = "blocks";
pub const TRANSACTIONS: &str = "transactions";
pub const EVENTS: &str = "events";
pub const INTERNALS: &str = "internals";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error("unknown dialect {0:?}")]
    UnknownDialect(String),
    #[error("unknown column type {0:?}")]
    UnknownType(String),
    #[error("invalid schema {table}: {reason}")]
    Invalid { table: String, reason: String },
}

/// Semantic type of a column. Hashes, addresses and hex blobs are stored
/// as lowercase hex text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ColumnType {
    UInt64,
    UInt32,
    Int64,
    Int32,
    /// Signed amount in the token's smallest unit.
    Amount,
    /// Milliseconds since the Unix epoch.
    TimestampMs,
    Bool,
    Text,
    Hex,
    Hash,
    Address,
    Array(Box<ColumnType>),
}

impl ColumnType {
    pub fn array(of: ColumnType) -> Self {
        ColumnType::Array(Box::new(of))
    }

    /// Whether `value` is a legal non-null value of this type.
    pub fn accepts(&self, value: &Value) -> bool {
        match (self, value) {
            (ColumnType::UInt64 | ColumnType::TimestampMs, Value::UInt(_)) => true,
            (ColumnType::UInt32, Value::UInt(v)) => *v <= u64::from(u32::MAX),
            (ColumnType::Int64 | ColumnType::Amount, Value::Int(_)) => true,
            (ColumnType::Int32, Value::Int(v)) => i32::try_from(*v).is_ok(),
            (ColumnType::Bool, Value::Bool(_)) => true,
            (ColumnType::Text, Value::Text(_)) => true,
            (ColumnType::Hex, Value::Text(s)) => is_lower_hex(s) && s.len() % 2 == 0,
            (ColumnType::Hash, Value::Text(s)) => s.is_empty() || (s.len() == 64 && is_lower_hex(s)),
            (ColumnType::Address, Value::Text(s)) => {
                s.is_empty() || (s.len() == 42 && s.starts_with("41") && is_lower_hex(s))
            }
            (ColumnType::Array(inner), Value::Array(items)) => items.iter().all(|v| inner.accepts(v)),
            _ => false,
        }
    }

    /// The zero/empty default used for absent non-nullable fields.
    pub fn default_value(&self) -> Value {
        match self {
            ColumnType::UInt64 | ColumnType::UInt32 | ColumnType::TimestampMs => Value::UInt(0),
            ColumnType::Int64 | ColumnType::Int32 | ColumnType::Amount => Value::Int(0),
            ColumnType::Bool => Value::Bool(false),
            ColumnType::Text | ColumnType::Hex | ColumnType::Hash | ColumnType::Address => {
                Value::Text(String::new())
            }
            ColumnType::Array(_) => Value::Array(Vec::new()),
        }
    }
}

fn is_lower_hex(s: &str) -> bool {
    s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'))
}

impl fmt::Display for ColumnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnType::UInt64 => f.write_str("uint64"),
            ColumnType::UInt32 => f.write_str("uint32"),
            ColumnType::Int64 => f.write_str("int64"),
            ColumnType::Int32 => f.write_str("int32"),
            ColumnType::Amount => f.write_str("amount"),
            ColumnType::TimestampMs => f.write_str("timestamp_ms"),
            ColumnType::Bool => f.write_str("bool"),
            ColumnType::Text => f.write_str("text"),
            ColumnType::Hex => f.write_str("hex"),
            ColumnType::Hash => f.write_str("hash"),
            ColumnType::Address => f.write_str("address"),
            ColumnType::Array(inner) => write!(f, "array<{inner}>"),
        }
    }
}

impl FromStr for ColumnType {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(inner) = s.strip_prefix("array<").and_then(|r| r.strip_suffix('>')) {
            return Ok(ColumnType::array(inner.parse()?));
        }
        Ok(match s {
            "uint64" => ColumnType::UInt64,
            "uint32" => ColumnType::UInt32,
            "int64" => ColumnType::Int64,
            "int32" => ColumnType::Int32,
            "amount" => ColumnType::Amount,
            "timestamp_ms" => ColumnType::TimestampMs,
            "bool" => ColumnType::Bool,
            "text" => ColumnType::Text,
            "hex" => ColumnType::Hex,
            "hash" => ColumnType::Hash,
            "address" => ColumnType::Address,
            other => return Err(SchemaError::UnknownType(other.to_owned())),
        })
    }
}

impl Serialize for ColumnType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ColumnType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnDef {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: ColumnType,
    pub nullable: bool,
}

impl ColumnDef {
    pub fn new(name: impl Into<String>, ty: ColumnType) -> Self {
        Self {
            name: name.into(),
            ty,
            nullable: false,
        }
    }

    pub fn nullable(name: impl Into<String>, ty: ColumnType) -> Self {
        Self {
            name: name.into(),
            ty,
            nullable: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TableSchema {
    pub name: String,
    pub columns: Vec<ColumnDef>,
    pub primary_key: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub engine_hints: BTreeMap<String, String>,
}

impl TableSchema {
    pub fn new(name: impl Into<String>, columns: Vec<ColumnDef>, primary_key: &[&str]) -> Self {
        let schema = Self {
            name: name.into(),
            columns,
            primary_key: primary_key.iter().map(|s| (*s).to_owned()).collect(),
            engine_hints: BTreeMap::new(),
        };
        debug_assert_eq!(schema.validate(), Ok(()));
        schema
    }

    pub fn with_hint(mut self, dialect: &str, hint: impl Into<String>) -> Self {
        self.engine_hints.insert(dialect.to_owned(), hint.into());
        self
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn primary_key_indices(&self) -> Vec<usize> {
        self.primary_key
            .iter()
            .map(|k| self.column_index(k).expect("validated primary key"))
            .collect()
    }

    /// Column names are unique; key columns exist and are non-nullable.
    pub fn validate(&self) -> Result<(), SchemaError> {
        let invalid = |reason: String| SchemaError::Invalid {
            table: self.name.clone(),
            reason,
        };
        for (i, col) in self.columns.iter().enumerate() {
            if self.columns[..i].iter().any(|c| c.name == col.name) {
                return Err(invalid(format!("duplicate column {}", col.name)));
            }
        }
        if self.primary_key.is_empty() {
            return Err(invalid("empty primary key".into()));
        }
        for key in &self.primary_key {
            match self.columns.iter().find(|c| &c.name == key) {
                None => return Err(invalid(format!("key column {key} missing"))),
                Some(c) if c.nullable => {
                    return Err(invalid(format!("key column {key} is nullable")));
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Checks arity, types and nullability of a row against this schema.
    pub fn check_row(&self, row: &Row) -> Result<(), String> {
        if row.len() != self.columns.len() {
            return Err(format!(
                "row has {} values, {} has {} columns",
                row.len(),
                self.name,
                self.columns.len()
            ));
        }
        for (col, value) in self.columns.iter().zip(row) {
            let ok = match value {
                Value::Null => col.nullable,
                v => col.ty.accepts(v),
            };
            if !ok {
                return Err(format!(
                    "column {}.{} ({}) rejects {:?}",
                    self.name, col.name, col.ty, value
                ));
            }
        }
        Ok(())
    }
}

/// Every table the pipeline writes, in a stable order: the four core
/// tables, one table per classified contract type, then the fallback table.
pub fn registry() -> Vec<TableSchema> {
    let mut tables = vec![
        crate::transform::BlockRow::schema(),
        crate::transform::TransactionRow::schema(),
        crate::transform::EventLogRow::schema(),
        crate::transform::InternalTxRow::schema(),
    ];
    tables.extend(ContractKind::ALL.iter().map(|k| k.schema()));
    tables.push(crate::contracts::unknown_schema());
    tables
}

pub fn table_names() -> Vec<String> {
    registry().into_iter().map(|t| t.name).collect()
}

pub fn schema_for(table: &str) -> Result<TableSchema, SchemaError> {
    match table {
        BLOCKS => Ok(crate::transform::BlockRow::schema()),
        TRANSACTIONS => Ok(crate::transform::TransactionRow::schema()),
        EVENTS => Ok(crate::transform::EventLogRow::schema()),
        INTERNALS => Ok(crate::transform::InternalTxRow::schema()),
        UNKNOWN_TABLE => Ok(crate::contracts::unknown_schema()),
        other => ContractKind::from_table_name(other)
            .map(|k| k.schema())
            .ok_or_else(|| SchemaError::UnknownTable(other.to_owned())),
    }
}

/// JSON schema manifest consumed by external tooling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaManifest {
    pub version: u32,
    pub tables: Vec<TableSchema>,
}

impl SchemaManifest {
    pub fn current() -> Self {
        Self {
            version: 1,
            tables: registry(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_valid_and_unique() {
        let tables = registry();
        assert_eq!(tables.len(), 4 + ContractKind::ALL.len() + 1);
        for (i, t) in tables.iter().enumerate() {
            t.validate().unwrap();
            assert!(tables[..i].iter().all(|o| o.name != t.name), "{}", t.name);
        }
    }

    #[test]
    fn column_type_text_round_trip() {
        for ty in [
            ColumnType::Address,
            ColumnType::array(ColumnType::Amount),
            ColumnType::array(ColumnType::array(ColumnType::Text)),
        ] {
            assert_eq!(ty.to_string().parse::<ColumnType>().unwrap(), ty);
        }
    }

    #[test]
    fn schema_for_unknown_table() {
        assert_eq!(
            schema_for("nope"),
            Err(SchemaError::UnknownTable("nope".into()))
        );
    }

    #[test]
    fn nullable_key_rejected() {
        let schema = TableSchema {
            name: "t".into(),
            columns: vec![ColumnDef::nullable("k", ColumnType::UInt64)],
            primary_key: vec!["k".into()],
            engine_hints: BTreeMap::new(),
        };
        assert!(schema.validate().is_err());
    }

    #[test]
    fn address_column_checks_shape() {
        let ty = ColumnType::Address;
        assert!(ty.accepts(&Value::Text(String::new())));
        assert!(ty.accepts(&Value::Text(format!("41{}", "ab".repeat(20)))));
        assert!(!ty.accepts(&Value::Text(format!("41{}", "AB".repeat(20)))));
        assert!(!ty.accepts(&Value::Text("41".into())));
    }
}
