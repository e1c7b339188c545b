use std::fmt::Write as _;
use std::str::FromStr;

use super::{ColumnType, SchemaError, TableSchema, schema_for};

/// SQL dialect for emitted DDL.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    /// Portable SQL with standard types and a declared primary key.
    Generic,
    /// ClickHouse: `ReplacingMergeTree` keyed by the primary key, so rows
    /// sharing a key collapse to the latest insert on `OPTIMIZE ... FINAL`.
    ClickHouse,
}

impl FromStr for Dialect {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "generic" => Ok(Dialect::Generic),
            "clickhouse" | "adapter" => Ok(Dialect::ClickHouse),
            other => Err(SchemaError::UnknownDialect(other.to_owned())),
        }
    }
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Generic => "generic",
            Dialect::ClickHouse => "clickhouse",
        }
    }

    fn column_type(self, ty: &ColumnType) -> String {
        match self {
            Dialect::Generic => match ty {
                ColumnType::UInt64 | ColumnType::TimestampMs => "BIGINT".into(),
                ColumnType::UInt32 => "INTEGER".into(),
                ColumnType::Int64 | ColumnType::Amount => "BIGINT".into(),
                ColumnType::Int32 => "INTEGER".into(),
                ColumnType::Bool => "BOOLEAN".into(),
                ColumnType::Text | ColumnType::Hex => "TEXT".into(),
                ColumnType::Hash => "VARCHAR(64)".into(),
                ColumnType::Address => "VARCHAR(42)".into(),
                ColumnType::Array(inner) => format!("{} ARRAY", self.column_type(inner)),
            },
            Dialect::ClickHouse => match ty {
                ColumnType::UInt64 | ColumnType::TimestampMs => "UInt64".into(),
                ColumnType::UInt32 => "UInt32".into(),
                ColumnType::Int64 | ColumnType::Amount => "Int64".into(),
                ColumnType::Int32 => "Int32".into(),
                ColumnType::Bool => "Bool".into(),
                ColumnType::Text | ColumnType::Hex | ColumnType::Hash | ColumnType::Address => {
                    "String".into()
                }
                ColumnType::Array(inner) => format!("Array({})", self.column_type(inner)),
            },
        }
    }

    pub fn create_table(self, schema: &TableSchema) -> String {
        let mut sql = String::new();
        let quote = |name: &str| match self {
            Dialect::Generic => format!("\"{name}\""),
            Dialect::ClickHouse => format!("`{name}`"),
        };
        writeln!(sql, "CREATE TABLE IF NOT EXISTS {}", quote(&schema.name)).unwrap();
        sql.push_str("(\n");
        let key = schema
            .primary_key
            .iter()
            .map(|k| quote(k))
            .collect::<Vec<_>>()
            .join(", ");
        let mut lines: Vec<String> = schema
            .columns
            .iter()
            .map(|col| {
                let ty = self.column_type(&col.ty);
                match (self, col.nullable) {
                    (Dialect::Generic, false) => format!("    {} {ty} NOT NULL", quote(&col.name)),
                    (Dialect::Generic, true) => format!("    {} {ty}", quote(&col.name)),
                    (Dialect::ClickHouse, false) => format!("    {} {ty}", quote(&col.name)),
                    (Dialect::ClickHouse, true) => {
                        format!("    {} Nullable({ty})", quote(&col.name))
                    }
                }
            })
            .collect();
        if self == Dialect::Generic {
            lines.push(format!("    PRIMARY KEY ({key})"));
        }
        sql.push_str(&lines.join(",\n"));
        sql.push_str("\n)");
        match self {
            Dialect::Generic => sql.push(';'),
            Dialect::ClickHouse => {
                let engine = schema
                    .engine_hints
                    .get("clickhouse")
                    .map_or("ReplacingMergeTree", String::as_str);
                write!(sql, " ENGINE = {engine}\nORDER BY ({key});").unwrap();
            }
        }
        sql
    }
}

/// DDL for one registered table.
pub fn ddl_for(table: &str, dialect: Dialect) -> Result<String, SchemaError> {
    Ok(dialect.create_table(&schema_for(table)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_dialect() {
        assert_eq!(
            "oracle".parse::<Dialect>(),
            Err(SchemaError::UnknownDialect("oracle".into()))
        );
    }

    #[test]
    fn clickhouse_uses_replacing_engine() {
        let ddl = ddl_for("transactions", Dialect::ClickHouse).unwrap();
        assert!(ddl.contains("ENGINE = ReplacingMergeTree"));
        assert!(ddl.contains("ORDER BY (`blockNum`, `transactionIndex`)"));
        assert!(ddl.contains("`authorityAccountAddresses` Array(String)"));
    }

    #[test]
    fn generic_declares_primary_key() {
        let ddl = ddl_for("internals", Dialect::Generic).unwrap();
        assert!(ddl.contains(r#"PRIMARY KEY ("blockNum", "transactionHash", "internalIndex")"#));
        assert!(ddl.contains(r#""callValues" BIGINT ARRAY NOT NULL"#));
    }
}
