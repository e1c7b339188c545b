//! Raw messages to table rows.

pub mod convert;
mod flatten;
mod rows;

pub use convert::{ConversionError, Semantic};
pub use flatten::{
    BlockTables, TOPIC_SLOTS, TransformError, flatten_block, flatten_internals, flatten_logs,
    flatten_transactions, transform_block,
};
pub use rows::{BlockRow, EventLogRow, InternalTxRow, TransactionRow};
