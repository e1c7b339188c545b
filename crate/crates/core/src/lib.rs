//! TRON block-data ETL: node client, contract decoding, row flattening and
//! columnar sinks.

pub mod chain;
pub mod contracts;
pub mod node;
pub mod pipeline;
pub mod proto;
pub mod schema;
pub mod sink;
pub mod synth;
pub mod transform;
