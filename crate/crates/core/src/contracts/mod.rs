//! Contract classification and parameter decoding.

mod class;
mod decoder;
mod params;
mod wire;

pub use class::{
    ContractClass, ContractKind, MainCategory, SubCategory, UNKNOWN_TABLE, classify,
};
pub use decoder::{
    ContractParamRow, Coverage, CoverageEntry, DecodeError, ParamBody, TxContext,
    coverage_report, decode_or_fallback, decode_params, unknown_schema,
};
pub use wire::{WireField, scan_fields};
