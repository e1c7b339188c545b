//! Wallet-service envelope messages (`api.proto`).

use super::core::{BlockHeader, InternalTransaction, Log, Transaction, TransactionInfo};

#[derive(Clone, PartialEq, prost::Message)]
pub struct NumberMessage {
    #[prost(int64, tag = "1")]
    pub num: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct EmptyMessage {}

#[derive(Clone, PartialEq, prost::Message)]
pub struct Return {
    #[prost(bool, tag = "1")]
    pub result: bool,
    #[prost(int32, tag = "2")]
    pub code: i32,
    #[prost(bytes = "vec", tag = "3")]
    pub message: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct TransactionExtention {
    #[prost(message, optional, tag = "1")]
    pub transaction: Option<Transaction>,
    #[prost(bytes = "vec", tag = "2")]
    pub txid: Vec<u8>,
    #[prost(bytes = "vec", repeated, tag = "3")]
    pub constant_result: Vec<Vec<u8>>,
    #[prost(message, optional, tag = "4")]
    pub result: Option<Return>,
    #[prost(int64, tag = "5")]
    pub energy_used: i64,
    #[prost(message, repeated, tag = "6")]
    pub logs: Vec<Log>,
    #[prost(message, repeated, tag = "7")]
    pub internal_transactions: Vec<InternalTransaction>,
    #[prost(int64, tag = "8")]
    pub energy_penalty: i64,
}

/// Response of `GetBlockByNum2` / `GetNowBlock2`.
#[derive(Clone, PartialEq, prost::Message)]
pub struct BlockExtention {
    #[prost(message, repeated, tag = "1")]
    pub transactions: Vec<TransactionExtention>,
    #[prost(message, optional, tag = "2")]
    pub block_header: Option<BlockHeader>,
    #[prost(bytes = "vec", tag = "3")]
    pub blockid: Vec<u8>,
}

/// Response of `GetTransactionInfoByBlockNum`.
#[derive(Clone, PartialEq, prost::Message)]
pub struct TransactionInfoList {
    #[prost(message, repeated, tag = "1")]
    pub transaction_info: Vec<TransactionInfo>,
}
