//! Row types of the four core tables.

use crate::schema::{BLOCKS, ColumnDef, ColumnType, EVENTS, INTERNALS, Row, TRANSACTIONS, TableSchema, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRow {
    pub hash: String,
    pub timestamp: u64,
    pub tx_trie_root: String,
    pub parent_hash: String,
    pub block_num: u64,
    pub witness_id: u64,
    pub witness_address: String,
    pub version: i32,
    pub account_state_root: String,
    pub witness_signature: String,
    pub transaction_count: u32,
}

impl BlockRow {
    pub fn schema() -> TableSchema {
        use ColumnType as T;
        TableSchema::new(
            BLOCKS,
            vec![
                ColumnDef::new("hash", T::Hash),
                ColumnDef::new("timestamp", T::TimestampMs),
                ColumnDef::new("txTrieRoot", T::Hash),
                ColumnDef::new("parentHash", T::Hash),
                ColumnDef::new("blockNum", T::UInt64),
                ColumnDef::new("witnessId", T::UInt64),
                ColumnDef::new("witnessAddress", T::Address),
                ColumnDef::new("version", T::Int32),
                ColumnDef::new("accountStateRoot", T::Hash),
                ColumnDef::new("witnessSignature", T::Hex),
                ColumnDef::new("transactionCount", T::UInt32),
            ],
            &["blockNum"],
        )
    }

    pub fn to_values(&self) -> Row {
        vec![
            self.hash.clone().into(),
            self.timestamp.into(),
            self.tx_trie_root.clone().into(),
            self.parent_hash.clone().into(),
            self.block_num.into(),
            self.witness_id.into(),
            self.witness_address.clone().into(),
            self.version.into(),
            self.account_state_root.clone().into(),
            self.witness_signature.clone().into(),
            self.transaction_count.into(),
        ]
    }
}

/// An external transaction merged with its execution receipt.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TransactionRow {
    pub hash: String,
    pub block_num: u64,
    pub transaction_index: u32,
    pub authority_account_names: Vec<String>,
    pub authority_account_addresses: Vec<String>,
    pub contract_type: String,
    pub contract_parameter_hex: String,
    pub signatures: Vec<String>,
    pub expiration: u64,
    pub timestamp: u64,
    pub fee_limit: i64,
    pub energy_usage: u64,
    pub energy_fee: u64,
    pub origin_energy_usage: u64,
    pub energy_usage_total: u64,
    pub net_usage: u64,
    pub net_fee: u64,
    pub fee: u64,
    pub receipt_result: String,
    pub result: String,
    pub res_message: String,
    pub asset_issue_id: String,
    pub withdraw_amount: i64,
    pub unfreeze_amount: i64,
    pub exchange_id: u64,
    pub exchange_received_amount: i64,
    pub order_id: String,
    pub order_details: Vec<String>,
}

impl TransactionRow {
    pub fn schema() -> TableSchema {
        use ColumnType as T;
        TableSchema::new(
            TRANSACTIONS,
            vec![
                ColumnDef::new("hash", T::Hash),
                ColumnDef::new("blockNum", T::UInt64),
                ColumnDef::new("transactionIndex", T::UInt32),
                ColumnDef::new("authorityAccountNames", T::array(T::Text)),
                ColumnDef::new("authorityAccountAddresses", T::array(T::Address)),
                ColumnDef::new("contractType", T::Text),
                ColumnDef::new("contractParameterHex", T::Hex),
                ColumnDef::new("signatures", T::array(T::Hex)),
                ColumnDef::new("expiration", T::TimestampMs),
                ColumnDef::new("timestamp", T::TimestampMs),
                ColumnDef::new("feeLimit", T::Amount),
                ColumnDef::new("energyUsage", T::UInt64),
                ColumnDef::new("energyFee", T::UInt64),
                ColumnDef::new("originEnergyUsage", T::UInt64),
                ColumnDef::new("energyUsageTotal", T::UInt64),
                ColumnDef::new("netUsage", T::UInt64),
                ColumnDef::new("netFee", T::UInt64),
                ColumnDef::new("fee", T::UInt64),
                ColumnDef::new("receiptResult", T::Text),
                ColumnDef::new("result", T::Text),
                ColumnDef::new("resMessage", T::Text),
                ColumnDef::new("assetIssueId", T::Text),
                ColumnDef::new("withdrawAmount", T::Amount),
                ColumnDef::new("unfreezeAmount", T::Amount),
                ColumnDef::new("exchangeId", T::UInt64),
                ColumnDef::new("exchangeReceivedAmount", T::Amount),
                ColumnDef::new("orderId", T::Hex),
                ColumnDef::new("orderDetails", T::array(T::Text)),
            ],
            &["blockNum", "transactionIndex"],
        )
    }

    pub fn to_values(&self) -> Row {
        vec![
            self.hash.clone().into(),
            self.block_num.into(),
            self.transaction_index.into(),
            self.authority_account_names.clone().into(),
            self.authority_account_addresses.clone().into(),
            self.contract_type.clone().into(),
            self.contract_parameter_hex.clone().into(),
            self.signatures.clone().into(),
            self.expiration.into(),
            self.timestamp.into(),
            self.fee_limit.into(),
            self.energy_usage.into(),
            self.energy_fee.into(),
            self.origin_energy_usage.into(),
            self.energy_usage_total.into(),
            self.net_usage.into(),
            self.net_fee.into(),
            self.fee.into(),
            self.receipt_result.clone().into(),
            self.result.clone().into(),
            self.res_message.clone().into(),
            self.asset_issue_id.clone().into(),
            self.withdraw_amount.into(),
            self.unfreeze_amount.into(),
            self.exchange_id.into(),
            self.exchange_received_amount.into(),
            self.order_id.clone().into(),
            self.order_details.clone().into(),
        ]
    }
}

/// A contract event log. Topics are the only nullable fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventLogRow {
    pub block_num: u64,
    pub transaction_hash: String,
    pub log_index: u32,
    pub address: String,
    pub topics: [Option<String>; 4],
    pub data: String,
}

impl EventLogRow {
    pub fn schema() -> TableSchema {
        use ColumnType as T;
        TableSchema::new(
            EVENTS,
            vec![
                ColumnDef::new("blockNum", T::UInt64),
                ColumnDef::new("transactionHash", T::Hash),
                ColumnDef::new("logIndex", T::UInt32),
                ColumnDef::new("address", T::Address),
                ColumnDef::nullable("topic0", T::Hash),
                ColumnDef::nullable("topic1", T::Hash),
                ColumnDef::nullable("topic2", T::Hash),
                ColumnDef::nullable("topic3", T::Hash),
                ColumnDef::new("data", T::Hex),
            ],
            &["blockNum", "transactionHash", "logIndex"],
        )
    }

    pub fn to_values(&self) -> Row {
        let mut row: Row = vec![
            self.block_num.into(),
            self.transaction_hash.clone().into(),
            self.log_index.into(),
            self.address.clone().into(),
        ];
        row.extend(self.topics.iter().cloned().map(Value::from));
        row.push(self.data.clone().into());
        row
    }

    /// Present topics form a prefix of the four slots.
    pub fn topics_are_prefix(&self) -> bool {
        let present = self.topics.iter().take_while(|t| t.is_some()).count();
        self.topics[present..].iter().all(Option::is_none)
    }
}

/// A value transfer or call triggered by contract code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalTxRow {
    pub block_num: u64,
    pub transaction_hash: String,
    pub internal_index: u32,
    pub internal_hash: String,
    pub caller_address: String,
    pub transfer_to_address: String,
    pub token_ids: Vec<String>,
    pub call_values: Vec<i64>,
    pub note: String,
    pub rejected: bool,
    pub extra: String,
}

impl InternalTxRow {
    pub fn schema() -> TableSchema {
        use ColumnType as T;
        TableSchema::new(
            INTERNALS,
            vec![
                ColumnDef::new("blockNum", T::UInt64),
                ColumnDef::new("transactionHash", T::Hash),
                ColumnDef::new("internalIndex", T::UInt32),
                ColumnDef::new("internalHash", T::Hash),
                ColumnDef::new("callerAddress", T::Address),
                ColumnDef::new("transferToAddress", T::Address),
                ColumnDef::new("tokenIds", T::array(T::Text)),
                ColumnDef::new("callValues", T::array(T::Amount)),
                ColumnDef::new("note", T::Text),
                ColumnDef::new("rejected", T::Bool),
                ColumnDef::new("extra", T::Text),
            ],
            &["blockNum", "transactionHash", "internalIndex"],
        )
    }

    pub fn to_values(&self) -> Row {
        vec![
            self.block_num.into(),
            self.transaction_hash.clone().into(),
            self.internal_index.into(),
            self.internal_hash.clone().into(),
            self.caller_address.clone().into(),
            self.transfer_to_address.clone().into(),
            self.token_ids.clone().into(),
            self.call_values.clone().into(),
            self.note.clone().into(),
            self.rejected.into(),
            self.extra.clone().into(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_have_eleven_fields() {
        assert_eq!(BlockRow::schema().columns.len(), 11);
    }

    #[test]
    fn default_transaction_conforms() {
        let row = TransactionRow::default();
        TransactionRow::schema().check_row(&row.to_values()).unwrap();
    }

    #[test]
    fn topic_prefix_rule() {
        let mut row = EventLogRow {
            block_num: 1,
            transaction_hash: String::new(),
            log_index: 0,
            address: String::new(),
            topics: [Some("a".into()), None, None, None],
            data: String::new(),
        };
        assert!(row.topics_are_prefix());
        row.topics[2] = Some("c".into());
        assert!(!row.topics_are_prefix());
    }
}
