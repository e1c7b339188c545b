//! Flattening of block and transaction-info messages into rows.

use serde_json::json;
use thiserror::Error;

use super::convert::{self, ConversionError};
use super::rows::{BlockRow, EventLogRow, InternalTxRow, TransactionRow};
use crate::chain::{ADDRESS_VERSION, Hash32};
use crate::contracts::{ContractParamRow, Coverage, DecodeError, TxContext, decode_or_fallback};
use crate::node::{RawBlockMessage, RawInfoMessage};
use crate::proto::{self, BlockExtention, TransactionInfo, TransactionInfoList};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("malformed block at height {height}: {reason}")]
    MalformedBlock { height: u64, reason: String },
    #[error("malformed transaction info at height {height}: {reason}")]
    MalformedInfo { height: u64, reason: String },
    #[error("block {height}: {reason}")]
    InfoMismatch { height: u64, reason: String },
    #[error("block {height}: {source}")]
    Conversion {
        height: u64,
        #[source]
        source: ConversionError,
    },
}

impl TransformError {
    pub fn height(&self) -> u64 {
        match self {
            TransformError::MalformedBlock { height, .. }
            | TransformError::MalformedInfo { height, .. }
            | TransformError::InfoMismatch { height, .. }
            | TransformError::Conversion { height, .. } => *height,
        }
    }
}

/// Topic slots per event log row.
pub const TOPIC_SLOTS: usize = 4;

fn decode_block(raw: &RawBlockMessage) -> Result<BlockExtention, TransformError> {
    raw.decode().map_err(|e| TransformError::MalformedBlock {
        height: raw.height,
        reason: e.to_string(),
    })
}

fn decode_info(raw: &RawInfoMessage) -> Result<TransactionInfoList, TransformError> {
    raw.decode().map_err(|e| TransformError::MalformedInfo {
        height: raw.height,
        reason: e.to_string(),
    })
}

fn conversion(height: u64) -> impl Fn(ConversionError) -> TransformError {
    move |source| TransformError::Conversion { height, source }
}

/// Log addresses are served as bare 20-byte account hashes.
fn log_address(path: &str, raw: &[u8]) -> Result<String, ConversionError> {
    if raw.len() == 20 {
        let mut full = Vec::with_capacity(21);
        full.push(ADDRESS_VERSION);
        full.extend_from_slice(raw);
        convert::address_hex(path, &full)
    } else {
        convert::address_hex(path, raw)
    }
}

fn block_row(height: u64, block: &BlockExtention) -> Result<BlockRow, TransformError> {
    let malformed = |reason: &str| TransformError::MalformedBlock {
        height,
        reason: reason.to_owned(),
    };
    let header = block
        .block_header
        .as_ref()
        .ok_or_else(|| malformed("missing header"))?;
    let raw = header
        .raw_data
        .as_ref()
        .ok_or_else(|| malformed("missing header raw data"))?;
    let conv = conversion(height);
    let block_num = convert::unsigned("blockNum", raw.number).map_err(&conv)?;
    if block_num != height {
        return Err(malformed(&format!("header carries height {block_num}")));
    }
    Ok(BlockRow {
        hash: convert::hash_hex("hash", &block.blockid).map_err(&conv)?,
        timestamp: convert::unsigned("timestamp", raw.timestamp).map_err(&conv)?,
        tx_trie_root: convert::hash_hex("txTrieRoot", &raw.tx_trie_root).map_err(&conv)?,
        parent_hash: convert::hash_hex("parentHash", &raw.parent_hash).map_err(&conv)?,
        block_num,
        witness_id: convert::unsigned("witnessId", raw.witness_id).map_err(&conv)?,
        witness_address: convert::address_hex("witnessAddress", &raw.witness_address)
            .map_err(&conv)?,
        version: raw.version,
        account_state_root: convert::hash_hex("accountStateRoot", &raw.account_state_root)
            .map_err(&conv)?,
        witness_signature: convert::hex(&header.witness_signature),
        transaction_count: u32::try_from(block.transactions.len())
            .map_err(|_| malformed("too many transactions"))?,
    })
}

/// Flattens the block header.
pub fn flatten_block(raw: &RawBlockMessage) -> Result<BlockRow, TransformError> {
    block_row(raw.height, &decode_block(raw)?)
}

fn check_infos(height: u64, block: &BlockExtention, infos: &TransactionInfoList) -> Result<(), TransformError> {
    let txs = block.transactions.len();
    let n = infos.transaction_info.len();
    if txs != n {
        return Err(TransformError::InfoMismatch {
            height,
            reason: format!("{txs} transactions but {n} info entries"),
        });
    }
    for (i, (tx, info)) in block.transactions.iter().zip(&infos.transaction_info).enumerate() {
        if !info.id.is_empty() && info.id != tx.txid {
            return Err(TransformError::InfoMismatch {
                height,
                reason: format!(
                    "info entry {i} is for {} but transaction {i} is {}",
                    hex::encode(&info.id),
                    hex::encode(&tx.txid)
                ),
            });
        }
    }
    Ok(())
}

fn transaction_row(
    height: u64,
    index: usize,
    tx: &proto::TransactionExtention,
    info: &TransactionInfo,
) -> Result<TransactionRow, ConversionError> {
    let empty_tx = proto::Transaction::default();
    let transaction = tx.transaction.as_ref().unwrap_or(&empty_tx);
    let empty_raw = proto::TransactionRaw::default();
    let raw = transaction.raw_data.as_ref().unwrap_or(&empty_raw);
    let contract = raw.contract.first();
    let receipt = info.receipt.clone().unwrap_or_default();

    let mut names = Vec::with_capacity(raw.auths.len());
    let mut addresses = Vec::with_capacity(raw.auths.len());
    for (i, auth) in raw.auths.iter().enumerate() {
        let account = auth.account.clone().unwrap_or_default();
        names.push(convert::text(&account.name).text);
        addresses.push(convert::address_hex(
            &format!("authorityAccountAddresses[{i}]"),
            &account.address,
        )?);
    }

    let order_details = info
        .order_details
        .iter()
        .map(|d| {
            json!({
                "makerOrderId": convert::hex(&d.maker_order_id),
                "takerOrderId": convert::hex(&d.taker_order_id),
                "fillSellQuantity": d.fill_sell_quantity,
                "fillBuyQuantity": d.fill_buy_quantity,
            })
            .to_string()
        })
        .collect();

    Ok(TransactionRow {
        hash: convert::hash_hex("hash", &tx.txid)?,
        block_num: height,
        transaction_index: u32::try_from(index)
            .map_err(|_| ConversionError::new("transactionIndex", "index overflow"))?,
        authority_account_names: names,
        authority_account_addresses: addresses,
        contract_type: contract.map_or_else(String::new, |c| {
            proto::contract_type_name(c.r#type)
                .map_or_else(|| format!("UnknownContract{}", c.r#type), str::to_owned)
        }),
        contract_parameter_hex: contract
            .and_then(|c| c.parameter.as_ref())
            .map_or_else(String::new, |p| convert::hex(&p.value)),
        signatures: transaction.signature.iter().map(|s| convert::hex(s)).collect(),
        expiration: convert::unsigned("expiration", raw.expiration)?,
        timestamp: convert::unsigned("timestamp", raw.timestamp)?,
        fee_limit: convert::amount("feeLimit", raw.fee_limit)?,
        energy_usage: convert::unsigned("energyUsage", receipt.energy_usage)?,
        energy_fee: convert::unsigned("energyFee", receipt.energy_fee)?,
        origin_energy_usage: convert::unsigned("originEnergyUsage", receipt.origin_energy_usage)?,
        energy_usage_total: convert::unsigned("energyUsageTotal", receipt.energy_usage_total)?,
        net_usage: convert::unsigned("netUsage", receipt.net_usage)?,
        net_fee: convert::unsigned("netFee", receipt.net_fee)?,
        fee: convert::unsigned("fee", info.fee)?,
        receipt_result: info
            .receipt
            .as_ref()
            .map_or_else(String::new, |r| proto::core::contract_result_name(r.result)),
        result: proto::core::info_code_name(info.result),
        res_message: convert::text(&info.res_message).text,
        asset_issue_id: info.asset_issue_id.clone(),
        withdraw_amount: convert::amount("withdrawAmount", info.withdraw_amount)?,
        unfreeze_amount: convert::amount("unfreezeAmount", info.unfreeze_amount)?,
        exchange_id: convert::unsigned("exchangeId", info.exchange_id)?,
        exchange_received_amount: convert::amount(
            "exchangeReceivedAmount",
            info.exchange_received_amount,
        )?,
        order_id: convert::hex(&info.order_id),
        order_details,
    })
}

/// One row per transaction, receipts merged by position.
pub fn flatten_transactions(
    raw_block: &RawBlockMessage,
    raw_info: &RawInfoMessage,
) -> Result<Vec<TransactionRow>, TransformError> {
    let block = decode_block(raw_block)?;
    let infos = decode_info(raw_info)?;
    check_infos(raw_block.height, &block, &infos)?;
    transactions_of(raw_block.height, &block, &infos)
}

fn transactions_of(
    height: u64,
    block: &BlockExtention,
    infos: &TransactionInfoList,
) -> Result<Vec<TransactionRow>, TransformError> {
    block
        .transactions
        .iter()
        .zip(&infos.transaction_info)
        .enumerate()
        .map(|(i, (tx, info))| transaction_row(height, i, tx, info).map_err(conversion(height)))
        .collect()
}

fn info_tx_hash(info: &TransactionInfo) -> Result<String, ConversionError> {
    convert::hash_hex("transactionHash", &info.id)
}

fn logs_of(height: u64, infos: &TransactionInfoList) -> Result<(Vec<EventLogRow>, u64), TransformError> {
    let conv = conversion(height);
    let mut rows = Vec::new();
    let mut truncated = 0u64;
    for info in &infos.transaction_info {
        let tx_hash = info_tx_hash(info).map_err(&conv)?;
        for (i, log) in info.log.iter().enumerate() {
            if log.topics.len() > TOPIC_SLOTS {
                truncated += 1;
                tracing::warn!(
                    block = height,
                    tx = %tx_hash,
                    topics = log.topics.len(),
                    "event log topics truncated to four"
                );
            }
            let mut topics: [Option<String>; TOPIC_SLOTS] = Default::default();
            for (slot, topic) in topics.iter_mut().zip(&log.topics) {
                *slot = Some(convert::hash_hex("topic", topic).map_err(&conv)?);
            }
            rows.push(EventLogRow {
                block_num: height,
                transaction_hash: tx_hash.clone(),
                log_index: u32::try_from(i).expect("log index fits u32"),
                address: log_address("address", &log.address).map_err(&conv)?,
                topics,
                data: convert::hex(&log.data),
            });
        }
    }
    Ok((rows, truncated))
}

/// Event logs ordered by (transaction, log index), plus the number of
/// logs whose topics were truncated to four slots.
pub fn flatten_logs(raw_info: &RawInfoMessage) -> Result<(Vec<EventLogRow>, u64), TransformError> {
    logs_of(raw_info.height, &decode_info(raw_info)?)
}

fn internals_of(height: u64, infos: &TransactionInfoList) -> Result<Vec<InternalTxRow>, TransformError> {
    let conv = conversion(height);
    let mut rows = Vec::new();
    for info in &infos.transaction_info {
        let tx_hash = info_tx_hash(info).map_err(&conv)?;
        for (i, itx) in info.internal_transactions.iter().enumerate() {
            rows.push(InternalTxRow {
                block_num: height,
                transaction_hash: tx_hash.clone(),
                internal_index: u32::try_from(i).expect("internal index fits u32"),
                internal_hash: convert::hash_hex("internalHash", &itx.hash).map_err(&conv)?,
                caller_address: convert::address_hex("callerAddress", &itx.caller_address)
                    .map_err(&conv)?,
                transfer_to_address: convert::address_hex(
                    "transferToAddress",
                    &itx.transfer_to_address,
                )
                .map_err(&conv)?,
                token_ids: itx.call_value_info.iter().map(|c| c.token_id.clone()).collect(),
                call_values: itx
                    .call_value_info
                    .iter()
                    .enumerate()
                    .map(|(j, c)| convert::amount(&format!("callValues[{j}]"), c.call_value))
                    .collect::<Result<_, _>>()
                    .map_err(&conv)?,
                note: convert::text(&itx.note).text,
                rejected: itx.rejected,
                extra: itx.extra.clone(),
            });
        }
    }
    Ok(rows)
}

/// Internal transactions with their call-value arrays in order.
pub fn flatten_internals(raw_info: &RawInfoMessage) -> Result<Vec<InternalTxRow>, TransformError> {
    internals_of(raw_info.height, &decode_info(raw_info)?)
}

/// All rows produced from one block.
#[derive(Debug, Clone, Default)]
pub struct BlockTables {
    pub block: Option<BlockRow>,
    pub transactions: Vec<TransactionRow>,
    pub events: Vec<EventLogRow>,
    pub internals: Vec<InternalTxRow>,
    pub params: Vec<ContractParamRow>,
    pub coverage: Coverage,
    pub truncated_topics: u64,
    pub diagnostics: Vec<DecodeError>,
}

impl BlockTables {
    pub fn fallback_count(&self) -> u64 {
        self.params.iter().filter(|p| p.is_fallback()).count() as u64
    }
}

/// Transforms one block and its info list into every table's rows. Any
/// error rejects the whole block so it is never partially loaded.
pub fn transform_block(
    raw_block: &RawBlockMessage,
    raw_info: &RawInfoMessage,
) -> Result<BlockTables, TransformError> {
    let height = raw_block.height;
    let block = decode_block(raw_block)?;
    let infos = decode_info(raw_info)?;
    let block_row = block_row(height, &block)?;
    check_infos(height, &block, &infos)?;
    let transactions = transactions_of(height, &block, &infos)?;
    let (events, truncated_topics) = logs_of(height, &infos)?;
    let internals = internals_of(height, &infos)?;

    let mut params = Vec::new();
    let mut coverage = Coverage::new();
    let mut diagnostics = Vec::new();
    for (tx, row) in block.transactions.iter().zip(&transactions) {
        let Some(contract) = tx
            .transaction
            .as_ref()
            .and_then(|t| t.raw_data.as_ref())
            .and_then(|r| r.contract.first())
        else {
            continue;
        };
        let any = contract.parameter.clone().unwrap_or_default();
        let ctx = TxContext {
            transaction_hash: Hash32::from_hex(&row.hash).unwrap_or_default(),
            block_num: height,
        };
        let (param, diagnostic) = decode_or_fallback(&row.contract_type, &any.type_url, &any.value, ctx);
        coverage.record(&row.contract_type, &param);
        diagnostics.extend(diagnostic);
        params.push(param);
    }

    Ok(BlockTables {
        block: Some(block_row),
        transactions,
        events,
        internals,
        params,
        coverage,
        truncated_topics,
        diagnostics,
    })
}
