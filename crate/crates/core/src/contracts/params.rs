//! Per-type flattening of contract parameter messages.
//!
//! Each message describes its columns once through [`Fields`]; the same
//! description yields the table schema (schema mode) and the row values
//! (value mode), so the two cannot drift apart.

use prost::Message;
use serde_json::json;

use super::ContractKind;
use crate::proto::contract as pc;
use crate::schema::{ColumnDef, ColumnType, Value};
use crate::transform::convert::{self, ConversionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Schema,
    Values,
}

pub(crate) struct Fields {
    mode: Mode,
    pub(crate) columns: Vec<ColumnDef>,
    pub(crate) tags: Vec<u32>,
    pub(crate) values: Vec<Value>,
    pub(crate) error: Option<ConversionError>,
}

impl Fields {
    pub(crate) fn schema() -> Self {
        Self::with_mode(Mode::Schema)
    }

    pub(crate) fn values() -> Self {
        Self::with_mode(Mode::Values)
    }

    fn with_mode(mode: Mode) -> Self {
        Self {
            mode,
            columns: Vec::new(),
            tags: Vec::new(),
            values: Vec::new(),
            error: None,
        }
    }

    fn push(
        &mut self,
        tag: u32,
        name: &str,
        ty: ColumnType,
        value: impl FnOnce() -> Result<Value, ConversionError>,
    ) {
        match self.mode {
            Mode::Schema => {
                self.columns.push(ColumnDef::new(name, ty));
                if !self.tags.contains(&tag) {
                    self.tags.push(tag);
                }
            }
            Mode::Values => {
                if self.error.is_none() {
                    match value() {
                        Ok(v) => self.values.push(v),
                        Err(e) => self.error = Some(e),
                    }
                }
            }
        }
    }

    fn address(&mut self, tag: u32, name: &str, raw: &[u8]) {
        self.push(tag, name, ColumnType::Address, || {
            convert::address_hex(name, raw).map(Value::Text)
        });
    }

    fn address_list<'a>(&mut self, tag: u32, name: &str, raw: impl Iterator<Item = &'a [u8]>) {
        self.push(tag, name, ColumnType::array(ColumnType::Address), || {
            raw.enumerate()
                .map(|(i, r)| convert::address_hex(&format!("{name}[{i}]"), r).map(Value::Text))
                .collect::<Result<Vec<_>, _>>()
                .map(Value::Array)
        });
    }

    fn amount(&mut self, tag: u32, name: &str, v: i64) {
        self.push(tag, name, ColumnType::Amount, || {
            convert::amount(name, v).map(Value::Int)
        });
    }

    fn amount_list(&mut self, tag: u32, name: &str, vs: impl Iterator<Item = i64>) {
        self.push(tag, name, ColumnType::array(ColumnType::Amount), || {
            vs.enumerate()
                .map(|(i, v)| convert::amount(&format!("{name}[{i}]"), v).map(Value::Int))
                .collect::<Result<Vec<_>, _>>()
                .map(Value::Array)
        });
    }

    fn int(&mut self, tag: u32, name: &str, v: i64) {
        self.push(tag, name, ColumnType::Int64, || Ok(Value::Int(v)));
    }

    fn int32(&mut self, tag: u32, name: &str, v: i32) {
        self.push(tag, name, ColumnType::Int32, || Ok(Value::from(v)));
    }

    fn int_list(&mut self, tag: u32, name: &str, vs: impl Iterator<Item = i64>) {
        self.push(tag, name, ColumnType::array(ColumnType::Int64), || {
            Ok(Value::Array(vs.map(Value::Int).collect()))
        });
    }

    fn hex(&mut self, tag: u32, name: &str, raw: &[u8]) {
        self.push(tag, name, ColumnType::Hex, || Ok(Value::Text(convert::hex(raw))));
    }

    fn hex_list<'a>(&mut self, tag: u32, name: &str, raw: impl Iterator<Item = &'a [u8]>) {
        self.push(tag, name, ColumnType::array(ColumnType::Hex), || {
            Ok(Value::Array(raw.map(|r| Value::Text(convert::hex(r))).collect()))
        });
    }

    fn text(&mut self, tag: u32, name: &str, raw: &[u8]) {
        self.push(tag, name, ColumnType::Text, || Ok(Value::Text(convert::text(raw).text)));
    }

    /// Text column plus a `<name>IsUtf8` validity flag.
    fn flagged_text(&mut self, tag: u32, name: &str, raw: &[u8]) {
        let converted = convert::text(raw);
        let flag = converted.valid_utf8;
        self.push(tag, name, ColumnType::Text, || Ok(Value::Text(converted.text)));
        self.push(tag, &format!("{name}IsUtf8"), ColumnType::Bool, || {
            Ok(Value::Bool(flag))
        });
    }

    fn string(&mut self, tag: u32, name: &str, s: &str) {
        self.push(tag, name, ColumnType::Text, || Ok(Value::text(s)));
    }

    fn flag(&mut self, tag: u32, name: &str, b: bool) {
        self.push(tag, name, ColumnType::Bool, || Ok(Value::Bool(b)));
    }

    fn enumeration(&mut self, tag: u32, name: &str, code: i32, names: fn(i32) -> Option<&'static str>) {
        self.push(tag, name, ColumnType::Text, || {
            names(code)
                .map(Value::text)
                .ok_or_else(|| ConversionError::new(name, format!("unknown enum value {code}")))
        });
    }

    fn json(&mut self, tag: u32, name: &str, v: impl FnOnce() -> Result<serde_json::Value, ConversionError>) {
        self.push(tag, name, ColumnType::Text, || {
            v().map(|j| Value::Text(j.to_string()))
        });
    }

    fn json_list(&mut self, tag: u32, name: &str, v: impl FnOnce() -> Result<Vec<serde_json::Value>, ConversionError>) {
        self.push(tag, name, ColumnType::array(ColumnType::Text), || {
            v().map(|items| Value::Array(items.into_iter().map(|j| Value::Text(j.to_string())).collect()))
        });
    }
}

pub(crate) trait ParamMessage: Message + Default {
    fn visit(&self, f: &mut Fields);
}

fn run<M: ParamMessage>(bytes: &[u8], f: &mut Fields) -> Result<(), prost::DecodeError> {
    let msg = if f.mode == Mode::Schema {
        M::default()
    } else {
        M::decode(bytes)?
    };
    msg.visit(f);
    Ok(())
}

/// Decodes `bytes` as `kind`'s parameter message and visits its fields.
/// In schema mode `bytes` is ignored.
pub(crate) fn visit_kind(kind: ContractKind, bytes: &[u8], f: &mut Fields) -> Result<(), prost::DecodeError> {
    use ContractKind as K;
    match kind {
        K::AssetIssue => run::<pc::AssetIssueContract>(bytes, f),
        K::ParticipateAssetIssue => run::<pc::ParticipateAssetIssueContract>(bytes, f),
        K::UpdateAsset => run::<pc::UpdateAssetContract>(bytes, f),
        K::Transfer => run::<pc::TransferContract>(bytes, f),
        K::TransferAsset => run::<pc::TransferAssetContract>(bytes, f),
        K::ShieldedTransfer => run::<pc::ShieldedTransferContract>(bytes, f),
        K::CancelAllUnfreezeV2 => run::<pc::CancelAllUnfreezeV2Contract>(bytes, f),
        K::FreezeBalance => run::<pc::FreezeBalanceContract>(bytes, f),
        K::FreezeBalanceV2 => run::<pc::FreezeBalanceV2Contract>(bytes, f),
        K::UnfreezeAsset => run::<pc::UnfreezeAssetContract>(bytes, f),
        K::UnfreezeBalance => run::<pc::UnfreezeBalanceContract>(bytes, f),
        K::UnfreezeBalanceV2 => run::<pc::UnfreezeBalanceV2Contract>(bytes, f),
        K::WithdrawBalance => run::<pc::WithdrawBalanceContract>(bytes, f),
        K::AccountCreate => run::<pc::AccountCreateContract>(bytes, f),
        K::AccountPermissionUpdate => run::<pc::AccountPermissionUpdateContract>(bytes, f),
        K::AccountUpdate => run::<pc::AccountUpdateContract>(bytes, f),
        K::SetAccountId => run::<pc::SetAccountIdContract>(bytes, f),
        K::UpdateSetting => run::<pc::UpdateSettingContract>(bytes, f),
        K::ClearAbi => run::<pc::ClearAbiContract>(bytes, f),
        K::CreateSmartContract => run::<pc::CreateSmartContract>(bytes, f),
        K::TriggerSmartContract => run::<pc::TriggerSmartContract>(bytes, f),
        K::DelegateResource => run::<pc::DelegateResourceContract>(bytes, f),
        K::UnDelegateResource => run::<pc::UnDelegateResourceContract>(bytes, f),
        K::UpdateBrokerage => run::<pc::UpdateBrokerageContract>(bytes, f),
        K::UpdateEnergyLimit => run::<pc::UpdateEnergyLimitContract>(bytes, f),
        K::WithdrawExpireUnfreeze => run::<pc::WithdrawExpireUnfreezeContract>(bytes, f),
        K::ExchangeCreate => run::<pc::ExchangeCreateContract>(bytes, f),
        K::ExchangeInject => run::<pc::ExchangeInjectContract>(bytes, f),
        K::ExchangeTransaction => run::<pc::ExchangeTransactionContract>(bytes, f),
        K::ExchangeWithdraw => run::<pc::ExchangeWithdrawContract>(bytes, f),
        K::MarketCancelOrder => run::<pc::MarketCancelOrderContract>(bytes, f),
        K::MarketSellAsset => run::<pc::MarketSellAssetContract>(bytes, f),
        K::ProposalApprove => run::<pc::ProposalApproveContract>(bytes, f),
        K::ProposalCreate => run::<pc::ProposalCreateContract>(bytes, f),
        K::ProposalDelete => run::<pc::ProposalDeleteContract>(bytes, f),
        K::VoteWitness => run::<pc::VoteWitnessContract>(bytes, f),
        K::VoteAsset => run::<pc::VoteAssetContract>(bytes, f),
        K::WitnessCreate => run::<pc::WitnessCreateContract>(bytes, f),
        K::WitnessUpdate => run::<pc::WitnessUpdateContract>(bytes, f),
    }
}

macro_rules! owner_only_params {
    ($($ty:ident),*) => {
        $(impl ParamMessage for pc::$ty {
            fn visit(&self, f: &mut Fields) {
                f.address(1, "ownerAddress", &self.owner_address);
            }
        })*
    };
}

owner_only_params!(
    UnfreezeAssetContract,
    WithdrawBalanceContract,
    WithdrawExpireUnfreezeContract,
    CancelAllUnfreezeV2Contract
);

impl ParamMessage for pc::AssetIssueContract {
    fn visit(&self, f: &mut Fields) {
        f.string(41, "id", &self.id);
        f.address(1, "ownerAddress", &self.owner_address);
        f.flagged_text(2, "name", &self.name);
        f.flagged_text(3, "abbr", &self.abbr);
        f.amount(4, "totalSupply", self.total_supply);
        f.amount_list(5, "frozenAmounts", self.frozen_supply.iter().map(|s| s.frozen_amount));
        f.int_list(5, "frozenDays", self.frozen_supply.iter().map(|s| s.frozen_days));
        f.int32(6, "trxNum", self.trx_num);
        f.int32(7, "precision", self.precision);
        f.int32(8, "num", self.num);
        f.int(9, "startTime", self.start_time);
        f.int(10, "endTime", self.end_time);
        f.int(11, "order", self.order);
        f.int32(16, "voteScore", self.vote_score);
        f.text(20, "description", &self.description);
        f.text(21, "url", &self.url);
        f.int(22, "freeAssetNetLimit", self.free_asset_net_limit);
        f.int(23, "publicFreeAssetNetLimit", self.public_free_asset_net_limit);
        f.int(24, "publicFreeAssetNetUsage", self.public_free_asset_net_usage);
        f.int(25, "publicLatestFreeNetTime", self.public_latest_free_net_time);
    }
}

impl ParamMessage for pc::ParticipateAssetIssueContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "toAddress", &self.to_address);
        f.flagged_text(3, "assetName", &self.asset_name);
        f.amount(4, "amount", self.amount);
    }
}

impl ParamMessage for pc::UpdateAssetContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.text(2, "description", &self.description);
        f.text(3, "url", &self.url);
        f.int(4, "newLimit", self.new_limit);
        f.int(5, "newPublicLimit", self.new_public_limit);
    }
}

impl ParamMessage for pc::TransferContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "toAddress", &self.to_address);
        f.amount(3, "amount", self.amount);
    }
}

impl ParamMessage for pc::TransferAssetContract {
    fn visit(&self, f: &mut Fields) {
        f.flagged_text(1, "assetName", &self.asset_name);
        f.address(2, "ownerAddress", &self.owner_address);
        f.address(3, "toAddress", &self.to_address);
        f.amount(4, "amount", self.amount);
    }
}

impl ParamMessage for pc::ShieldedTransferContract {
    fn visit(&self, f: &mut Fields) {
        let spends = &self.spend_description;
        let receives = &self.receive_description;
        f.address(1, "transparentFromAddress", &self.transparent_from_address);
        f.amount(2, "fromAmount", self.from_amount);
        f.hex_list(3, "spendValueCommitments", spends.iter().map(|s| s.value_commitment.as_slice()));
        f.hex_list(3, "spendAnchors", spends.iter().map(|s| s.anchor.as_slice()));
        f.hex_list(3, "spendNullifiers", spends.iter().map(|s| s.nullifier.as_slice()));
        f.hex_list(3, "spendRks", spends.iter().map(|s| s.rk.as_slice()));
        f.hex_list(3, "spendZkproofs", spends.iter().map(|s| s.zkproof.as_slice()));
        f.hex_list(3, "spendAuthoritySignatures", spends.iter().map(|s| s.spend_authority_signature.as_slice()));
        f.hex_list(4, "receiveValueCommitments", receives.iter().map(|r| r.value_commitment.as_slice()));
        f.hex_list(4, "receiveNoteCommitments", receives.iter().map(|r| r.note_commitment.as_slice()));
        f.hex_list(4, "receiveEpks", receives.iter().map(|r| r.epk.as_slice()));
        f.hex_list(4, "receiveCEncs", receives.iter().map(|r| r.c_enc.as_slice()));
        f.hex_list(4, "receiveCOuts", receives.iter().map(|r| r.c_out.as_slice()));
        f.hex_list(4, "receiveZkproofs", receives.iter().map(|r| r.zkproof.as_slice()));
        f.hex(5, "bindingSignature", &self.binding_signature);
        f.address(6, "transparentToAddress", &self.transparent_to_address);
        f.amount(7, "toAmount", self.to_amount);
    }
}

impl ParamMessage for pc::FreezeBalanceContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.amount(2, "balance", self.frozen_balance);
        f.int(3, "frozenDuration", self.frozen_duration);
        f.enumeration(10, "resource", self.resource, pc::resource_name);
        f.address(15, "receiverAddress", &self.receiver_address);
    }
}

impl ParamMessage for pc::FreezeBalanceV2Contract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.amount(2, "balance", self.frozen_balance);
        f.enumeration(3, "resource", self.resource, pc::resource_name);
    }
}

impl ParamMessage for pc::UnfreezeBalanceContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.enumeration(10, "resource", self.resource, pc::resource_name);
        f.address(13, "receiverAddress", &self.receiver_address);
    }
}

impl ParamMessage for pc::UnfreezeBalanceV2Contract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.amount(2, "balance", self.unfreeze_balance);
        f.enumeration(3, "resource", self.resource, pc::resource_name);
    }
}

impl ParamMessage for pc::AccountCreateContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "accountAddress", &self.account_address);
        f.enumeration(3, "accountType", self.r#type, pc::account_type_name);
    }
}

fn permission_json(path: &str, p: &pc::Permission) -> Result<serde_json::Value, ConversionError> {
    let keys = p
        .keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            Ok(json!({
                "address": convert::address_hex(&format!("{path}.keys[{i}]"), &k.address)?,
                "weight": k.weight,
            }))
        })
        .collect::<Result<Vec<_>, ConversionError>>()?;
    let kind = pc::permission_type_name(p.r#type)
        .ok_or_else(|| ConversionError::new(path, format!("unknown permission type {}", p.r#type)))?;
    Ok(json!({
        "type": kind,
        "id": p.id,
        "permissionName": p.permission_name,
        "threshold": p.threshold,
        "parentId": p.parent_id,
        "operations": convert::hex(&p.operations),
        "keys": keys,
    }))
}

impl ParamMessage for pc::AccountPermissionUpdateContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.json(2, "ownerPermission", || match &self.owner {
            Some(p) => permission_json("ownerPermission", p),
            None => Ok(serde_json::Value::Null),
        });
        f.json(3, "witnessPermission", || match &self.witness {
            Some(p) => permission_json("witnessPermission", p),
            None => Ok(serde_json::Value::Null),
        });
        f.json_list(4, "activePermissions", || {
            self.actives
                .iter()
                .enumerate()
                .map(|(i, p)| permission_json(&format!("activePermissions[{i}]"), p))
                .collect()
        });
    }
}

impl ParamMessage for pc::AccountUpdateContract {
    fn visit(&self, f: &mut Fields) {
        f.flagged_text(1, "accountName", &self.account_name);
        f.address(2, "ownerAddress", &self.owner_address);
    }
}

impl ParamMessage for pc::SetAccountIdContract {
    fn visit(&self, f: &mut Fields) {
        f.flagged_text(1, "accountId", &self.account_id);
        f.address(2, "ownerAddress", &self.owner_address);
    }
}

impl ParamMessage for pc::UpdateSettingContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "contractAddress", &self.contract_address);
        f.int(3, "consumeUserResourcePercent", self.consume_user_resource_percent);
    }
}

impl ParamMessage for pc::ClearAbiContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "contractAddress", &self.contract_address);
    }
}

impl ParamMessage for pc::CreateSmartContract {
    fn visit(&self, f: &mut Fields) {
        let empty = pc::SmartContract::default();
        let c = self.new_contract.as_ref().unwrap_or(&empty);
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "originAddress", &c.origin_address);
        f.address(2, "newContractAddress", &c.contract_address);
        f.hex(2, "abiHex", &c.abi);
        f.hex(2, "bytecodeHex", &c.bytecode);
        f.amount(2, "callValue", c.call_value);
        f.int(2, "consumeUserResourcePercent", c.consume_user_resource_percent);
        f.string(2, "name", &c.name);
        f.int(2, "originEnergyLimit", c.origin_energy_limit);
        f.hex(2, "codeHash", &c.code_hash);
        f.hex(2, "trxHash", &c.trx_hash);
        f.int32(2, "version", c.version);
        f.amount(3, "callTokenValue", self.call_token_value);
        f.int(4, "tokenId", self.token_id);
    }
}

impl ParamMessage for pc::TriggerSmartContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "contractAddress", &self.contract_address);
        f.amount(3, "callValue", self.call_value);
        f.hex(4, "data", &self.data);
        let selector = self.data.get(..4).unwrap_or_default();
        f.hex(4, "selector", selector);
        f.amount(5, "callTokenValue", self.call_token_value);
        f.int(6, "tokenId", self.token_id);
    }
}

impl ParamMessage for pc::DelegateResourceContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.enumeration(2, "resource", self.resource, pc::resource_name);
        f.amount(3, "balance", self.balance);
        f.address(4, "receiverAddress", &self.receiver_address);
        f.flag(5, "lock", self.lock);
        f.int(6, "lockPeriod", self.lock_period);
    }
}

impl ParamMessage for pc::UnDelegateResourceContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.enumeration(2, "resource", self.resource, pc::resource_name);
        f.amount(3, "balance", self.balance);
        f.address(4, "receiverAddress", &self.receiver_address);
    }
}

impl ParamMessage for pc::UpdateBrokerageContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.int32(2, "brokerage", self.brokerage);
    }
}

impl ParamMessage for pc::UpdateEnergyLimitContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address(2, "contractAddress", &self.contract_address);
        f.int(3, "originEnergyLimit", self.origin_energy_limit);
    }
}

impl ParamMessage for pc::ExchangeCreateContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.text(2, "firstTokenId", &self.first_token_id);
        f.amount(3, "firstTokenBalance", self.first_token_balance);
        f.text(4, "secondTokenId", &self.second_token_id);
        f.amount(5, "secondTokenBalance", self.second_token_balance);
    }
}

impl ParamMessage for pc::ExchangeInjectContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.int(2, "exchangeId", self.exchange_id);
        f.text(3, "tokenId", &self.token_id);
        f.amount(4, "quant", self.quant);
    }
}

impl ParamMessage for pc::ExchangeWithdrawContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.int(2, "exchangeId", self.exchange_id);
        f.text(3, "tokenId", &self.token_id);
        f.amount(4, "quant", self.quant);
    }
}

impl ParamMessage for pc::ExchangeTransactionContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.int(2, "exchangeId", self.exchange_id);
        f.text(3, "tokenId", &self.token_id);
        f.amount(4, "quant", self.quant);
        f.amount(5, "expected", self.expected);
    }
}

impl ParamMessage for pc::MarketSellAssetContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.text(2, "sellTokenId", &self.sell_token_id);
        f.amount(3, "sellTokenQuantity", self.sell_token_quantity);
        f.text(4, "buyTokenId", &self.buy_token_id);
        f.amount(5, "buyTokenQuantity", self.buy_token_quantity);
    }
}

impl ParamMessage for pc::MarketCancelOrderContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.hex(2, "orderId", &self.order_id);
    }
}

impl ParamMessage for pc::ProposalCreateContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.int_list(2, "parameterIds", self.parameters.keys().copied());
        f.int_list(2, "parameterValues", self.parameters.values().copied());
    }
}

impl ParamMessage for pc::ProposalApproveContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.int(2, "proposalId", self.proposal_id);
        f.flag(3, "isAddApproval", self.is_add_approval);
    }
}

impl ParamMessage for pc::ProposalDeleteContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.int(2, "proposalId", self.proposal_id);
    }
}

impl ParamMessage for pc::VoteWitnessContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address_list(2, "voteAddresses", self.votes.iter().map(|v| v.vote_address.as_slice()));
        f.amount_list(2, "voteCounts", self.votes.iter().map(|v| v.vote_count));
        f.flag(3, "support", self.support);
    }
}

impl ParamMessage for pc::VoteAssetContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.address_list(2, "voteAddresses", self.vote_address.iter().map(Vec::as_slice));
        f.flag(3, "support", self.support);
        f.int32(5, "count", self.count);
    }
}

impl ParamMessage for pc::WitnessCreateContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.text(2, "url", &self.url);
    }
}

impl ParamMessage for pc::WitnessUpdateContract {
    fn visit(&self, f: &mut Fields) {
        f.address(1, "ownerAddress", &self.owner_address);
        f.text(12, "updateUrl", &self.update_url);
    }
}
