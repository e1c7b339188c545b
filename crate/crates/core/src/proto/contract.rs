//! Parameter messages of the system contracts (`core/contract/*.proto`).

use std::collections::BTreeMap;

macro_rules! owner_only {
    ($($name:ident),* $(,)?) => {
        $(
            #[derive(Clone, PartialEq, prost::Message)]
            pub struct $name {
                #[prost(bytes = "vec", tag = "1")]
                pub owner_address: Vec<u8>,
            }
        )*
    };
}

owner_only!(
    UnfreezeAssetContract,
    WithdrawBalanceContract,
    WithdrawExpireUnfreezeContract,
    CancelAllUnfreezeV2Contract,
);

// ---- assets -------------------------------------------------------------

#[derive(Clone, PartialEq, prost::Message)]
pub struct FrozenSupply {
    #[prost(int64, tag = "1")]
    pub frozen_amount: i64,
    #[prost(int64, tag = "2")]
    pub frozen_days: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct AssetIssueContract {
    #[prost(string, tag = "41")]
    pub id: String,
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub name: Vec<u8>,
    #[prost(bytes = "vec", tag = "3")]
    pub abbr: Vec<u8>,
    #[prost(int64, tag = "4")]
    pub total_supply: i64,
    #[prost(message, repeated, tag = "5")]
    pub frozen_supply: Vec<FrozenSupply>,
    #[prost(int32, tag = "6")]
    pub trx_num: i32,
    #[prost(int32, tag = "7")]
    pub precision: i32,
    #[prost(int32, tag = "8")]
    pub num: i32,
    #[prost(int64, tag = "9")]
    pub start_time: i64,
    #[prost(int64, tag = "10")]
    pub end_time: i64,
    #[prost(int64, tag = "11")]
    pub order: i64,
    #[prost(int32, tag = "16")]
    pub vote_score: i32,
    #[prost(bytes = "vec", tag = "20")]
    pub description: Vec<u8>,
    #[prost(bytes = "vec", tag = "21")]
    pub url: Vec<u8>,
    #[prost(int64, tag = "22")]
    pub free_asset_net_limit: i64,
    #[prost(int64, tag = "23")]
    pub public_free_asset_net_limit: i64,
    #[prost(int64, tag = "24")]
    pub public_free_asset_net_usage: i64,
    #[prost(int64, tag = "25")]
    pub public_latest_free_net_time: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ParticipateAssetIssueContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub to_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "3")]
    pub asset_name: Vec<u8>,
    #[prost(int64, tag = "4")]
    pub amount: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct UpdateAssetContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub description: Vec<u8>,
    #[prost(bytes = "vec", tag = "3")]
    pub url: Vec<u8>,
    #[prost(int64, tag = "4")]
    pub new_limit: i64,
    #[prost(int64, tag = "5")]
    pub new_public_limit: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct TransferContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub to_address: Vec<u8>,
    #[prost(int64, tag = "3")]
    pub amount: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct TransferAssetContract {
    #[prost(bytes = "vec", tag = "1")]
    pub asset_name: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "3")]
    pub to_address: Vec<u8>,
    #[prost(int64, tag = "4")]
    pub amount: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct SpendDescription {
    #[prost(bytes = "vec", tag = "1")]
    pub value_commitment: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub anchor: Vec<u8>,
    #[prost(bytes = "vec", tag = "3")]
    pub nullifier: Vec<u8>,
    #[prost(bytes = "vec", tag = "4")]
    pub rk: Vec<u8>,
    #[prost(bytes = "vec", tag = "5")]
    pub zkproof: Vec<u8>,
    #[prost(bytes = "vec", tag = "6")]
    pub spend_authority_signature: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ReceiveDescription {
    #[prost(bytes = "vec", tag = "1")]
    pub value_commitment: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub note_commitment: Vec<u8>,
    #[prost(bytes = "vec", tag = "3")]
    pub epk: Vec<u8>,
    #[prost(bytes = "vec", tag = "4")]
    pub c_enc: Vec<u8>,
    #[prost(bytes = "vec", tag = "5")]
    pub c_out: Vec<u8>,
    #[prost(bytes = "vec", tag = "6")]
    pub zkproof: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ShieldedTransferContract {
    #[prost(bytes = "vec", tag = "1")]
    pub transparent_from_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub from_amount: i64,
    #[prost(message, repeated, tag = "3")]
    pub spend_description: Vec<SpendDescription>,
    #[prost(message, repeated, tag = "4")]
    pub receive_description: Vec<ReceiveDescription>,
    #[prost(bytes = "vec", tag = "5")]
    pub binding_signature: Vec<u8>,
    #[prost(bytes = "vec", tag = "6")]
    pub transparent_to_address: Vec<u8>,
    #[prost(int64, tag = "7")]
    pub to_amount: i64,
}

// ---- staking ------------------------------------------------------------

#[derive(Clone, PartialEq, prost::Message)]
pub struct FreezeBalanceContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub frozen_balance: i64,
    #[prost(int64, tag = "3")]
    pub frozen_duration: i64,
    #[prost(int32, tag = "10")]
    pub resource: i32,
    #[prost(bytes = "vec", tag = "15")]
    pub receiver_address: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct FreezeBalanceV2Contract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub frozen_balance: i64,
    #[prost(int32, tag = "3")]
    pub resource: i32,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct UnfreezeBalanceContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int32, tag = "10")]
    pub resource: i32,
    #[prost(bytes = "vec", tag = "13")]
    pub receiver_address: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct UnfreezeBalanceV2Contract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub unfreeze_balance: i64,
    #[prost(int32, tag = "3")]
    pub resource: i32,
}

// ---- accounts -----------------------------------------------------------

#[derive(Clone, PartialEq, prost::Message)]
pub struct AccountCreateContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub account_address: Vec<u8>,
    #[prost(int32, tag = "3")]
    pub r#type: i32,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct Key {
    #[prost(bytes = "vec", tag = "1")]
    pub address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub weight: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct Permission {
    #[prost(int32, tag = "1")]
    pub r#type: i32,
    #[prost(int32, tag = "2")]
    pub id: i32,
    #[prost(string, tag = "3")]
    pub permission_name: String,
    #[prost(int64, tag = "4")]
    pub threshold: i64,
    #[prost(int32, tag = "5")]
    pub parent_id: i32,
    #[prost(bytes = "vec", tag = "6")]
    pub operations: Vec<u8>,
    #[prost(message, repeated, tag = "7")]
    pub keys: Vec<Key>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct AccountPermissionUpdateContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(message, optional, tag = "2")]
    pub owner: Option<Permission>,
    #[prost(message, optional, tag = "3")]
    pub witness: Option<Permission>,
    #[prost(message, repeated, tag = "4")]
    pub actives: Vec<Permission>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct AccountUpdateContract {
    #[prost(bytes = "vec", tag = "1")]
    pub account_name: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub owner_address: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct SetAccountIdContract {
    #[prost(bytes = "vec", tag = "1")]
    pub account_id: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub owner_address: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct UpdateSettingContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub contract_address: Vec<u8>,
    #[prost(int64, tag = "3")]
    pub consume_user_resource_percent: i64,
}

// ---- smart contracts ----------------------------------------------------

#[derive(Clone, PartialEq, prost::Message)]
pub struct ClearAbiContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub contract_address: Vec<u8>,
}

/// `SmartContract`; the ABI sub-message is kept as its encoded bytes.
#[derive(Clone, PartialEq, prost::Message)]
pub struct SmartContract {
    #[prost(bytes = "vec", tag = "1")]
    pub origin_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub contract_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "3")]
    pub abi: Vec<u8>,
    #[prost(bytes = "vec", tag = "4")]
    pub bytecode: Vec<u8>,
    #[prost(int64, tag = "5")]
    pub call_value: i64,
    #[prost(int64, tag = "6")]
    pub consume_user_resource_percent: i64,
    #[prost(string, tag = "7")]
    pub name: String,
    #[prost(int64, tag = "8")]
    pub origin_energy_limit: i64,
    #[prost(bytes = "vec", tag = "9")]
    pub code_hash: Vec<u8>,
    #[prost(bytes = "vec", tag = "10")]
    pub trx_hash: Vec<u8>,
    #[prost(int32, tag = "11")]
    pub version: i32,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct CreateSmartContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(message, optional, tag = "2")]
    pub new_contract: Option<SmartContract>,
    #[prost(int64, tag = "3")]
    pub call_token_value: i64,
    #[prost(int64, tag = "4")]
    pub token_id: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct TriggerSmartContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub contract_address: Vec<u8>,
    #[prost(int64, tag = "3")]
    pub call_value: i64,
    #[prost(bytes = "vec", tag = "4")]
    pub data: Vec<u8>,
    #[prost(int64, tag = "5")]
    pub call_token_value: i64,
    #[prost(int64, tag = "6")]
    pub token_id: i64,
}

// ---- resources ----------------------------------------------------------

#[derive(Clone, PartialEq, prost::Message)]
pub struct DelegateResourceContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int32, tag = "2")]
    pub resource: i32,
    #[prost(int64, tag = "3")]
    pub balance: i64,
    #[prost(bytes = "vec", tag = "4")]
    pub receiver_address: Vec<u8>,
    #[prost(bool, tag = "5")]
    pub lock: bool,
    #[prost(int64, tag = "6")]
    pub lock_period: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct UnDelegateResourceContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int32, tag = "2")]
    pub resource: i32,
    #[prost(int64, tag = "3")]
    pub balance: i64,
    #[prost(bytes = "vec", tag = "4")]
    pub receiver_address: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct UpdateBrokerageContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int32, tag = "2")]
    pub brokerage: i32,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct UpdateEnergyLimitContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub contract_address: Vec<u8>,
    #[prost(int64, tag = "3")]
    pub origin_energy_limit: i64,
}

// ---- exchanges & market -------------------------------------------------

#[derive(Clone, PartialEq, prost::Message)]
pub struct ExchangeCreateContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub first_token_id: Vec<u8>,
    #[prost(int64, tag = "3")]
    pub first_token_balance: i64,
    #[prost(bytes = "vec", tag = "4")]
    pub second_token_id: Vec<u8>,
    #[prost(int64, tag = "5")]
    pub second_token_balance: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ExchangeInjectContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub exchange_id: i64,
    #[prost(bytes = "vec", tag = "3")]
    pub token_id: Vec<u8>,
    #[prost(int64, tag = "4")]
    pub quant: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ExchangeWithdrawContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub exchange_id: i64,
    #[prost(bytes = "vec", tag = "3")]
    pub token_id: Vec<u8>,
    #[prost(int64, tag = "4")]
    pub quant: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ExchangeTransactionContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub exchange_id: i64,
    #[prost(bytes = "vec", tag = "3")]
    pub token_id: Vec<u8>,
    #[prost(int64, tag = "4")]
    pub quant: i64,
    #[prost(int64, tag = "5")]
    pub expected: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct MarketSellAssetContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub sell_token_id: Vec<u8>,
    #[prost(int64, tag = "3")]
    pub sell_token_quantity: i64,
    #[prost(bytes = "vec", tag = "4")]
    pub buy_token_id: Vec<u8>,
    #[prost(int64, tag = "5")]
    pub buy_token_quantity: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct MarketCancelOrderContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub order_id: Vec<u8>,
}

// ---- governance ---------------------------------------------------------

#[derive(Clone, PartialEq, prost::Message)]
pub struct ProposalCreateContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(btree_map = "int64, int64", tag = "2")]
    pub parameters: BTreeMap<i64, i64>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ProposalApproveContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub proposal_id: i64,
    #[prost(bool, tag = "3")]
    pub is_add_approval: bool,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct ProposalDeleteContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub proposal_id: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct Vote {
    #[prost(bytes = "vec", tag = "1")]
    pub vote_address: Vec<u8>,
    #[prost(int64, tag = "2")]
    pub vote_count: i64,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct VoteWitnessContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(message, repeated, tag = "2")]
    pub votes: Vec<Vote>,
    #[prost(bool, tag = "3")]
    pub support: bool,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct VoteAssetContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", repeated, tag = "2")]
    pub vote_address: Vec<Vec<u8>>,
    #[prost(bool, tag = "3")]
    pub support: bool,
    #[prost(int32, tag = "5")]
    pub count: i32,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct WitnessCreateContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "2")]
    pub url: Vec<u8>,
}

#[derive(Clone, PartialEq, prost::Message)]
pub struct WitnessUpdateContract {
    #[prost(bytes = "vec", tag = "1")]
    pub owner_address: Vec<u8>,
    #[prost(bytes = "vec", tag = "12")]
    pub update_url: Vec<u8>,
}

/// `ResourceCode` symbolic name.
pub fn resource_name(code: i32) -> Option<&'static str> {
    match code {
        0 => Some("BANDWIDTH"),
        1 => Some("ENERGY"),
        2 => Some("TRON_POWER"),
        _ => None,
    }
}

/// `AccountType` symbolic name.
pub fn account_type_name(code: i32) -> Option<&'static str> {
    match code {
        0 => Some("Normal"),
        1 => Some("AssetIssue"),
        2 => Some("Contract"),
        _ => None,
    }
}

/// `Permission.PermissionType` symbolic name.
pub fn permission_type_name(code: i32) -> Option<&'static str> {
    match code {
        0 => Some("Owner"),
        1 => Some("Witness"),
        2 => Some("Active"),
        _ => None,
    }
}
