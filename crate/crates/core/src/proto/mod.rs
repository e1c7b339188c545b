//! Hand-maintained Protocol Buffers definitions for the subset of the TRON
//! protocol the pipeline reads. Field numbers follow `core/Tron.proto`,
//! `core/contract/*.proto` and `api/api.proto` of java-tron.

pub mod api;
pub mod contract;
pub mod core;

pub use self::api::{BlockExtention, NumberMessage, TransactionExtention, TransactionInfoList};
pub use self::core::{
    Any, BlockHeader, BlockHeaderRaw, Contract, InternalTransaction, Log, Transaction,
    TransactionInfo, TransactionRaw,
};

/// `Transaction.Contract.ContractType` values and their symbolic names.
pub const CONTRACT_TYPES: &[(i32, &str)] = &[
    (0, "AccountCreateContract"),
    (1, "TransferContract"),
    (2, "TransferAssetContract"),
    (3, "VoteAssetContract"),
    (4, "VoteWitnessContract"),
    (5, "WitnessCreateContract"),
    (6, "AssetIssueContract"),
    (8, "WitnessUpdateContract"),
    (9, "ParticipateAssetIssueContract"),
    (10, "AccountUpdateContract"),
    (11, "FreezeBalanceContract"),
    (12, "UnfreezeBalanceContract"),
    (13, "WithdrawBalanceContract"),
    (14, "UnfreezeAssetContract"),
    (15, "UpdateAssetContract"),
    (16, "ProposalCreateContract"),
    (17, "ProposalApproveContract"),
    (18, "ProposalDeleteContract"),
    (19, "SetAccountIdContract"),
    (20, "CustomContract"),
    (30, "CreateSmartContract"),
    (31, "TriggerSmartContract"),
    (32, "GetContract"),
    (33, "UpdateSettingContract"),
    (41, "ExchangeCreateContract"),
    (42, "ExchangeInjectContract"),
    (43, "ExchangeWithdrawContract"),
    (44, "ExchangeTransactionContract"),
    (45, "UpdateEnergyLimitContract"),
    (46, "AccountPermissionUpdateContract"),
    (48, "ClearABIContract"),
    (49, "UpdateBrokerageContract"),
    (51, "ShieldedTransferContract"),
    (52, "MarketSellAssetContract"),
    (53, "MarketCancelOrderContract"),
    (54, "FreezeBalanceV2Contract"),
    (55, "UnfreezeBalanceV2Contract"),
    (56, "WithdrawExpireUnfreezeContract"),
    (57, "DelegateResourceContract"),
    (58, "UnDelegateResourceContract"),
    (59, "CancelAllUnfreezeV2Contract"),
];

pub fn contract_type_name(code: i32) -> Option<&'static str> {
    CONTRACT_TYPES
        .iter()
        .find(|(c, _)| *c == code)
        .map(|(_, name)| *name)
}

pub fn contract_type_code(name: &str) -> Option<i32> {
    CONTRACT_TYPES
        .iter()
        .find(|(_, n)| *n == name)
        .map(|(code, _)| *code)
}

/// `type_url` carried by `Any` parameters of the given contract type.
pub fn type_url(type_name: &str) -> String {
    format!("type.googleapis.com/protocol.{type_name}")
}
