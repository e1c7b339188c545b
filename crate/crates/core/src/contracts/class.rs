use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MainCategory {
    Assets,
    Account,
    #[serde(rename = "DEX")]
    Dex,
    Government,
    Unknown,
}

impl MainCategory {
    pub fn name(self) -> &'static str {
        match self {
            MainCategory::Assets => "Assets",
            MainCategory::Account => "Account",
            MainCategory::Dex => "DEX",
            MainCategory::Government => "Government",
            MainCategory::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for MainCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubCategory {
    Trc10,
    Transfer,
    Staking,
    Eoas,
    SmartContracts,
    Resource,
    Exchange,
    Market,
    Proposal,
    SrVoting,
}

impl SubCategory {
    pub fn name(self) -> &'static str {
        match self {
            SubCategory::Trc10 => "TRC10",
            SubCategory::Transfer => "Transfer",
            SubCategory::Staking => "Staking",
            SubCategory::Eoas => "EOAs",
            SubCategory::SmartContracts => "SmartContracts",
            SubCategory::Resource => "Resource",
            SubCategory::Exchange => "Exchange",
            SubCategory::Market => "Market",
            SubCategory::Proposal => "Proposal",
            SubCategory::SrVoting => "SR Voting",
        }
    }
}

impl fmt::Display for SubCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Table receiving parameters of unclassified or undecodable contracts.
pub const UNKNOWN_TABLE: &str = "unknownContracts";

macro_rules! contract_kinds {
    ($($variant:ident => $type_name:literal, $main:ident, $sub:ident, $table:literal;)*) => {
        /// The classified system-contract types, one parameter table each.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ContractKind {
            $($variant,)*
        }

        impl ContractKind {
            pub const ALL: &'static [ContractKind] = &[$(ContractKind::$variant,)*];

            /// Protocol `ContractType` name, e.g. `TransferContract`.
            pub fn type_name(self) -> &'static str {
                match self {
                    $(ContractKind::$variant => $type_name,)*
                }
            }

            pub fn main_category(self) -> MainCategory {
                match self {
                    $(ContractKind::$variant => MainCategory::$main,)*
                }
            }

            pub fn sub_category(self) -> SubCategory {
                match self {
                    $(ContractKind::$variant => SubCategory::$sub,)*
                }
            }

            pub fn table_name(self) -> &'static str {
                match self {
                    $(ContractKind::$variant => $table,)*
                }
            }

            pub fn from_type_name(name: &str) -> Option<Self> {
                match name {
                    $($type_name => Some(ContractKind::$variant),)*
                    _ => None,
                }
            }

            pub fn from_table_name(name: &str) -> Option<Self> {
                match name {
                    $($table => Some(ContractKind::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

contract_kinds! {
    AssetIssue => "AssetIssueContract", Assets, Trc10, "assetIssueContracts";
    ParticipateAssetIssue => "ParticipateAssetIssueContract", Assets, Trc10, "participateAssetIssueContracts";
    UpdateAsset => "UpdateAssetContract", Assets, Trc10, "updateAssetContracts";
    Transfer => "TransferContract", Assets, Transfer, "transferContracts";
    TransferAsset => "TransferAssetContract", Assets, Transfer, "transferAssetContracts";
    ShieldedTransfer => "ShieldedTransferContract", Assets, Transfer, "shieldedTransferContracts";
    CancelAllUnfreezeV2 => "CancelAllUnfreezeV2Contract", Assets, Staking, "cancelAllUnfreezeV2Contracts";
    FreezeBalance => "FreezeBalanceContract", Assets, Staking, "freezeBalanceContracts";
    FreezeBalanceV2 => "FreezeBalanceV2Contract", Assets, Staking, "freezeBalanceV2Contracts";
    UnfreezeAsset => "UnfreezeAssetContract", Assets, Staking, "unfreezeAssetContracts";
    UnfreezeBalance => "UnfreezeBalanceContract", Assets, Staking, "unfreezeBalanceContracts";
    UnfreezeBalanceV2 => "UnfreezeBalanceV2Contract", Assets, Staking, "unfreezeBalanceV2Contracts";
    WithdrawBalance => "WithdrawBalanceContract", Assets, Staking, "withdrawBalanceContracts";
    AccountCreate => "AccountCreateContract", Account, Eoas, "accountCreateContracts";
    AccountPermissionUpdate => "AccountPermissionUpdateContract", Account, Eoas, "accountPermissionUpdateContracts";
    AccountUpdate => "AccountUpdateContract", Account, Eoas, "accountUpdateContracts";
    SetAccountId => "SetAccountIdContract", Account, Eoas, "setAccountIdContracts";
    UpdateSetting => "UpdateSettingContract", Account, Eoas, "updateSettingContracts";
    ClearAbi => "ClearABIContract", Account, SmartContracts, "clearAbiContracts";
    CreateSmartContract => "CreateSmartContract", Account, SmartContracts, "createSmartContracts";
    TriggerSmartContract => "TriggerSmartContract", Account, SmartContracts, "triggerSmartContracts";
    DelegateResource => "DelegateResourceContract", Account, Resource, "delegateResourceContracts";
    UnDelegateResource => "UnDelegateResourceContract", Account, Resource, "undelegateResourceContracts";
    UpdateBrokerage => "UpdateBrokerageContract", Account, Resource, "updateBrokerageContracts";
    UpdateEnergyLimit => "UpdateEnergyLimitContract", Account, Resource, "updateEnergyLimitContracts";
    WithdrawExpireUnfreeze => "WithdrawExpireUnfreezeContract", Account, Resource, "withdrawExpireUnfreezeContracts";
    ExchangeCreate => "ExchangeCreateContract", Dex, Exchange, "exchangeCreateContracts";
    ExchangeInject => "ExchangeInjectContract", Dex, Exchange, "exchangeInjectContracts";
    ExchangeTransaction => "ExchangeTransactionContract", Dex, Exchange, "exchangeTransactionContracts";
    ExchangeWithdraw => "ExchangeWithdrawContract", Dex, Exchange, "exchangeWithdrawContracts";
    MarketCancelOrder => "MarketCancelOrderContract", Dex, Market, "marketCancelOrderContracts";
    MarketSellAsset => "MarketSellAssetContract", Dex, Market, "marketSellAssetContracts";
    ProposalApprove => "ProposalApproveContract", Government, Proposal, "proposalApproveContracts";
    ProposalCreate => "ProposalCreateContract", Government, Proposal, "proposalCreateContracts";
    ProposalDelete => "ProposalDeleteContract", Government, Proposal, "proposalDeleteContracts";
    VoteWitness => "VoteWitnessContract", Government, SrVoting, "voteWitnessContracts";
    VoteAsset => "VoteAssetContract", Government, SrVoting, "voteAssetContracts";
    WitnessCreate => "WitnessCreateContract", Government, SrVoting, "witnessCreateContracts";
    WitnessUpdate => "WitnessUpdateContract", Government, SrVoting, "witnessUpdateContracts";
}

impl fmt::Display for ContractKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.type_name())
    }
}

/// Classification of a contract type name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ContractClass {
    pub type_name: String,
    #[serde(skip)]
    pub kind: Option<ContractKind>,
    pub main_category: MainCategory,
    pub sub_category: Option<SubCategory>,
    pub table_name: &'static str,
}

impl ContractClass {
    pub fn is_fallback(&self) -> bool {
        self.kind.is_none()
    }
}

/// Total classifier: unknown names map to the fallback class.
pub fn classify(type_name: &str) -> ContractClass {
    match ContractKind::from_type_name(type_name) {
        Some(kind) => ContractClass {
            type_name: type_name.to_owned(),
            kind: Some(kind),
            main_category: kind.main_category(),
            sub_category: Some(kind.sub_category()),
            table_name: kind.table_name(),
        },
        None => ContractClass {
            type_name: type_name.to_owned(),
            kind: None,
            main_category: MainCategory::Unknown,
            sub_category: None,
            table_name: UNKNOWN_TABLE,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_names_unique() {
        for (i, k) in ContractKind::ALL.iter().enumerate() {
            assert!(
                ContractKind::ALL[..i]
                    .iter()
                    .all(|o| o.table_name() != k.table_name())
            );
            assert_ne!(k.table_name(), UNKNOWN_TABLE);
        }
    }

    #[test]
    fn names_round_trip() {
        for &k in ContractKind::ALL {
            assert_eq!(ContractKind::from_type_name(k.type_name()), Some(k));
            assert_eq!(ContractKind::from_table_name(k.table_name()), Some(k));
            assert!(crate::proto::contract_type_code(k.type_name()).is_some());
        }
    }

    #[test]
    fn unknown_names_fall_back() {
        let c = classify("SomeFutureContract");
        assert!(c.is_fallback());
        assert_eq!(c.main_category, MainCategory::Unknown);
        assert_eq!(c.table_name, UNKNOWN_TABLE);
        assert!(classify("CustomContract").is_fallback());
    }
}
