//! Deterministic synthetic chain generator. Produces wire-encoded blocks and
//! info lists plus a ground-truth manifest of what they contain.

use std::collections::BTreeMap;
use std::path::Path;

use prost::Message;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chain::{ADDRESS_VERSION, Address, EventSignature, function_selector};
use crate::contracts::ContractKind;
use crate::node::{
    BlockPair, FixtureArchive, FixtureError, MemorySource, RawBlockMessage, RawInfoMessage,
    write_archive,
};
use crate::proto::api::{BlockExtention, TransactionExtention, TransactionInfoList};
use crate::proto::contract as pc;
use crate::proto::core::{
    AccountId, Any, Authority, BlockHeader, BlockHeaderRaw, CallValueInfo, Contract,
    InternalTransaction, Log, MarketOrderDetail, ResourceReceipt, Transaction, TransactionInfo,
    TransactionRaw, TransactionResult,
};
use crate::schema::{BLOCKS, EVENTS, INTERNALS, TRANSACTIONS};

/// The USDT contract on mainnet.
pub const USDT_ADDRESS: &str = "41a614f803b6fd780986a42c78ec9c7f77e6ded13c";

/// Genesis timestamp of the synthetic chain, 2024-04-01T00:00:00Z.
pub const GENESIS_TIMESTAMP_MS: i64 = 1_711_929_600_000;

const BLOCK_INTERVAL_MS: i64 = 3_000;

const USDT_EVENTS: [(&str, u32); 7] = [
    ("Transfer(address,address,uint256)", 800),
    ("Approval(address,address,uint256)", 120),
    ("AddedBlackList(address)", 15),
    ("RemovedBlackList(address)", 10),
    ("DestroyedBlackFunds(address,uint256)", 10),
    ("Issue(uint256)", 25),
    ("Redeem(uint256)", 20),
];

const TRC10_NAMES: [&[u8]; 6] = [
    b"1002000",
    b"BitTorrent",
    b"WINK",
    b"SEED",
    b"www.example-casino.win",
    &[0xff, 0xfe, 0x42, 0x00],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SynthMode {
    /// Mainnet-like mix dominated by smart contract calls.
    Mixed,
    /// Every classified contract type, one instance each, in block 1.
    AllTypes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SynthConfig {
    pub seed: u64,
    /// Number of blocks, genesis included.
    pub blocks: u64,
    /// Transactions per non-genesis block are drawn from `0..=2*avg`.
    pub avg_txs_per_block: u32,
    pub witnesses: u32,
    pub mode: SynthMode,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seed: 7,
            blocks: 100,
            avg_txs_per_block: 10,
            witnesses: 4,
            mode: SynthMode::Mixed,
        }
    }
}

impl SynthConfig {
    pub fn mixed(seed: u64, blocks: u64) -> Self {
        SynthConfig {
            seed,
            blocks,
            ..Self::default()
        }
    }

    pub fn all_types(seed: u64) -> Self {
        SynthConfig {
            seed,
            blocks: 2,
            mode: SynthMode::AllTypes,
            ..Self::default()
        }
    }
}

/// A receipt value the generator pins so copy-through can be checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PinnedReceipt {
    pub block_num: u64,
    pub transaction_index: u32,
    pub energy_usage: u64,
    pub fee: u64,
}

/// What the generated chain contains.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GroundTruth {
    pub start: u64,
    pub end: u64,
    /// Rows per table, every registered table listed.
    pub table_counts: BTreeMap<String, u64>,
    pub type_counts: BTreeMap<String, u64>,
    /// USDT events by event name.
    pub usdt_event_counts: BTreeMap<String, u64>,
    /// Blocks produced per witness address (hex).
    pub witness_counts: BTreeMap<String, u64>,
    pub transactions_per_block: Vec<u64>,
    pub logs_by_topic_count: BTreeMap<u32, u64>,
    pub pinned_receipt: Option<PinnedReceipt>,
}

impl GroundTruth {
    pub fn table_count(&self, table: &str) -> u64 {
        self.table_counts.get(table).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct SynthChain {
    pub config: SynthConfig,
    pub pairs: Vec<BlockPair>,
    pub truth: GroundTruth,
}

impl SynthChain {
    pub fn source(&self) -> MemorySource {
        MemorySource::new(
            self.pairs.iter().map(|p| p.block.bytes.clone()).collect(),
            self.pairs.iter().map(|p| p.info.bytes.clone()).collect(),
        )
    }

    /// Writes the chain as a fixture archive plus `truth.json`.
    pub fn write_fixture(&self, dir: impl AsRef<Path>) -> Result<FixtureArchive, FixtureError> {
        let dir = dir.as_ref();
        let archive = write_archive(dir, &format!("synthetic:seed={}", self.config.seed), &self.pairs)?;
        let path = dir.join("truth.json");
        std::fs::write(&path, serde_json::to_vec_pretty(&self.truth).expect("truth serializes"))
            .map_err(|source| FixtureError::Io { path, source })?;
        Ok(archive)
    }
}

struct Generator {
    rng: ChaCha8Rng,
    accounts: Vec<[u8; 21]>,
    contracts: Vec<[u8; 21]>,
    witnesses: Vec<[u8; 21]>,
    usdt: [u8; 21],
    usdt_topics: Vec<([u8; 32], String)>,
    usdt_weights: Vec<u32>,
    truth: GroundTruth,
}

fn address(rng: &mut ChaCha8Rng) -> [u8; 21] {
    let mut a = [0u8; 21];
    a[0] = ADDRESS_VERSION;
    rng.fill_bytes(&mut a[1..]);
    a
}

fn sha256(data: &[u8]) -> [u8; 32] {
    Sha256::digest(data).into()
}

fn word(tail: &[u8]) -> Vec<u8> {
    let mut w = vec![0u8; 32 - tail.len()];
    w.extend_from_slice(tail);
    w
}

/// Weighted contract mix for mixed mode; the remainder is spread over every
/// other classified type.
const MIX: [(ContractKind, u32); 8] = [
    (ContractKind::TriggerSmartContract, 520),
    (ContractKind::Transfer, 200),
    (ContractKind::TransferAsset, 80),
    (ContractKind::DelegateResource, 50),
    (ContractKind::UnDelegateResource, 20),
    (ContractKind::FreezeBalanceV2, 30),
    (ContractKind::VoteWitness, 30),
    (ContractKind::CreateSmartContract, 10),
];
const MIX_OTHER: u32 = 60;

impl Generator {
    fn new(config: &SynthConfig) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let accounts = (0..200).map(|_| address(&mut rng)).collect();
        let contracts = (0..20).map(|_| address(&mut rng)).collect();
        let witnesses = (0..config.witnesses.max(1)).map(|_| address(&mut rng)).collect();
        let usdt: [u8; 21] = hex::decode(USDT_ADDRESS).unwrap().try_into().unwrap();
        let usdt_topics = USDT_EVENTS
            .iter()
            .map(|(sig, _)| {
                let s = EventSignature::new(sig).expect("builtin signature");
                (*s.topic0().as_bytes(), s.name().to_owned())
            })
            .collect();
        Generator {
            rng,
            accounts,
            contracts,
            witnesses,
            usdt,
            usdt_topics,
            usdt_weights: USDT_EVENTS.iter().map(|(_, w)| *w).collect(),
            truth: GroundTruth::default(),
        }
    }

    fn account(&mut self) -> Vec<u8> {
        let i = self.rng.random_range(0..self.accounts.len());
        self.accounts[i].to_vec()
    }

    fn contract(&mut self) -> Vec<u8> {
        let i = self.rng.random_range(0..self.contracts.len());
        self.contracts[i].to_vec()
    }

    fn bytes(&mut self, n: usize) -> Vec<u8> {
        let mut v = vec![0u8; n];
        self.rng.fill_bytes(&mut v);
        v
    }

    fn amount(&mut self) -> i64 {
        self.rng.random_range(1..10_000_000_000)
    }

    fn pick_kind(&mut self) -> ContractKind {
        let total: u32 = MIX.iter().map(|(_, w)| w).sum::<u32>() + MIX_OTHER;
        let mut roll = self.rng.random_range(0..total);
        for (kind, w) in MIX {
            if roll < w {
                return kind;
            }
            roll -= w;
        }
        let others: Vec<ContractKind> = ContractKind::ALL
            .iter()
            .copied()
            .filter(|k| !MIX.iter().any(|(m, _)| m == k))
            .collect();
        others[self.rng.random_range(0..others.len())]
    }

    fn trc10_name(&mut self) -> Vec<u8> {
        TRC10_NAMES[self.rng.random_range(0..TRC10_NAMES.len())].to_vec()
    }

    fn permission(&mut self, ty: i32, id: i32) -> pc::Permission {
        let keys = (0..self.rng.random_range(1..=3))
            .map(|_| pc::Key {
                address: self.account(),
                weight: self.rng.random_range(1..5),
            })
            .collect();
        pc::Permission {
            r#type: ty,
            id,
            permission_name: ["owner", "witness", "active"][ty as usize].into(),
            threshold: 1,
            parent_id: 0,
            operations: if ty == 2 { self.bytes(32) } else { Vec::new() },
            keys,
        }
    }

    /// A well-formed parameter for `kind`. Returns the encoded message and,
    /// for smart contract calls, the called contract.
    fn parameter(&mut self, kind: ContractKind) -> (Vec<u8>, Option<Vec<u8>>) {
        use ContractKind as K;
        let owner = self.account();
        let owner_only = |o: Vec<u8>| pc::WithdrawBalanceContract { owner_address: o }.encode_to_vec();
        let bytes = match kind {
            K::AssetIssue => pc::AssetIssueContract {
                id: format!("{}", 1_000_000 + self.rng.random_range(0..9999)),
                owner_address: owner,
                name: self.trc10_name(),
                abbr: b"TKN".to_vec(),
                total_supply: self.amount(),
                frozen_supply: vec![pc::FrozenSupply {
                    frozen_amount: 1000,
                    frozen_days: 3,
                }],
                trx_num: 1,
                precision: 6,
                num: 1,
                start_time: GENESIS_TIMESTAMP_MS,
                end_time: GENESIS_TIMESTAMP_MS + 86_400_000,
                order: 0,
                vote_score: 0,
                description: b"synthetic token".to_vec(),
                url: b"https://example.org".to_vec(),
                free_asset_net_limit: 0,
                public_free_asset_net_limit: 0,
                public_free_asset_net_usage: 0,
                public_latest_free_net_time: 0,
            }
            .encode_to_vec(),
            K::ParticipateAssetIssue => pc::ParticipateAssetIssueContract {
                owner_address: owner,
                to_address: self.account(),
                asset_name: self.trc10_name(),
                amount: self.amount(),
            }
            .encode_to_vec(),
            K::UpdateAsset => pc::UpdateAssetContract {
                owner_address: owner,
                description: b"updated".to_vec(),
                url: b"https://example.org/new".to_vec(),
                new_limit: 5000,
                new_public_limit: 10000,
            }
            .encode_to_vec(),
            K::Transfer => pc::TransferContract {
                owner_address: owner,
                to_address: self.account(),
                amount: self.amount(),
            }
            .encode_to_vec(),
            K::TransferAsset => pc::TransferAssetContract {
                asset_name: self.trc10_name(),
                owner_address: owner,
                to_address: self.account(),
                amount: self.amount(),
            }
            .encode_to_vec(),
            K::ShieldedTransfer => pc::ShieldedTransferContract {
                transparent_from_address: owner,
                from_amount: self.amount(),
                spend_description: vec![pc::SpendDescription {
                    value_commitment: self.bytes(32),
                    anchor: self.bytes(32),
                    nullifier: self.bytes(32),
                    rk: self.bytes(32),
                    zkproof: self.bytes(192),
                    spend_authority_signature: self.bytes(64),
                }],
                receive_description: vec![pc::ReceiveDescription {
                    value_commitment: self.bytes(32),
                    note_commitment: self.bytes(32),
                    epk: self.bytes(32),
                    c_enc: self.bytes(580),
                    c_out: self.bytes(80),
                    zkproof: self.bytes(192),
                }],
                binding_signature: self.bytes(64),
                transparent_to_address: Vec::new(),
                to_amount: 0,
            }
            .encode_to_vec(),
            K::CancelAllUnfreezeV2
            | K::UnfreezeAsset
            | K::WithdrawBalance
            | K::WithdrawExpireUnfreeze => owner_only(owner),
            K::FreezeBalance => pc::FreezeBalanceContract {
                owner_address: owner,
                frozen_balance: self.amount(),
                frozen_duration: 3,
                resource: self.rng.random_range(0..2),
                receiver_address: self.account(),
            }
            .encode_to_vec(),
            K::FreezeBalanceV2 => pc::FreezeBalanceV2Contract {
                owner_address: owner,
                frozen_balance: self.amount(),
                resource: self.rng.random_range(0..2),
            }
            .encode_to_vec(),
            K::UnfreezeBalance => pc::UnfreezeBalanceContract {
                owner_address: owner,
                resource: self.rng.random_range(0..2),
                receiver_address: Vec::new(),
            }
            .encode_to_vec(),
            K::UnfreezeBalanceV2 => pc::UnfreezeBalanceV2Contract {
                owner_address: owner,
                unfreeze_balance: self.amount(),
                resource: self.rng.random_range(0..2),
            }
            .encode_to_vec(),
            K::AccountCreate => pc::AccountCreateContract {
                owner_address: owner,
                account_address: address(&mut self.rng).to_vec(),
                r#type: 0,
            }
            .encode_to_vec(),
            K::AccountPermissionUpdate => pc::AccountPermissionUpdateContract {
                owner_address: owner,
                owner: Some(self.permission(0, 0)),
                witness: None,
                actives: vec![self.permission(2, 2)],
            }
            .encode_to_vec(),
            K::AccountUpdate => pc::AccountUpdateContract {
                account_name: b"synthetic-account".to_vec(),
                owner_address: owner,
            }
            .encode_to_vec(),
            K::SetAccountId => pc::SetAccountIdContract {
                account_id: b"synthid01".to_vec(),
                owner_address: owner,
            }
            .encode_to_vec(),
            K::UpdateSetting => pc::UpdateSettingContract {
                owner_address: owner,
                contract_address: self.contract(),
                consume_user_resource_percent: 50,
            }
            .encode_to_vec(),
            K::ClearAbi => pc::ClearAbiContract {
                owner_address: owner,
                contract_address: self.contract(),
            }
            .encode_to_vec(),
            K::CreateSmartContract => {
                let len = self.rng.random_range(64..512);
                let bytecode = self.bytes(len);
                pc::CreateSmartContract {
                    owner_address: owner.clone(),
                    new_contract: Some(pc::SmartContract {
                        origin_address: owner,
                        contract_address: address(&mut self.rng).to_vec(),
                        abi: Vec::new(),
                        bytecode,
                        call_value: 0,
                        consume_user_resource_percent: 100,
                        name: "Synthetic".into(),
                        origin_energy_limit: 10_000_000,
                        code_hash: Vec::new(),
                        trx_hash: Vec::new(),
                        version: 0,
                    }),
                    call_token_value: 0,
                    token_id: 0,
                }
                .encode_to_vec()
            }
            K::TriggerSmartContract => {
                let to_usdt = self.rng.random_bool(0.6);
                let target = if to_usdt { self.usdt.to_vec() } else { self.contract() };
                let mut data = function_selector("transfer(address,uint256)").to_vec();
                data.extend(word(&self.account()[1..]));
                data.extend(word(&self.amount().to_be_bytes()));
                let bytes = pc::TriggerSmartContract {
                    owner_address: owner,
                    contract_address: target.clone(),
                    call_value: if to_usdt { 0 } else { self.rng.random_range(0..1000) },
                    data,
                    call_token_value: 0,
                    token_id: 0,
                }
                .encode_to_vec();
                return (bytes, Some(target));
            }
            K::DelegateResource => pc::DelegateResourceContract {
                owner_address: owner,
                resource: self.rng.random_range(0..2),
                balance: self.amount(),
                receiver_address: self.account(),
                lock: self.rng.random_bool(0.3),
                lock_period: 0,
            }
            .encode_to_vec(),
            K::UnDelegateResource => pc::UnDelegateResourceContract {
                owner_address: owner,
                resource: self.rng.random_range(0..2),
                balance: self.amount(),
                receiver_address: self.account(),
            }
            .encode_to_vec(),
            K::UpdateBrokerage => pc::UpdateBrokerageContract {
                owner_address: owner,
                brokerage: 20,
            }
            .encode_to_vec(),
            K::UpdateEnergyLimit => pc::UpdateEnergyLimitContract {
                owner_address: owner,
                contract_address: self.contract(),
                origin_energy_limit: 10_000_000,
            }
            .encode_to_vec(),
            K::ExchangeCreate => pc::ExchangeCreateContract {
                owner_address: owner,
                first_token_id: b"_".to_vec(),
                first_token_balance: self.amount(),
                second_token_id: b"1002000".to_vec(),
                second_token_balance: self.amount(),
            }
            .encode_to_vec(),
            K::ExchangeInject => pc::ExchangeInjectContract {
                owner_address: owner,
                exchange_id: self.rng.random_range(1..50),
                token_id: b"1002000".to_vec(),
                quant: self.amount(),
            }
            .encode_to_vec(),
            K::ExchangeTransaction => pc::ExchangeTransactionContract {
                owner_address: owner,
                exchange_id: self.rng.random_range(1..50),
                token_id: b"_".to_vec(),
                quant: self.amount(),
                expected: 1,
            }
            .encode_to_vec(),
            K::ExchangeWithdraw => pc::ExchangeWithdrawContract {
                owner_address: owner,
                exchange_id: self.rng.random_range(1..50),
                token_id: b"1002000".to_vec(),
                quant: self.amount(),
            }
            .encode_to_vec(),
            K::MarketCancelOrder => pc::MarketCancelOrderContract {
                owner_address: owner,
                order_id: self.bytes(32),
            }
            .encode_to_vec(),
            K::MarketSellAsset => pc::MarketSellAssetContract {
                owner_address: owner,
                sell_token_id: b"_".to_vec(),
                sell_token_quantity: self.amount(),
                buy_token_id: b"1002000".to_vec(),
                buy_token_quantity: self.amount(),
            }
            .encode_to_vec(),
            K::ProposalApprove => pc::ProposalApproveContract {
                owner_address: owner,
                proposal_id: self.rng.random_range(1..100),
                is_add_approval: true,
            }
            .encode_to_vec(),
            K::ProposalCreate => pc::ProposalCreateContract {
                owner_address: owner,
                parameters: [(0, 1_000_000), (11, 420)].into_iter().collect(),
            }
            .encode_to_vec(),
            K::ProposalDelete => pc::ProposalDeleteContract {
                owner_address: owner,
                proposal_id: self.rng.random_range(1..100),
            }
            .encode_to_vec(),
            K::VoteWitness => {
                let n = self.rng.random_range(1..=3);
                let votes = (0..n)
                    .map(|_| pc::Vote {
                        vote_address: self.witnesses[self.rng.random_range(0..self.witnesses.len())]
                            .to_vec(),
                        vote_count: self.rng.random_range(1..100_000),
                    })
                    .collect();
                pc::VoteWitnessContract {
                    owner_address: owner,
                    votes,
                    support: true,
                }
                .encode_to_vec()
            }
            K::VoteAsset => pc::VoteAssetContract {
                owner_address: owner,
                vote_address: vec![self.account(), self.account()],
                support: true,
                count: 2,
            }
            .encode_to_vec(),
            K::WitnessCreate => pc::WitnessCreateContract {
                owner_address: owner,
                url: b"https://sr.example.org".to_vec(),
            }
            .encode_to_vec(),
            K::WitnessUpdate => pc::WitnessUpdateContract {
                owner_address: owner,
                update_url: b"https://sr.example.org/v2".to_vec(),
            }
            .encode_to_vec(),
        };
        (bytes, None)
    }

    fn usdt_log(&mut self) -> Log {
        let total: u32 = self.usdt_weights.iter().sum();
        let mut roll = self.rng.random_range(0..total);
        let mut idx = 0;
        for (i, w) in self.usdt_weights.iter().enumerate() {
            if roll < *w {
                idx = i;
                break;
            }
            roll -= w;
        }
        let (topic0, name) = self.usdt_topics[idx].clone();
        *self.truth.usdt_event_counts.entry(name).or_default() += 1;
        let mut topics = vec![topic0.to_vec()];
        let mut data = Vec::new();
        match idx {
            // Transfer, Approval: two indexed addresses and an amount.
            0 | 1 => {
                topics.push(word(&self.account()[1..]));
                topics.push(word(&self.account()[1..]));
                data = word(&self.amount().to_be_bytes());
            }
            2 | 3 => data = word(&self.account()[1..]),
            4 => {
                data = word(&self.account()[1..]);
                data.extend(word(&self.amount().to_be_bytes()));
            }
            _ => data.extend(word(&self.amount().to_be_bytes())),
        }
        Log {
            address: self.usdt[1..].to_vec(),
            topics,
            data,
        }
    }

    fn other_log(&mut self) -> Log {
        let n = self.rng.random_range(0..=4);
        let words = self.rng.random_range(0..3);
        Log {
            address: self.contract()[1..].to_vec(),
            topics: (0..n).map(|_| self.bytes(32)).collect(),
            data: self.bytes(words * 32),
        }
    }

    fn internal(&mut self, caller: &[u8]) -> InternalTransaction {
        let n = self.rng.random_range(1..=2);
        let call_value_info = (0..n)
            .map(|i| CallValueInfo {
                call_value: self.rng.random_range(0..1_000_000),
                token_id: if i == 0 { String::new() } else { "1002000".into() },
            })
            .collect();
        InternalTransaction {
            hash: self.bytes(32),
            caller_address: caller.to_vec(),
            transfer_to_address: self.account(),
            call_value_info,
            note: b"call".to_vec(),
            rejected: self.rng.random_bool(0.05),
            extra: String::new(),
        }
    }

    fn count(&mut self, table: &str, n: u64) {
        *self.truth.table_counts.entry(table.to_owned()).or_default() += n;
    }

    #[allow(clippy::too_many_lines)]
    fn transaction(
        &mut self,
        kind: ContractKind,
        height: u64,
        index: u32,
        timestamp: i64,
        parent: &[u8],
    ) -> (TransactionExtention, TransactionInfo) {
        let (param, target) = self.parameter(kind);
        let type_code = crate::proto::contract_type_code(kind.type_name()).expect("known code");
        let is_trigger = target.is_some();
        let auths = if self.rng.random_bool(0.02) {
            vec![Authority {
                account: Some(AccountId {
                    name: b"multisig".to_vec(),
                    address: self.account(),
                }),
                permission_name: b"active".to_vec(),
            }]
        } else {
            Vec::new()
        };
        let raw = TransactionRaw {
            ref_block_bytes: (height.saturating_sub(1) as u16).to_be_bytes().to_vec(),
            ref_block_num: 0,
            ref_block_hash: parent.get(8..16).unwrap_or_default().to_vec(),
            expiration: timestamp + 60_000,
            auths,
            data: Vec::new(),
            contract: vec![Contract {
                r#type: type_code,
                parameter: Some(Any {
                    type_url: crate::proto::type_url(kind.type_name()),
                    value: param,
                }),
                provider: Vec::new(),
                contract_name: Vec::new(),
                permission_id: 0,
            }],
            scripts: Vec::new(),
            timestamp: timestamp - 1_000,
            fee_limit: if is_trigger { 100_000_000 } else { 0 },
        };
        let raw_bytes = raw.encode_to_vec();
        let txid = sha256(&raw_bytes);

        let reverted = is_trigger && self.rng.random_bool(0.05);
        let mut receipt = ResourceReceipt {
            energy_usage: 0,
            energy_fee: 0,
            origin_energy_usage: 0,
            energy_usage_total: 0,
            net_usage: self.rng.random_range(200..400),
            net_fee: 0,
            result: if is_trigger { if reverted { 2 } else { 1 } } else { 0 },
            energy_penalty_total: 0,
        };
        let mut fee = 0;
        let mut logs = Vec::new();
        let mut internals = Vec::new();
        if let Some(target) = &target {
            receipt.energy_usage = self.rng.random_range(0..20_000);
            receipt.energy_fee = self.rng.random_range(0..5_000_000);
            receipt.energy_usage_total = receipt.energy_usage + receipt.energy_fee / 420;
            fee = receipt.energy_fee;
            if !reverted {
                let n_logs = self.rng.random_range(0..=7);
                for _ in 0..n_logs {
                    let log = if target[..] == self.usdt[..] {
                        self.usdt_log()
                    } else {
                        self.other_log()
                    };
                    *self
                        .truth
                        .logs_by_topic_count
                        .entry(log.topics.len() as u32)
                        .or_default() += 1;
                    logs.push(log);
                }
                let n_internal = self.rng.random_range(0..=2);
                internals = (0..n_internal).map(|_| self.internal(target)).collect();
            }
        }
        if self.truth.pinned_receipt.is_none() {
            receipt.energy_usage = 13_940;
            fee = 345_000;
            self.truth.pinned_receipt = Some(PinnedReceipt {
                block_num: height,
                transaction_index: index,
                energy_usage: 13_940,
                fee: 345_000,
            });
        }
        self.count(EVENTS, logs.len() as u64);
        self.count(INTERNALS, internals.len() as u64);

        let market = kind == ContractKind::MarketSellAsset;
        let info = TransactionInfo {
            id: txid.to_vec(),
            fee,
            block_number: height as i64,
            block_time_stamp: timestamp,
            contract_result: vec![Vec::new()],
            contract_address: target.clone().unwrap_or_default(),
            receipt: Some(receipt),
            log: logs,
            result: i32::from(reverted),
            res_message: if reverted { b"REVERT opcode executed".to_vec() } else { Vec::new() },
            asset_issue_id: if kind == ContractKind::AssetIssue { "1000001".into() } else { String::new() },
            withdraw_amount: if kind == ContractKind::WithdrawBalance { self.amount() } else { 0 },
            unfreeze_amount: if kind == ContractKind::UnfreezeBalance { self.amount() } else { 0 },
            internal_transactions: internals,
            exchange_received_amount: if kind == ContractKind::ExchangeTransaction {
                self.amount()
            } else {
                0
            },
            exchange_inject_another_amount: 0,
            exchange_withdraw_another_amount: 0,
            exchange_id: if kind == ContractKind::ExchangeCreate { 7 } else { 0 },
            shielded_transaction_fee: 0,
            order_id: if market { self.bytes(32) } else { Vec::new() },
            order_details: if market {
                vec![MarketOrderDetail {
                    maker_order_id: self.bytes(32),
                    taker_order_id: self.bytes(32),
                    fill_sell_quantity: 10,
                    fill_buy_quantity: 20,
                }]
            } else {
                Vec::new()
            },
            packing_fee: 0,
            withdraw_expire_amount: 0,
            cancel_unfreeze_v2_amount: Default::default(),
        };
        let signature = self.bytes(65);
        let tx = TransactionExtention {
            transaction: Some(Transaction {
                raw_data: Some(raw),
                signature: vec![signature],
                ret: vec![TransactionResult {
                    fee: 0,
                    ret: 0,
                    contract_ret: if reverted { 2 } else { 1 },
                }],
            }),
            txid: txid.to_vec(),
            constant_result: Vec::new(),
            result: None,
            energy_used: 0,
            logs: Vec::new(),
            internal_transactions: Vec::new(),
            energy_penalty: 0,
        };
        *self
            .truth
            .type_counts
            .entry(kind.type_name().to_owned())
            .or_default() += 1;
        self.count(kind.table_name(), 1);
        (tx, info)
    }
}

/// Generates the chain described by `config`, from genesis.
pub fn generate(config: &SynthConfig) -> SynthChain {
    let mut g = Generator::new(config);
    for table in crate::schema::table_names() {
        g.truth.table_counts.insert(table.to_owned(), 0);
    }
    let mut pairs = Vec::with_capacity(config.blocks as usize);
    let mut parent = vec![0u8; 32];
    for height in 0..config.blocks {
        let timestamp = GENESIS_TIMESTAMP_MS + height as i64 * BLOCK_INTERVAL_MS;
        let kinds: Vec<ContractKind> = match (config.mode, height) {
            (_, 0) => Vec::new(),
            (SynthMode::AllTypes, 1) => ContractKind::ALL.to_vec(),
            (SynthMode::AllTypes, _) => Vec::new(),
            (SynthMode::Mixed, _) => {
                let n = g.rng.random_range(0..=2 * config.avg_txs_per_block);
                (0..n).map(|_| g.pick_kind()).collect()
            }
        };
        let mut txs = Vec::with_capacity(kinds.len());
        let mut infos = Vec::with_capacity(kinds.len());
        for (i, kind) in kinds.into_iter().enumerate() {
            let (tx, info) = g.transaction(kind, height, i as u32, timestamp, &parent);
            txs.push(tx);
            infos.push(info);
        }

        let mut trie_input = Vec::new();
        for tx in &txs {
            trie_input.extend_from_slice(&tx.txid);
        }
        let witness = g.witnesses[(height % g.witnesses.len() as u64) as usize];
        let raw = BlockHeaderRaw {
            timestamp,
            tx_trie_root: if txs.is_empty() { vec![0; 32] } else { sha256(&trie_input).to_vec() },
            parent_hash: parent.clone(),
            number: height as i64,
            witness_id: 0,
            witness_address: witness.to_vec(),
            version: 30,
            account_state_root: Vec::new(),
        };
        let mut id = sha256(&raw.encode_to_vec());
        id[..8].copy_from_slice(&height.to_be_bytes());
        let signature = g.bytes(65);
        let block = BlockExtention {
            transactions: txs,
            block_header: Some(BlockHeader {
                raw_data: Some(raw),
                witness_signature: signature,
            }),
            blockid: id.to_vec(),
        };

        let n = infos.len() as u64;
        g.truth.transactions_per_block.push(n);
        g.count(TRANSACTIONS, n);
        g.count(BLOCKS, 1);
        *g.truth
            .witness_counts
            .entry(Address::from_bytes(&witness).expect("valid").to_hex())
            .or_default() += 1;

        pairs.push(BlockPair {
            block: RawBlockMessage {
                height,
                bytes: block.encode_to_vec(),
            },
            info: RawInfoMessage {
                height,
                bytes: TransactionInfoList {
                    transaction_info: infos,
                }
                .encode_to_vec(),
            },
        });
        parent = id.to_vec();
    }
    g.truth.start = 0;
    g.truth.end = config.blocks.saturating_sub(1);
    SynthChain {
        config: config.clone(),
        pairs,
        truth: g.truth,
    }
}

/// One well-formed `(type name, type url, parameter)` per classified type.
pub fn conformance_corpus(seed: u64) -> Vec<(String, String, Vec<u8>)> {
    let mut g = Generator::new(&SynthConfig::all_types(seed));
    ContractKind::ALL
        .iter()
        .map(|&k| {
            let (bytes, _) = g.parameter(k);
            (
                k.type_name().to_owned(),
                crate::proto::type_url(k.type_name()),
                bytes,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = generate(&SynthConfig::mixed(3, 10));
        let b = generate(&SynthConfig::mixed(3, 10));
        assert_eq!(a.pairs, b.pairs);
        assert_eq!(a.truth, b.truth);
    }

    #[test]
    fn headers_carry_height() {
        let chain = generate(&SynthConfig::mixed(1, 5));
        for pair in &chain.pairs {
            pair.block.validate().unwrap();
        }
    }

    #[test]
    fn all_types_block() {
        let chain = generate(&SynthConfig::all_types(1));
        assert_eq!(chain.truth.transactions_per_block, vec![0, 39]);
        assert!(chain.truth.type_counts.values().all(|&c| c == 1));
    }
}
