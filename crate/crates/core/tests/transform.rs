use std::collections::BTreeMap;

use proptest::prelude::*;
use prost::Message;
use tron_etl::chain::Hash32;
use tron_etl::contracts::{ContractKind, TxContext, UNKNOWN_TABLE, coverage_report, decode_or_fallback};
use tron_etl::node::RawInfoMessage;
use tron_etl::proto::contract as pc;
use tron_etl::synth::{SynthConfig, conformance_corpus, generate};
use tron_etl::transform::{TransformError, transform_block};

const CTX: TxContext = TxContext {
    transaction_hash: Hash32::ZERO,
    block_num: 7,
};

#[test]
fn corpus_decodes_every_type_without_fallback() {
    let corpus = conformance_corpus(11);
    assert_eq!(corpus.len(), ContractKind::ALL.len());
    let report = coverage_report(corpus.iter().map(|(n, u, b)| (n.as_str(), u.as_str(), b.as_slice())));
    for entry in report {
        assert_eq!(entry.fallback, 0, "{entry:?}");
        assert_eq!(entry.decoded, 1, "{entry:?}");
    }
    for (name, url, bytes) in &corpus {
        let (row, err) = decode_or_fallback(name, url, bytes, CTX);
        assert!(err.is_none(), "{name}: {err:?}");
        assert_eq!(row.table_name(), ContractKind::from_type_name(name).unwrap().table_name());
    }
}

#[test]
fn required_fields_are_populated() {
    let msg = pc::TransferContract {
        owner_address: [&[0x41u8][..], &[1; 20]].concat(),
        to_address: [&[0x41u8][..], &[2; 20]].concat(),
        amount: 1_000_000,
    };
    let (row, err) = decode_or_fallback(
        "TransferContract",
        "type.googleapis.com/protocol.TransferContract",
        &msg.encode_to_vec(),
        CTX,
    );
    assert!(err.is_none());
    assert_eq!(row.field("ownerAddress").unwrap().as_str(), Some(&*format!("41{}", "01".repeat(20))));
    assert_eq!(row.field("amount").unwrap().as_i64(), Some(1_000_000));
}

#[test]
fn unknown_and_malformed_parameters_fall_back() {
    let (row, err) = decode_or_fallback("FancyNewContract", "type.googleapis.com/protocol.FancyNewContract", b"\x08\x01", CTX);
    assert_eq!(row.table_name(), UNKNOWN_TABLE);
    assert!(err.is_none(), "an unlisted type is routed, not an error");

    let (row, err) = decode_or_fallback(
        "TransferContract",
        "type.googleapis.com/protocol.TransferContract",
        b"\x0a\xff",
        CTX,
    );
    assert!(row.is_fallback());
    assert!(err.is_some());
}

#[test]
fn all_types_block_yields_one_param_row_per_type() {
    let chain = generate(&SynthConfig::all_types(5));
    let pair = &chain.pairs[1];
    let tables = transform_block(&pair.block, &pair.info).unwrap();
    assert_eq!(tables.fallback_count(), 0);
    let mut per_table: BTreeMap<&str, usize> = BTreeMap::new();
    for p in &tables.params {
        *per_table.entry(p.table_name()).or_default() += 1;
    }
    for kind in ContractKind::ALL {
        assert_eq!(per_table.get(kind.table_name()), Some(&1), "{kind}");
    }
}

#[test]
fn receipt_fields_merge_into_transactions() {
    let chain = generate(&SynthConfig::mixed(3, 20));
    let pinned = chain.truth.pinned_receipt.clone().unwrap();
    let pair = &chain.pairs[pinned.block_num as usize];
    let tables = transform_block(&pair.block, &pair.info).unwrap();
    let tx = &tables.transactions[pinned.transaction_index as usize];
    assert_eq!(tx.energy_usage, pinned.energy_usage);
    assert_eq!(tx.fee, pinned.fee);
}

#[test]
fn mismatched_receipts_are_detected() {
    let chain = generate(&SynthConfig::mixed(3, 20));
    let (a, b) = chain
        .pairs
        .iter()
        .zip(chain.pairs.iter().skip(1))
        .find(|(a, b)| !a.info.bytes.is_empty() && !b.info.bytes.is_empty())
        .unwrap();
    let swapped = RawInfoMessage {
        height: a.block.height,
        bytes: b.info.bytes.clone(),
    };
    let err = transform_block(&a.block, &swapped).unwrap_err();
    assert!(matches!(err, TransformError::InfoMismatch { .. }), "{err:?}");
    assert_eq!(err.height(), a.block.height);
}

#[test]
fn logs_follow_prefix_and_dense_index_rules() {
    let chain = generate(&SynthConfig::mixed(8, 200));
    let mut by_topics: BTreeMap<u32, u64> = BTreeMap::new();
    for pair in &chain.pairs {
        let tables = transform_block(&pair.block, &pair.info).unwrap();
        let mut per_tx: BTreeMap<&str, Vec<u32>> = BTreeMap::new();
        for log in &tables.events {
            assert!(log.topics_are_prefix());
            assert_eq!(log.address.len(), 42);
            assert!(log.address.starts_with("41"));
            per_tx.entry(&log.transaction_hash).or_default().push(log.log_index);
            *by_topics.entry(log.topics.iter().flatten().count() as u32).or_default() += 1;
        }
        for (_, idx) in per_tx {
            assert_eq!(idx, (0..idx.len() as u32).collect::<Vec<_>>());
        }
    }
    assert_eq!(by_topics, chain.truth.logs_by_topic_count);
    assert!((0..=4).all(|k| by_topics.contains_key(&k)));
}

proptest! {
    #[test]
    fn decoding_never_panics(kind in 0..ContractKind::ALL.len(), bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let kind = ContractKind::ALL[kind];
        let url = format!("type.googleapis.com/protocol.{}", kind.type_name());
        let (row, err) = decode_or_fallback(kind.type_name(), &url, &bytes, CTX);
        prop_assert_eq!(row.is_fallback(), err.is_some());
        if !row.is_fallback() {
            prop_assert_eq!(row.table_name(), kind.table_name());
        }
    }
}
