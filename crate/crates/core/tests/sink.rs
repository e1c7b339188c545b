use proptest::prelude::*;
use tron_etl::schema::{BLOCKS, ColumnDef, ColumnType, Row, Value};
use tron_etl::sink::rowfile::{self, RowFileHeader};
use tron_etl::sink::{BlockRange, LocalSink, Sink, SinkError};
use tron_etl::transform::BlockRow;

fn block(num: u64, tag: &str) -> Row {
    BlockRow {
        hash: format!("{tag}{num:062x}"),
        timestamp: 1_700_000_000_000 + num * 3000,
        tx_trie_root: String::new(),
        parent_hash: String::new(),
        block_num: num,
        witness_id: 0,
        witness_address: "41".repeat(21),
        version: 30,
        account_state_root: String::new(),
        witness_signature: String::new(),
        transaction_count: 0,
    }
    .to_values()
}

fn blocks(range: BlockRange, tag: &str) -> Vec<Row> {
    (range.first..=range.last).map(|n| block(n, tag)).collect()
}

async fn open() -> (tempfile::TempDir, LocalSink) {
    let dir = tempfile::tempdir().unwrap();
    let sink = LocalSink::open(dir.path()).unwrap();
    sink.ensure_tables().await.unwrap();
    (dir, sink)
}

#[tokio::test]
async fn reinserting_a_range_replaces_it() {
    let (_dir, sink) = open().await;
    let r = BlockRange::new(0, 9);
    sink.insert_batch(BLOCKS, r, &blocks(r, "aa")).await.unwrap();
    sink.insert_batch(BLOCKS, r, &blocks(r, "bb")).await.unwrap();
    let count = sink.count(BLOCKS, None).await.unwrap();
    assert_eq!((count.physical, count.logical), (10, 10));
    assert!(sink.scan(BLOCKS, None).await.unwrap()[0][0].as_str().unwrap().starts_with("bb"));
}

#[tokio::test]
async fn overlapping_batches_collapse_to_latest() {
    let (_dir, sink) = open().await;
    let a = BlockRange::new(0, 9);
    let b = BlockRange::new(5, 14);
    sink.insert_batch(BLOCKS, a, &blocks(a, "aa")).await.unwrap();
    sink.insert_batch(BLOCKS, b, &blocks(b, "bb")).await.unwrap();
    let count = sink.count(BLOCKS, None).await.unwrap();
    assert_eq!((count.physical, count.logical), (20, 15));
    let rows = sink.scan(BLOCKS, Some(BlockRange::new(4, 5))).await.unwrap();
    assert!(rows[0][0].as_str().unwrap().starts_with("aa"));
    assert!(rows[1][0].as_str().unwrap().starts_with("bb"));

    sink.optimize(BLOCKS).await.unwrap();
    let count = sink.count(BLOCKS, None).await.unwrap();
    assert_eq!((count.physical, count.logical), (15, 15));
    assert_eq!(sink.coverage(BLOCKS).await.unwrap(), vec![BlockRange::new(0, 14)]);
}

#[tokio::test]
async fn optimize_keeps_gaps_visible() {
    let (_dir, sink) = open().await;
    for r in [BlockRange::new(0, 4), BlockRange::new(5, 9), BlockRange::new(20, 24)] {
        sink.insert_batch(BLOCKS, r, &blocks(r, "aa")).await.unwrap();
    }
    sink.optimize(BLOCKS).await.unwrap();
    let cov = sink.coverage(BLOCKS).await.unwrap();
    assert_eq!(cov, vec![BlockRange::new(0, 9), BlockRange::new(20, 24)]);
    assert_eq!(BlockRange::new(0, 24).gaps(&cov), vec![BlockRange::new(10, 19)]);
}

#[tokio::test]
async fn empty_batches_still_record_coverage() {
    let (_dir, sink) = open().await;
    sink.insert_batch("events", BlockRange::new(0, 99), &[]).await.unwrap();
    assert_eq!(sink.coverage("events").await.unwrap(), vec![BlockRange::new(0, 99)]);
    assert_eq!(sink.count("events", None).await.unwrap().logical, 0);
}

#[tokio::test]
async fn rows_outside_the_batch_range_are_rejected() {
    let (_dir, sink) = open().await;
    let err = sink
        .insert_batch(BLOCKS, BlockRange::new(0, 4), &[block(7, "aa")])
        .await
        .unwrap_err();
    assert!(matches!(err, SinkError::SchemaMismatch { .. }), "{err:?}");
    let err = sink
        .insert_batch(BLOCKS, BlockRange::new(0, 4), &[vec![Value::UInt(1)]])
        .await
        .unwrap_err();
    assert!(matches!(err, SinkError::SchemaMismatch { .. }));
    assert!(sink.insert_batch("nope", BlockRange::new(0, 0), &[]).await.is_err());
}

#[tokio::test]
async fn checkpoints_only_move_forward() {
    let (dir, sink) = open().await;
    assert!(sink.checkpoint_read("g").await.unwrap().is_none());
    sink.checkpoint_advance("g", 10).await.unwrap();
    let cp = sink.checkpoint_advance("g", 5).await.unwrap();
    assert_eq!(cp.last_loaded_block, 10);
    drop(sink);
    let reopened = LocalSink::open(dir.path()).unwrap();
    assert_eq!(reopened.checkpoint_read("g").await.unwrap().unwrap().last_loaded_block, 10);
}

#[tokio::test]
async fn sequence_survives_reopen() {
    let (dir, sink) = open().await;
    let r = BlockRange::new(0, 9);
    sink.insert_batch(BLOCKS, r, &blocks(r, "aa")).await.unwrap();
    drop(sink);
    let sink = LocalSink::open(dir.path()).unwrap();
    let later = BlockRange::new(5, 5);
    sink.insert_batch(BLOCKS, later, &blocks(later, "bb")).await.unwrap();
    let rows = sink.scan(BLOCKS, Some(later)).await.unwrap();
    assert!(rows[0][0].as_str().unwrap().starts_with("bb"));
}

#[tokio::test]
async fn truncated_file_is_reported_corrupt() {
    let (_dir, sink) = open().await;
    let r = BlockRange::new(0, 9);
    sink.insert_batch(BLOCKS, r, &blocks(r, "aa")).await.unwrap();
    let (path, _) = sink.files(BLOCKS).unwrap().remove(0);
    let bytes = std::fs::read(&path).unwrap();
    std::fs::write(&path, &bytes[..bytes.len() - 3]).unwrap();
    assert!(matches!(sink.count(BLOCKS, None).await, Err(SinkError::Corrupt { .. })));
}

fn leaf() -> impl Strategy<Value = Value> {
    prop_oneof![
        Just(Value::Null),
        any::<u64>().prop_map(Value::UInt),
        any::<i64>().prop_map(Value::Int),
        any::<bool>().prop_map(Value::Bool),
        ".{0,20}".prop_map(Value::Text),
    ]
}

fn value() -> impl Strategy<Value = Value> {
    leaf().prop_recursive(2, 16, 4, |inner| prop::collection::vec(inner, 0..4).prop_map(Value::Array))
}

proptest! {
    #[test]
    fn rowfile_round_trips(rows in prop::collection::vec(prop::collection::vec(value(), 3), 0..20), seq in any::<u64>()) {
        let header = RowFileHeader {
            sequence: seq,
            table: "t".into(),
            first_block: 1,
            last_block: 2,
            columns: vec![
                ColumnDef::new("a", ColumnType::UInt64),
                ColumnDef::nullable("b", ColumnType::Text),
                ColumnDef::new("c", ColumnType::array(ColumnType::Amount)),
            ],
            row_count: rows.len() as u64,
        };
        let bytes = rowfile::encode(&header, &rows);
        let back = rowfile::decode(&bytes).unwrap();
        prop_assert_eq!(back.header, header);
        prop_assert_eq!(back.rows, rows);
        if !bytes.is_empty() {
            prop_assert!(rowfile::decode(&bytes[..bytes.len() - 1]).is_err());
        }
    }
}
