//! ClickHouseSink against a scripted HTTP stand-in.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::Router;
use axum::extract::{Query, State};
use axum::http::{HeaderMap, StatusCode};
use axum::routing::post;
use tron_etl::schema::{BLOCKS, table_names};
use tron_etl::sink::{BlockRange, ClickHouseSink, Sink, SinkError};
use tron_etl::synth::{SynthConfig, generate};
use tron_etl::transform::transform_block;

#[derive(Debug, Clone)]
struct Request {
    query: String,
    body: String,
    user: Option<String>,
}

#[derive(Clone, Default)]
struct Mock {
    log: Arc<Mutex<Vec<Request>>>,
    /// Substring of the SQL text → (status, response body).
    replies: Arc<Mutex<Vec<(String, StatusCode, String)>>>,
}

impl Mock {
    fn reply(&self, needle: &str, status: StatusCode, body: &str) {
        self.replies.lock().unwrap().push((needle.into(), status, body.into()));
    }

    fn requests(&self) -> Vec<Request> {
        self.log.lock().unwrap().clone()
    }
}

async fn handle(
    State(mock): State<Mock>,
    Query(params): Query<HashMap<String, String>>,
    headers: HeaderMap,
    body: String,
) -> (StatusCode, String) {
    let (query, body) = match params.get("query") {
        Some(q) => (q.clone(), body),
        None => (body, String::new()),
    };
    let user = headers
        .get("X-ClickHouse-User")
        .map(|v| v.to_str().unwrap().to_owned());
    mock.log.lock().unwrap().push(Request {
        query: query.clone(),
        body,
        user,
    });
    for (needle, status, reply) in mock.replies.lock().unwrap().iter() {
        if query.contains(needle.as_str()) {
            return (*status, reply.clone());
        }
    }
    (StatusCode::OK, String::new())
}

async fn start() -> (Mock, ClickHouseSink) {
    let mock = Mock::default();
    let app = Router::new().route("/", post(handle)).with_state(mock.clone());
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    let sink = ClickHouseSink::connect(&format!("clickhouse://etl:secret@{addr}/tron")).unwrap();
    (mock, sink)
}

#[tokio::test]
async fn creates_every_table() {
    let (mock, sink) = start().await;
    sink.ensure_tables().await.unwrap();
    let reqs = mock.requests();
    assert!(reqs[0].query.starts_with("CREATE DATABASE IF NOT EXISTS `tron`"));
    for t in table_names() {
        assert!(
            reqs.iter().any(|r| r.query.contains(&format!("`{t}`")) && r.query.contains("ReplacingMergeTree")),
            "{t}"
        );
    }
    assert!(reqs.iter().all(|r| r.user.as_deref() == Some("etl")));
}

#[tokio::test]
async fn inserts_rows_and_coverage() {
    let (mock, sink) = start().await;
    let chain = generate(&SynthConfig::mixed(1, 3));
    let rows: Vec<_> = chain
        .pairs
        .iter()
        .map(|p| transform_block(&p.block, &p.info).unwrap().block.unwrap().to_values())
        .collect();
    let n = sink.insert_batch(BLOCKS, BlockRange::new(0, 2), &rows).await.unwrap();
    assert_eq!(n, 3);
    let reqs = mock.requests();
    assert_eq!(reqs[0].query, "INSERT INTO `tron`.`blocks` FORMAT JSONEachRow");
    let lines: Vec<serde_json::Value> = reqs[0]
        .body
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2]["blockNum"], 2);
    assert!(reqs[1].query.contains("_coverage"));
    assert!(reqs[1].body.contains("\"firstBlock\":0"));
}

#[tokio::test]
async fn rejects_rows_that_do_not_fit_the_schema() {
    let (mock, sink) = start().await;
    let err = sink
        .insert_batch(BLOCKS, BlockRange::new(0, 0), &[vec![1u64.into()]])
        .await
        .unwrap_err();
    assert!(matches!(err, SinkError::SchemaMismatch { .. }));
    assert!(mock.requests().is_empty());
}

#[tokio::test]
async fn count_compares_raw_and_final() {
    let (mock, sink) = start().await;
    mock.reply("FINAL", StatusCode::OK, "{\"count()\":3}\n");
    mock.reply("SELECT count()", StatusCode::OK, "{\"count()\":5}\n");
    let c = sink.count(BLOCKS, Some(BlockRange::new(0, 9))).await.unwrap();
    assert_eq!((c.physical, c.logical), (5, 3));
    assert!(mock.requests()[0].query.contains("BETWEEN 0 AND 9"));
}

#[tokio::test]
async fn reads_checkpoint_and_coverage() {
    let (mock, sink) = start().await;
    mock.reply("_checkpoints", StatusCode::OK, "{\"lastLoadedBlock\":41,\"updatedAt\":7}\n");
    mock.reply("_coverage", StatusCode::OK, "{\"firstBlock\":0,\"lastBlock\":9}\n{\"firstBlock\":20,\"lastBlock\":29}\n");
    let cp = sink.checkpoint_read("tron").await.unwrap().unwrap();
    assert_eq!(cp.last_loaded_block, 41);
    let cov = sink.coverage(BLOCKS).await.unwrap();
    assert_eq!(cov, vec![BlockRange::new(0, 9), BlockRange::new(20, 29)]);
    assert_eq!(BlockRange::new(0, 29).gaps(&cov), vec![BlockRange::new(10, 19)]);
}

#[tokio::test]
async fn classifies_store_errors() {
    let (mock, sink) = start().await;
    mock.reply("OPTIMIZE", StatusCode::SERVICE_UNAVAILABLE, "overloaded");
    let err = sink.optimize(BLOCKS).await.unwrap_err();
    assert!(err.is_retryable(), "{err:?}");

    mock.reply("SELECT", StatusCode::BAD_REQUEST, "Code: 60. DB::Exception: Unknown table");
    let err = sink.count(BLOCKS, None).await.unwrap_err();
    assert!(!err.is_retryable(), "{err:?}");
}

#[tokio::test]
async fn unreachable_store_is_retryable() {
    let sink = ClickHouseSink::connect("http://127.0.0.1:1/tron").unwrap();
    assert!(sink.ensure_tables().await.unwrap_err().is_retryable());
}
