use std::sync::Arc;
use std::time::Duration;

use futures::StreamExt;
use tron_etl::node::fault::FlakySource;
use tron_etl::node::{
    FixtureArchive, FixtureSource, GrpcSource, NodeClient, RetryPolicy, SourceError, WalletServer, record,
};
use tron_etl::synth::{SynthConfig, generate};

fn fast(budget: u32) -> RetryPolicy {
    RetryPolicy::with_budget(budget).with_initial_delay(Duration::from_millis(1))
}

#[tokio::test]
async fn transient_failures_are_retried_within_budget() {
    let chain = generate(&SynthConfig::mixed(1, 10));
    let client = NodeClient::new(FlakySource::new(chain.source()).fail_transiently(4, 2)).with_retry(fast(3));
    let (block, retries) = client.fetch_block_traced(4).await.unwrap();
    assert_eq!(retries, 2);
    assert_eq!(block, chain.pairs[4].block);
}

#[tokio::test]
async fn exhausted_budget_reports_height_and_attempts() {
    let chain = generate(&SynthConfig::mixed(1, 10));
    let client = NodeClient::new(FlakySource::new(chain.source()).fail_transiently(4, 3)).with_retry(fast(3));
    match client.fetch_block(4).await.unwrap_err() {
        SourceError::Transport { height, attempts, .. } => {
            assert_eq!(height, Some(4));
            assert_eq!(attempts, 3);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[tokio::test]
async fn past_head_is_not_found() {
    let chain = generate(&SynthConfig::mixed(1, 10));
    let client = NodeClient::new(chain.source());
    assert!(matches!(client.fetch_block(10).await, Err(SourceError::NotFound { height: 10 })));
    assert_eq!(client.get_head().await.unwrap(), 9);
}

#[tokio::test]
async fn stream_is_ordered_and_bounded() {
    let chain = generate(&SynthConfig::mixed(2, 120));
    let flaky = Arc::new(FlakySource::new(chain.source()).fail_transiently(30, 1));
    let client = NodeClient::from_arc(flaky.clone()).with_retry(fast(3));
    let pairs: Vec<_> = client.stream_range(0, 119, 4).collect().await;
    let heights: Vec<u64> = pairs.iter().map(|p| p.as_ref().unwrap().height()).collect();
    assert_eq!(heights, (0..120).collect::<Vec<_>>());
    assert!(flaky.peak_in_flight() <= 4, "peak {}", flaky.peak_in_flight());
    assert!(flaky.peak_in_flight() > 1);
}

#[tokio::test]
async fn stream_stops_at_permanent_failure() {
    let chain = generate(&SynthConfig::mixed(2, 100));
    let client = NodeClient::new(FlakySource::new(chain.source()).fail_always(50)).with_retry(fast(2));
    let items: Vec<_> = client.stream_range(0, 99, 8).collect().await;
    assert_eq!(items.len(), 51);
    assert!(items[..50].iter().all(Result::is_ok));
    assert_eq!(items[50].as_ref().unwrap_err().height(), Some(50));
}

#[tokio::test]
async fn record_and_replay_are_byte_identical() {
    let chain = generate(&SynthConfig::mixed(3, 30));
    let dir = tempfile::tempdir().unwrap();
    let archive = record(&NodeClient::new(chain.source()), 5, 24, dir.path().join("fx"), 4)
        .await
        .unwrap();
    assert_eq!((archive.manifest().start, archive.manifest().end), (5, 24));

    let replay = NodeClient::new(FixtureSource::open(dir.path().join("fx")).unwrap());
    for h in 5..=24 {
        let pair = replay.fetch_pair(h).await.unwrap();
        assert_eq!(pair, chain.pairs[h as usize]);
    }
    assert!(matches!(replay.fetch_block(25).await, Err(SourceError::NotFound { .. })));
}

#[tokio::test]
async fn recording_refuses_non_empty_directory() {
    let chain = generate(&SynthConfig::mixed(3, 5));
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("stray"), b"x").unwrap();
    assert!(record(&NodeClient::new(chain.source()), 0, 4, dir.path(), 2).await.is_err());
}

#[tokio::test]
async fn interrupted_recording_is_detected() {
    let chain = generate(&SynthConfig::mixed(3, 5));
    let dir = tempfile::tempdir().unwrap();
    let archive = chain.write_fixture(dir.path()).unwrap();
    std::fs::remove_file(dir.path().join(tron_etl::node::block_file(2))).unwrap();
    assert!(FixtureArchive::open(archive.dir()).is_err());
}

#[tokio::test]
async fn grpc_round_trip_preserves_bytes() {
    let chain = generate(&SynthConfig::mixed(4, 25));
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let server = tokio::spawn(WalletServer::new(Arc::new(chain.source())).serve(listener, async {
        let _ = stopped.await;
    }));

    let source = GrpcSource::connect_lazy(&format!("http://{addr}"), Duration::from_secs(5)).unwrap();
    let client = NodeClient::new(source).with_retry(fast(3));
    assert_eq!(client.get_head().await.unwrap(), 24);
    let pairs: Vec<_> = client.stream_range(0, 24, 6).collect().await;
    for (h, pair) in pairs.into_iter().enumerate() {
        assert_eq!(pair.unwrap(), chain.pairs[h]);
    }
    assert!(matches!(client.fetch_block(25).await, Err(SourceError::NotFound { height: 25 })));

    stop.send(()).unwrap();
    server.await.unwrap().unwrap();
}

#[tokio::test]
async fn unreachable_endpoint_is_a_transport_error() {
    let source = GrpcSource::connect_lazy("http://127.0.0.1:1", Duration::from_millis(500)).unwrap();
    let client = NodeClient::new(source).with_retry(fast(2));
    let err = client.fetch_block(1).await.unwrap_err();
    assert!(err.is_retryable(), "{err:?}");
}
