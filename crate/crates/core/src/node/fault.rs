//! Fault injection for exercising retry and error paths.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::atomic::{AtomicUsize, Ordering};

use async_trait::async_trait;

use super::{BlockSource, RawBlockMessage, RawInfoMessage, SourceError};

/// Wraps a source, failing selected block fetches with transport errors
/// and tracking concurrency.
pub struct FlakySource<S> {
    inner: S,
    transient: Mutex<HashMap<u64, u32>>,
    permanent: Mutex<Vec<u64>>,
    in_flight: AtomicUsize,
    peak: AtomicUsize,
    calls: AtomicUsize,
}

impl<S> FlakySource<S> {
    pub fn new(inner: S) -> Self {
        FlakySource {
            inner,
            transient: Mutex::new(HashMap::new()),
            permanent: Mutex::new(Vec::new()),
            in_flight: AtomicUsize::new(0),
            peak: AtomicUsize::new(0),
            calls: AtomicUsize::new(0),
        }
    }

    /// The next `times` fetches of `height` fail.
    pub fn fail_transiently(self, height: u64, times: u32) -> Self {
        self.transient.lock().unwrap().insert(height, times);
        self
    }

    /// Every fetch of `height` fails.
    pub fn fail_always(self, height: u64) -> Self {
        self.permanent.lock().unwrap().push(height);
        self
    }

    /// Highest number of concurrent fetches observed.
    pub fn peak_in_flight(&self) -> usize {
        self.peak.load(Ordering::SeqCst)
    }

    pub fn calls(&self) -> usize {
        self.calls.load(Ordering::SeqCst)
    }

    fn should_fail(&self, height: u64) -> bool {
        if self.permanent.lock().unwrap().contains(&height) {
            return true;
        }
        let mut transient = self.transient.lock().unwrap();
        match transient.get_mut(&height) {
            Some(n) if *n > 0 => {
                *n -= 1;
                true
            }
            _ => false,
        }
    }

    fn enter(&self) {
        self.calls.fetch_add(1, Ordering::SeqCst);
        let now = self.in_flight.fetch_add(1, Ordering::SeqCst) + 1;
        self.peak.fetch_max(now, Ordering::SeqCst);
    }

    fn exit(&self) {
        self.in_flight.fetch_sub(1, Ordering::SeqCst);
    }
}

#[async_trait]
impl<S: BlockSource> BlockSource for FlakySource<S> {
    async fn fetch_block(&self, height: u64) -> Result<RawBlockMessage, SourceError> {
        self.enter();
        tokio::task::yield_now().await;
        let result = if self.should_fail(height) {
            Err(SourceError::transport(Some(height), "injected fault"))
        } else {
            self.inner.fetch_block(height).await
        };
        self.exit();
        result
    }

    async fn fetch_info(&self, height: u64) -> Result<RawInfoMessage, SourceError> {
        self.enter();
        tokio::task::yield_now().await;
        let result = self.inner.fetch_info(height).await;
        self.exit();
        result
    }

    async fn head(&self) -> Result<u64, SourceError> {
        self.inner.head().await
    }

    fn describe(&self) -> String {
        format!("flaky:{}", self.inner.describe())
    }
}
