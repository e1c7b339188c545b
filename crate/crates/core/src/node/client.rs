use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use futures::stream::{self, Stream, StreamExt};

use super::{BlockSource, RawBlockMessage, RawInfoMessage, RetryPolicy, SourceError};

/// How long a probed head height stays fresh.
pub const HEAD_CACHE_TTL: Duration = Duration::from_secs(3);

/// A block and its info list for one height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPair {
    pub block: RawBlockMessage,
    pub info: RawInfoMessage,
}

impl BlockPair {
    pub fn height(&self) -> u64 {
        self.block.height
    }
}

/// Retrying, head-caching front end over a [`BlockSource`]. Cheap to clone
/// and shareable across tasks.
#[derive(Clone)]
pub struct NodeClient {
    source: Arc<dyn BlockSource>,
    policy: RetryPolicy,
    head_ttl: Duration,
    head_cache: Arc<Mutex<Option<(u64, Instant)>>>,
}

impl std::fmt::Debug for NodeClient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NodeClient")
            .field("source", &self.source.describe())
            .field("policy", &self.policy)
            .finish()
    }
}

impl NodeClient {
    pub fn new(source: impl BlockSource + 'static) -> Self {
        Self::from_arc(Arc::new(source))
    }

    pub fn from_arc(source: Arc<dyn BlockSource>) -> Self {
        NodeClient {
            source,
            policy: RetryPolicy::default(),
            head_ttl: HEAD_CACHE_TTL,
            head_cache: Arc::new(Mutex::new(None)),
        }
    }

    pub fn with_retry(mut self, policy: RetryPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_head_ttl(mut self, ttl: Duration) -> Self {
        self.head_ttl = ttl;
        self
    }

    pub fn retry_policy(&self) -> RetryPolicy {
        self.policy
    }

    pub fn describe(&self) -> String {
        self.source.describe()
    }

    /// Fetches a block and reports how many retries were needed.
    pub async fn fetch_block_traced(
        &self,
        height: u64,
    ) -> Result<(RawBlockMessage, u32), SourceError> {
        let (block, retries) = self
            .policy
            .run(|| self.source.fetch_block(height))
            .await
            .map_err(|e| e.with_height(height))?;
        if block.bytes.is_empty() {
            return Err(SourceError::NotFound { height });
        }
        if let Err(reason) = block.validate() {
            return Err(SourceError::Malformed { height, reason });
        }
        Ok((block, retries))
    }

    pub async fn fetch_block(&self, height: u64) -> Result<RawBlockMessage, SourceError> {
        self.fetch_block_traced(height).await.map(|(b, _)| b)
    }

    pub async fn fetch_info_traced(
        &self,
        height: u64,
    ) -> Result<(RawInfoMessage, u32), SourceError> {
        let (info, retries) = self
            .policy
            .run(|| self.source.fetch_info(height))
            .await
            .map_err(|e| e.with_height(height))?;
        // An empty list is also what a node answers past its head.
        if info.bytes.is_empty() && height > self.get_head().await? {
            return Err(SourceError::NotFound { height });
        }
        Ok((info, retries))
    }

    pub async fn fetch_info(&self, height: u64) -> Result<RawInfoMessage, SourceError> {
        self.fetch_info_traced(height).await.map(|(i, _)| i)
    }

    pub async fn fetch_pair(&self, height: u64) -> Result<BlockPair, SourceError> {
        let block = self.fetch_block(height).await?;
        let info = self.fetch_info(height).await?;
        Ok(BlockPair { block, info })
    }

    /// Current head height, served from a short-lived cache.
    pub async fn get_head(&self) -> Result<u64, SourceError> {
        if let Some((head, at)) = *self.head_cache.lock().expect("head cache lock")
            && at.elapsed() < self.head_ttl {
                return Ok(head);
            }
        let (head, _) = self.policy.run(|| self.source.head()).await?;
        *self.head_cache.lock().expect("head cache lock") = Some((head, Instant::now()));
        Ok(head)
    }

    /// Streams `[start, end]` in ascending order with at most `window`
    /// fetches in flight. The stream ends after the first error.
    pub fn stream_range(
        &self,
        start: u64,
        end: u64,
        window: usize,
    ) -> impl Stream<Item = Result<BlockPair, SourceError>> + Send + 'static {
        assert!(start <= end, "stream_range needs start <= end");
        let client = self.clone();
        stream::iter(start..=end)
            .map(move |h| {
                let client = client.clone();
                async move { client.fetch_pair(h).await }
            })
            .buffered(window.max(1))
            .scan(false, |failed, item| {
                if *failed {
                    return futures::future::ready(None);
                }
                *failed = item.is_err();
                futures::future::ready(Some(item))
            })
    }
}
