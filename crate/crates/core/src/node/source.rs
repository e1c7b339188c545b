use async_trait::async_trait;
use thiserror::Error;

use super::{RawBlockMessage, RawInfoMessage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error("height {height} is beyond the source head")]
    NotFound { height: u64 },
    #[error("transport error{}: {message} (after {attempts} attempts)", fmt_height(*.height))]
    Transport {
        height: Option<u64>,
        message: String,
        attempts: u32,
    },
    #[error("source closed")]
    SourceClosed,
    #[error("malformed message at height {height}: {reason}")]
    Malformed { height: u64, reason: String },
    #[error("request rejected{}: {message}", fmt_height(*.height))]
    Rejected { height: Option<u64>, message: String },
}

fn fmt_height(height: Option<u64>) -> String {
    height.map_or_else(String::new, |h| format!(" at height {h}"))
}

impl SourceError {
    pub fn transport(height: Option<u64>, message: impl Into<String>) -> Self {
        SourceError::Transport {
            height,
            message: message.into(),
            attempts: 1,
        }
    }

    /// Only transport-class failures are worth retrying.
    pub fn is_retryable(&self) -> bool {
        matches!(self, SourceError::Transport { .. })
    }

    pub fn height(&self) -> Option<u64> {
        match self {
            SourceError::NotFound { height } | SourceError::Malformed { height, .. } => {
                Some(*height)
            }
            SourceError::Transport { height, .. } | SourceError::Rejected { height, .. } => *height,
            SourceError::SourceClosed => None,
        }
    }

    pub(crate) fn with_height(mut self, h: u64) -> Self {
        match &mut self {
            SourceError::Transport { height, .. } | SourceError::Rejected { height, .. } => {
                height.get_or_insert(h);
            }
            _ => {}
        }
        self
    }
}

/// Anything that can serve raw block and info messages by height: a node
/// endpoint, a fixture archive or an in-memory chain.
#[async_trait]
pub trait BlockSource: Send + Sync {
    async fn fetch_block(&self, height: u64) -> Result<RawBlockMessage, SourceError>;

    async fn fetch_info(&self, height: u64) -> Result<RawInfoMessage, SourceError>;

    /// Highest height the source can serve.
    async fn head(&self) -> Result<u64, SourceError>;

    /// Human-readable origin, recorded in fixture manifests.
    fn describe(&self) -> String;
}

#[async_trait]
impl<S: BlockSource + ?Sized> BlockSource for std::sync::Arc<S> {
    async fn fetch_block(&self, height: u64) -> Result<RawBlockMessage, SourceError> {
        (**self).fetch_block(height).await
    }

    async fn fetch_info(&self, height: u64) -> Result<RawInfoMessage, SourceError> {
        (**self).fetch_info(height).await
    }

    async fn head(&self) -> Result<u64, SourceError> {
        (**self).head().await
    }

    fn describe(&self) -> String {
        (**self).describe()
    }
}

/// A chain held in memory, keyed by height from zero.
#[derive(Debug, Clone, Default)]
pub struct MemorySource {
    pub blocks: Vec<Vec<u8>>,
    pub infos: Vec<Vec<u8>>,
}

impl MemorySource {
    pub fn new(blocks: Vec<Vec<u8>>, infos: Vec<Vec<u8>>) -> Self {
        assert_eq!(blocks.len(), infos.len(), "one info list per block");
        MemorySource { blocks, infos }
    }
}

#[async_trait]
impl BlockSource for MemorySource {
    async fn fetch_block(&self, height: u64) -> Result<RawBlockMessage, SourceError> {
        let bytes = usize::try_from(height)
            .ok()
            .and_then(|i| self.blocks.get(i))
            .ok_or(SourceError::NotFound { height })?;
        Ok(RawBlockMessage {
            height,
            bytes: bytes.clone(),
        })
    }

    async fn fetch_info(&self, height: u64) -> Result<RawInfoMessage, SourceError> {
        let bytes = usize::try_from(height)
            .ok()
            .and_then(|i| self.infos.get(i))
            .ok_or(SourceError::NotFound { height })?;
        Ok(RawInfoMessage {
            height,
            bytes: bytes.clone(),
        })
    }

    async fn head(&self) -> Result<u64, SourceError> {
        match self.blocks.len() {
            0 => Err(SourceError::NotFound { height: 0 }),
            n => Ok(n as u64 - 1),
        }
    }

    fn describe(&self) -> String {
        "memory".into()
    }
}
