use std::collections::HashMap;
use std::path::Path;

use sha3::{Digest, Keccak256};
use thiserror::Error;

use super::Hash32;

/// Event signatures emitted by the USDT (TetherToken) contract.
pub const BUILTIN_SIGNATURES: [&str; 7] = [
    "Transfer(address,address,uint256)",
    "Approval(address,address,uint256)",
    "AddedBlackList(address)",
    "RemovedBlackList(address)",
    "DestroyedBlackFunds(address,uint256)",
    "Issue(uint256)",
    "Redeem(uint256)",
];

/// Legacy (pre-standard) keccak-256, as used by the EVM and TVM.
pub fn keccak256(data: &[u8]) -> [u8; 32] {
    Keccak256::digest(data).into()
}

/// First four bytes of the keccak-256 of a function signature.
pub fn function_selector(signature: &str) -> [u8; 4] {
    let digest = keccak256(signature.as_bytes());
    [digest[0], digest[1], digest[2], digest[3]]
}

#[derive(Debug, Error)]
pub enum SignatureError {
    #[error("malformed event signature {0:?}")]
    Malformed(String),
    #[error("reading signature table: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSignature {
    canonical: String,
    topic0: Hash32,
}

impl EventSignature {
    pub fn new(canonical: &str) -> Result<Self, SignatureError> {
        let canonical = canonical.trim();
        let well_formed = canonical
            .find('(')
            .is_some_and(|open| open > 0 && canonical.ends_with(')'))
            && !canonical.contains(char::is_whitespace);
        if !well_formed {
            return Err(SignatureError::Malformed(canonical.to_owned()));
        }
        Ok(Self {
            canonical: canonical.to_owned(),
            topic0: Hash32::new(keccak256(canonical.as_bytes())),
        })
    }

    pub fn canonical(&self) -> &str {
        &self.canonical
    }

    /// Event name without the parameter list, e.g. `Transfer`.
    pub fn name(&self) -> &str {
        self.canonical
            .split_once('(')
            .map_or(self.canonical.as_str(), |(name, _)| name)
    }

    pub fn topic0(&self) -> Hash32 {
        self.topic0
    }
}

/// topic0 → signature lookup table.
#[derive(Debug, Clone)]
pub struct SignatureTable {
    by_topic: HashMap<Hash32, EventSignature>,
    order: Vec<Hash32>,
}

impl Default for SignatureTable {
    fn default() -> Self {
        Self::builtin()
    }
}

impl SignatureTable {
    pub fn empty() -> Self {
        Self {
            by_topic: HashMap::new(),
            order: Vec::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut table = Self::empty();
        for text in BUILTIN_SIGNATURES {
            table.insert(EventSignature::new(text).expect("builtin signature"));
        }
        table
    }

    pub fn insert(&mut self, sig: EventSignature) {
        let topic = sig.topic0();
        if self.by_topic.insert(topic, sig).is_none() {
            self.order.push(topic);
        }
    }

    /// Adds one canonical signature per line; blank lines and `#` comments
    /// are ignored.
    pub fn extend_from_text(&mut self, text: &str) -> Result<usize, SignatureError> {
        let mut added = 0;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            self.insert(EventSignature::new(line)?);
            added += 1;
        }
        Ok(added)
    }

    /// Built-in table extended with the signatures listed in `path`.
    pub fn load(path: &Path) -> Result<Self, SignatureError> {
        let mut table = Self::builtin();
        table.extend_from_text(&std::fs::read_to_string(path)?)?;
        Ok(table)
    }

    pub fn lookup(&self, topic0: &Hash32) -> Option<&EventSignature> {
        self.by_topic.get(topic0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &EventSignature> {
        self.order.iter().map(|t| &self.by_topic[t])
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Looks `topic0` up in the built-in table.
pub fn lookup_signature(topic0: &Hash32) -> Option<EventSignature> {
    SignatureTable::builtin().lookup(topic0).cloned()
}
