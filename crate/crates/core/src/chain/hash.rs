use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HashError {
    #[error("hash must be 32 bytes, got {0}")]
    WrongLength(usize),
    #[error("invalid hash hex: {0}")]
    BadHex(String),
}

/// A 32-byte digest (block id, transaction id, log topic).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Hash32([u8; 32]);

impl Hash32 {
    pub const ZERO: Hash32 = Hash32([0; 32]);

    pub const fn new(bytes: [u8; 32]) -> Self {
        Self(bytes)
    }

    pub fn from_slice(raw: &[u8]) -> Result<Self, HashError> {
        raw.try_into()
            .map(Self)
            .map_err(|_| HashError::WrongLength(raw.len()))
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    /// 64 lowercase hex characters.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(text: &str) -> Result<Self, HashError> {
        let raw = hex::decode(text).map_err(|_| HashError::BadHex(text.to_owned()))?;
        Self::from_slice(&raw)
    }
}

impl fmt::Debug for Hash32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hash32({})", self.to_hex())
    }
}

impl fmt::Display for Hash32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for Hash32 {
    type Err = HashError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::from_hex(s.strip_prefix("0x").unwrap_or(s))
    }
}

impl From<[u8; 32]> for Hash32 {
    fn from(bytes: [u8; 32]) -> Self {
        Self(bytes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_round_trip() {
        let h = Hash32::new([0x5a; 32]);
        assert_eq!(h.to_hex().len(), 64);
        assert_eq!(Hash32::from_hex(&h.to_hex()).unwrap(), h);
    }

    #[test]
    fn rejects_short() {
        assert_eq!(Hash32::from_slice(&[1, 2]), Err(HashError::WrongLength(2)));
        assert!(Hash32::from_hex("zz").is_err());
    }
}
