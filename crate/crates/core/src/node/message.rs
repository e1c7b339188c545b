use prost::Message;

use crate::proto::{BlockExtention, TransactionInfoList};

/// Wire-encoded `BlockExtention` for one height, exactly as served.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawBlockMessage {
    pub height: u64,
    pub bytes: Vec<u8>,
}

/// Wire-encoded `TransactionInfoList` for one height. Empty for blocks
/// without transactions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawInfoMessage {
    pub height: u64,
    pub bytes: Vec<u8>,
}

impl RawBlockMessage {
    pub fn decode(&self) -> Result<BlockExtention, prost::DecodeError> {
        BlockExtention::decode(self.bytes.as_slice())
    }

    /// Height recorded in the block header, if the bytes decode.
    pub fn header_height(&self) -> Option<u64> {
        let block = self.decode().ok()?;
        let number = block.block_header?.raw_data?.number;
        u64::try_from(number).ok()
    }

    /// Checks the non-empty and height-match invariants.
    pub fn validate(&self) -> Result<(), String> {
        if self.bytes.is_empty() {
            return Err(format!("empty block message at height {}", self.height));
        }
        match self.header_height() {
            Some(h) if h == self.height => Ok(()),
            Some(h) => Err(format!(
                "block message for height {} carries height {h}",
                self.height
            )),
            None => Err(format!("undecodable block message at height {}", self.height)),
        }
    }
}

impl RawInfoMessage {
    pub fn decode(&self) -> Result<TransactionInfoList, prost::DecodeError> {
        TransactionInfoList::decode(self.bytes.as_slice())
    }
}
