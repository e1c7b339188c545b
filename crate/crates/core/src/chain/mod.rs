//! Domain types shared by every stage: addresses, hashes, amounts and the
//! well-known event signature table.

mod address;
mod amount;
mod hash;
mod signature;

pub use address::{
    ADDRESS_LEN, ADDRESS_VERSION, Address, AddressError, decode_address, encode_address,
};
pub use amount::{NegativeAmount, SUN_PER_TRX, TokenAmount};
pub use hash::{Hash32, HashError};
pub use signature::{
    BUILTIN_SIGNATURES, EventSignature, SignatureError, SignatureTable, function_selector,
    keccak256, lookup_signature,
};
