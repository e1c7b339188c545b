use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Version byte prefixed to every mainnet account hash.
pub const ADDRESS_VERSION: u8 = 0x41;
pub const ADDRESS_LEN: usize = 21;

const ALPHABET: &[u8; 58] = b"123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AddressError {
    #[error("address must be {ADDRESS_LEN} bytes, got {0}")]
    WrongLength(usize),
    #[error("address version byte must be 0x41, got {0:#04x}")]
    WrongVersionByte(u8),
    #[error("invalid base58 character {0:?}")]
    BadAlphabet(char),
    #[error("base58check checksum mismatch")]
    BadChecksum,
    #[error("decoded payload has {0} bytes, expected {ADDRESS_LEN} plus checksum")]
    WrongDecodedLength(usize),
    #[error("invalid hex address: {0}")]
    BadHex(String),
}

/// A 21-byte TRON account address (`0x41 ‖ account hash`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address([u8; ADDRESS_LEN]);

impl Address {
    pub fn from_bytes(raw: &[u8]) -> Result<Self, AddressError> {
        let bytes: [u8; ADDRESS_LEN] = raw
            .try_into()
            .map_err(|_| AddressError::WrongLength(raw.len()))?;
        if bytes[0] != ADDRESS_VERSION {
            return Err(AddressError::WrongVersionByte(bytes[0]));
        }
        Ok(Self(bytes))
    }

    /// Builds the address for a 20-byte account hash.
    pub fn from_account_hash(hash: [u8; 20]) -> Self {
        let mut bytes = [0u8; ADDRESS_LEN];
        bytes[0] = ADDRESS_VERSION;
        bytes[1..].copy_from_slice(&hash);
        Self(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; ADDRESS_LEN] {
        &self.0
    }

    /// 42 lowercase hex characters, no prefix.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(text: &str) -> Result<Self, AddressError> {
        if text.len() != ADDRESS_LEN * 2 {
            return Err(AddressError::BadHex(text.to_owned()));
        }
        let raw = hex::decode(text).map_err(|_| AddressError::BadHex(text.to_owned()))?;
        Self::from_bytes(&raw)
    }

    pub fn to_base58(&self) -> String {
        base58check_encode(&self.0)
    }

    pub fn from_base58(text: &str) -> Result<Self, AddressError> {
        Self::from_bytes(&decode_address(text)?)
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Address({})", self.to_base58())
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_base58())
    }
}

impl FromStr for Address {
    type Err = AddressError;

    /// Accepts either the base58check form or 42-char hex.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() == ADDRESS_LEN * 2 && s.bytes().all(|b| b.is_ascii_hexdigit()) {
            Self::from_hex(s)
        } else {
            Self::from_base58(s)
        }
    }
}

/// Renders a raw 21-byte address as base58check text.
pub fn encode_address(raw: &[u8]) -> Result<String, AddressError> {
    Ok(Address::from_bytes(raw)?.to_base58())
}

/// Parses base58check text back into the raw 21-byte address.
pub fn decode_address(text: &str) -> Result<Vec<u8>, AddressError> {
    let decoded = base58_decode(text)?;
    if decoded.len() != ADDRESS_LEN + 4 {
        return Err(AddressError::WrongDecodedLength(decoded.len()));
    }
    let (payload, checksum) = decoded.split_at(ADDRESS_LEN);
    if checksum != &double_sha256(payload)[..4] {
        return Err(AddressError::BadChecksum);
    }
    Ok(payload.to_vec())
}

fn double_sha256(data: &[u8]) -> [u8; 32] {
    Sha256::digest(Sha256::digest(data)).into()
}

fn base58check_encode(payload: &[u8]) -> String {
    let mut buf = Vec::with_capacity(payload.len() + 4);
    buf.extend_from_slice(payload);
    buf.extend_from_slice(&double_sha256(payload)[..4]);
    base58_encode(&buf)
}

fn base58_encode(input: &[u8]) -> String {
    let zeros = input.iter().take_while(|&&b| b == 0).count();
    // Little-endian base-58 digits of the big-endian input.
    let mut digits: Vec<u8> = Vec::with_capacity(input.len() * 138 / 100 + 1);
    for &byte in &input[zeros..] {
        let mut carry = u32::from(byte);
        for digit in digits.iter_mut() {
            carry += u32::from(*digit) << 8;
            *digit = (carry % 58) as u8;
            carry /= 58;
        }
        while carry > 0 {
            digits.push((carry % 58) as u8);
            carry /= 58;
        }
    }
    let mut out = String::with_capacity(zeros + digits.len());
    out.extend(std::iter::repeat_n('1', zeros));
    out.extend(digits.iter().rev().map(|&d| ALPHABET[d as usize] as char));
    out
}

fn base58_decode(input: &str) -> Result<Vec<u8>, AddressError> {
    let zeros = input.bytes().take_while(|&b| b == b'1').count();
    let mut bytes: Vec<u8> = Vec::with_capacity(input.len());
    for ch in input.chars().skip(zeros) {
        let value = ALPHABET
            .iter()
            .position(|&a| a as char == ch)
            .ok_or(AddressError::BadAlphabet(ch))? as u32;
        let mut carry = value;
        for byte in bytes.iter_mut() {
            carry += u32::from(*byte) * 58;
            *byte = (carry & 0xff) as u8;
            carry >>= 8;
        }
        while carry > 0 {
            bytes.push((carry & 0xff) as u8);
            carry >>= 8;
        }
    }
    let mut out = vec![0u8; zeros];
    out.extend(bytes.iter().rev());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wrong_length() {
        assert_eq!(
            encode_address(&[0x41; 20]),
            Err(AddressError::WrongLength(20))
        );
    }

    #[test]
    fn rejects_wrong_version() {
        let mut raw = [0u8; 21];
        raw[0] = 0x42;
        assert_eq!(
            encode_address(&raw),
            Err(AddressError::WrongVersionByte(0x42))
        );
    }

    #[test]
    fn rejects_bad_alphabet() {
        // '0', 'O', 'I' and 'l' are not part of the alphabet.
        assert_eq!(
            decode_address("T0yD14Nj9j7xAB4dbGeiX9h8unkKHxuWwb"),
            Err(AddressError::BadAlphabet('0'))
        );
    }

    #[test]
    fn rejects_short_payload() {
        assert!(matches!(
            decode_address("3yQ"),
            Err(AddressError::WrongDecodedLength(_))
        ));
    }

    #[test]
    fn hex_is_lowercase_fixed_width() {
        let addr = Address::from_account_hash([0xAB; 20]);
        let hex = addr.to_hex();
        assert_eq!(hex.len(), 42);
        assert_eq!(hex, hex.to_lowercase());
        assert_eq!(Address::from_hex(&hex).unwrap(), addr);
    }

    #[test]
    fn parses_either_form() {
        let addr: Address = "TR7NHqjeKQxGTCi8q8ZY4pL8otSzgjLj6t".parse().unwrap();
        let again: Address = addr.to_hex().parse().unwrap();
        assert_eq!(addr, again);
    }
}
