//! The single set of conversion rules applied to every row field.

use thiserror::Error;

use crate::chain::{Address, Hash32};
use crate::schema::Value;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot convert {path}: {reason}")]
pub struct ConversionError {
    pub path: String,
    pub reason: String,
}

impl ConversionError {
    pub fn new(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

/// Target representation of a raw field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Semantic {
    Hex,
    /// 32-byte digest; empty input maps to the empty string.
    Hash,
    /// 21-byte address as 42-char hex; empty input maps to the empty string.
    AddressHex,
    /// Non-negative transfer amount.
    Amount,
    /// Signed passthrough.
    Int,
    /// Non-negative count or measurement.
    UInt,
    MsTimestamp,
    /// UTF-8 text, hex when the bytes are not valid UTF-8.
    Text,
    Bool,
    ArrayOf(Box<Semantic>),
}

/// Raw wire value handed to [`convert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Raw<'a> {
    Bytes(&'a [u8]),
    Int(i64),
    Bool(bool),
    List(Vec<Raw<'a>>),
}

/// Converted text plus whether the source bytes were valid UTF-8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextValue {
    pub text: String,
    pub valid_utf8: bool,
}

pub fn hex(raw: &[u8]) -> String {
    hex::encode(raw)
}

pub fn text(raw: &[u8]) -> TextValue {
    match std::str::from_utf8(raw) {
        Ok(s) => TextValue {
            text: s.to_owned(),
            valid_utf8: true,
        },
        Err(_) => TextValue {
            text: hex::encode(raw),
            valid_utf8: false,
        },
    }
}

pub fn address_hex(path: &str, raw: &[u8]) -> Result<String, ConversionError> {
    if raw.is_empty() {
        return Ok(String::new());
    }
    Address::from_bytes(raw)
        .map(|a| a.to_hex())
        .map_err(|e| ConversionError::new(path, e.to_string()))
}

pub fn hash_hex(path: &str, raw: &[u8]) -> Result<String, ConversionError> {
    if raw.is_empty() {
        return Ok(String::new());
    }
    Hash32::from_slice(raw)
        .map(|h| h.to_hex())
        .map_err(|e| ConversionError::new(path, e.to_string()))
}

pub fn amount(path: &str, value: i64) -> Result<i64, ConversionError> {
    if value < 0 {
        Err(ConversionError::new(path, format!("negative amount {value}")))
    } else {
        Ok(value)
    }
}

pub fn unsigned(path: &str, value: i64) -> Result<u64, ConversionError> {
    u64::try_from(value).map_err(|_| ConversionError::new(path, format!("negative value {value}")))
}

/// Converts `raw` to `target`. Conversion is deterministic and total for
/// well-formed input; shape mismatches report the field path.
pub fn convert(path: &str, raw: &Raw<'_>, target: &Semantic) -> Result<Value, ConversionError> {
    let mismatch = || ConversionError::new(path, format!("{raw:?} is not convertible to {target:?}"));
    Ok(match (target, raw) {
        (Semantic::Hex, Raw::Bytes(b)) => Value::Text(hex(b)),
        (Semantic::Hash, Raw::Bytes(b)) => Value::Text(hash_hex(path, b)?),
        (Semantic::AddressHex, Raw::Bytes(b)) => Value::Text(address_hex(path, b)?),
        (Semantic::Text, Raw::Bytes(b)) => Value::Text(text(b).text),
        (Semantic::Amount, Raw::Int(v)) => Value::Int(amount(path, *v)?),
        (Semantic::Int, Raw::Int(v)) => Value::Int(*v),
        (Semantic::UInt | Semantic::MsTimestamp, Raw::Int(v)) => Value::UInt(unsigned(path, *v)?),
        (Semantic::Bool, Raw::Bool(b)) => Value::Bool(*b),
        (Semantic::ArrayOf(inner), Raw::List(items)) => Value::Array(
            items
                .iter()
                .enumerate()
                .map(|(i, item)| convert(&format!("{path}[{i}]"), item, inner))
                .collect::<Result<_, _>>()?,
        ),
        _ => return Err(mismatch()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn address_to_hex() {
        let mut raw = [0u8; 21];
        raw[0] = 0x41;
        raw[20] = 0xff;
        let v = convert("a", &Raw::Bytes(&raw), &Semantic::AddressHex).unwrap();
        assert_eq!(v, Value::Text(format!("41{}ff", "00".repeat(19))));
    }

    #[test]
    fn empty_hex_is_empty_string() {
        assert_eq!(
            convert("x", &Raw::Bytes(&[]), &Semantic::Hex).unwrap(),
            Value::Text(String::new())
        );
    }

    #[test]
    fn invalid_utf8_falls_back_to_hex() {
        let t = text(&[0xff, 0xfe, 0x41]);
        assert_eq!(t.text, "fffe41");
        assert!(!t.valid_utf8);
        let ok = text("Diamond".as_bytes());
        assert!(ok.valid_utf8);
        assert_eq!(ok.text, "Diamond");
    }

    #[test]
    fn negative_amount_carries_path() {
        let err = convert("params.amount", &Raw::Int(-5), &Semantic::Amount).unwrap_err();
        assert_eq!(err.path, "params.amount");
    }

    #[test]
    fn arrays_convert_elementwise() {
        let raw = Raw::List(vec![Raw::Int(1), Raw::Int(-1)]);
        let err = convert("v", &raw, &Semantic::ArrayOf(Box::new(Semantic::UInt))).unwrap_err();
        assert_eq!(err.path, "v[1]");
        let ok = convert("v", &raw, &Semantic::ArrayOf(Box::new(Semantic::Int))).unwrap();
        assert_eq!(ok, Value::Array(vec![Value::Int(1), Value::Int(-1)]));
    }

    #[test]
    fn bad_address_is_an_error() {
        assert!(address_hex("a", &[0x41; 20]).is_err());
        assert_eq!(address_hex("a", &[]).unwrap(), "");
    }
}
