use std::fmt;

use thiserror::Error;

/// SUN per TRX.
pub const SUN_PER_TRX: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("negative transfer amount {0}")]
pub struct NegativeAmount(pub i64);

/// An amount in a token's smallest unit (SUN for TRX).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TokenAmount(pub i64);

impl TokenAmount {
    /// Amounts that move value must not be negative.
    pub fn transfer(value: i64) -> Result<Self, NegativeAmount> {
        if value < 0 {
            Err(NegativeAmount(value))
        } else {
            Ok(Self(value))
        }
    }

    pub fn sun(self) -> i64 {
        self.0
    }

    pub fn from_trx(trx: i64) -> Option<Self> {
        trx.checked_mul(SUN_PER_TRX).map(Self)
    }
}

impl fmt::Display for TokenAmount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_trx_is_a_million_sun() {
        assert_eq!(TokenAmount::from_trx(1), Some(TokenAmount(1_000_000)));
        assert_eq!(TokenAmount::from_trx(i64::MAX), None);
    }

    #[test]
    fn negative_transfer_rejected() {
        assert_eq!(TokenAmount::transfer(-1), Err(NegativeAmount(-1)));
        assert_eq!(TokenAmount::transfer(0), Ok(TokenAmount(0)));
    }
}
