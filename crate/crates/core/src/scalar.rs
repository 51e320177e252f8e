//! The coefficient field.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssignRef, NumRef, ToPrimitive};

/// A computable field. Exact zero-testing needs [`BigRational`]; the float
/// impls exist for quick experiments and tolerate rounding at the caller's risk.
pub trait Field:
    NumRef + NumAssignRef + Neg<Output = Self> + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    fn from_ratio(numer: BigInt, denom: BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(BigInt::from(n), BigInt::from(1))
    }

    /// Parse `p` or `p/q` (optionally signed).
    fn parse_ratio(text: &str) -> Option<Self> {
        let text = text.trim();
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (text.parse::<BigInt>().ok()?, BigInt::from(1)),
        };
        if d == BigInt::from(0) {
            return None;
        }
        Some(Self::from_ratio(n, d))
    }

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for BigRational {
    fn from_ratio(numer: BigInt, denom: BigInt) -> Self {
        BigRational::new(numer, denom)
    }
}

impl Field for f64 {
    fn from_ratio(numer: BigInt, denom: BigInt) -> Self {
        numer.to_f64().unwrap_or(f64::NAN) / denom.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f32 {
    fn from_ratio(numer: BigInt, denom: BigInt) -> Self {
        (numer.to_f64().unwrap_or(f64::NAN) / denom.to_f64().unwrap_or(f64::NAN)) as f32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parses_fractions() {
        let q = BigRational::parse_ratio("-6/4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert!(BigRational::parse_ratio("1/0").is_none());
        assert!(BigRational::parse_ratio("0").unwrap().is_zero());
        assert_eq!(f64::parse_ratio("1/4").unwrap(), 0.25);
    }
}
