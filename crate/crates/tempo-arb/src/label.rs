//! Exact rational arc labels.
//!
//! Several algorithms in this crate branch on label *equality* (for example
//! when collecting the subgraph induced by one label value), so labels are
//! arbitrary-precision rationals and every comparison is exact. Floating
//! point is never used.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// A nonnegative rational time label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Label(BigRational);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("negative label")]
    Negative,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed label `{0}`")]
    Malformed(String),
}

impl Label {
    pub fn zero() -> Self {
        Label(BigRational::zero())
    }

    pub fn from_integer(value: u64) -> Self {
        Label(BigRational::from_integer(BigInt::from(value)))
    }

    /// Builds a label from a numerator/denominator pair, normalizing on the
    /// way in.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self, LabelError> {
        if denominator.is_zero() {
            return Err(LabelError::ZeroDenominator);
        }
        let ratio = BigRational::new(numerator, denominator);
        if ratio.is_negative() {
            return Err(LabelError::Negative);
        }
        Ok(Label(ratio))
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Parses either `p/q` or a decimal such as `2.5`. Signs are rejected:
/// labels are times, never negative.
impl FromStr for Label {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, LabelError> {
        if s.starts_with('-') {
            return Err(LabelError::Negative);
        }
        if let Some((num, den)) = s.split_once('/') {
            let p = parse_digits(num).ok_or_else(|| LabelError::Malformed(s.to_string()))?;
            let q = parse_digits(den).ok_or_else(|| LabelError::Malformed(s.to_string()))?;
            return Label::new(p, q);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() {
                return Err(LabelError::Malformed(s.to_string()));
            }
            let int = parse_digits(int_part).ok_or_else(|| LabelError::Malformed(s.to_string()))?;
            let frac = parse_digits(frac_part).ok_or_else(|| LabelError::Malformed(s.to_string()))?;
            let scale = BigInt::from(10).pow(frac_part.len() as u32);
            return Label::new(int * &scale + frac, scale);
        }
        let p = parse_digits(s).ok_or_else(|| LabelError::Malformed(s.to_string()))?;
        Label::new(p, BigInt::one())
    }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lab(s: &str) -> Label {
        s.parse().unwrap()
    }

    #[test]
    fn fraction_and_decimal_forms_agree() {
        assert_eq!(lab("3/2"), lab("1.5"));
        assert_eq!(lab("1/2"), lab("0.5"));
        assert_eq!(lab("1/2"), lab("0.500"));
        assert_eq!(lab("2"), lab("2.0"));
        assert_eq!(lab("0"), Label::zero());
        assert_eq!(lab("4/2"), Label::from_integer(2));
    }

    #[test]
    fn ordering_is_exact() {
        assert!(lab("1/3") < lab("1/2"));
        assert!(lab("1/2") < lab("2"));
        assert!(lab("2") <= lab("2"));
        assert!(lab("1000000000000000000000/3") > lab("4"));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!("-1".parse::<Label>(), Err(LabelError::Negative));
        assert_eq!("1/0".parse::<Label>(), Err(LabelError::ZeroDenominator));
        assert!(matches!("".parse::<Label>(), Err(LabelError::Malformed(_))));
        assert!(matches!("2.".parse::<Label>(), Err(LabelError::Malformed(_))));
        assert!(matches!("1.2.3".parse::<Label>(), Err(LabelError::Malformed(_))));
        assert!(matches!("a/b".parse::<Label>(), Err(LabelError::Malformed(_))));
        assert!(matches!("+1".parse::<Label>(), Err(LabelError::Malformed(_))));
    }

    proptest! {
        #[test]
        fn display_round_trips(num in 0u64..1_000_000, den in 1u64..1_000) {
            let label = Label::new(BigInt::from(num), BigInt::from(den)).unwrap();
            let shown = label.to_string();
            prop_assert_eq!(shown.parse::<Label>().unwrap(), label);
        }
    }
}
