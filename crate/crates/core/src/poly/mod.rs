//! Exact polynomial arithmetic over arbitrary-precision integers.
//!
//! Two rings live here: [`QPoly`], univariate polynomials in `q` with
//! [`BigInt`] coefficients, and [`XQPoly`], polynomials in `x` whose
//! coefficients are themselves `QPoly` values. Both are stored densely in
//! ascending-power order and kept normalized: the leading coefficient is
//! nonzero, and the zero polynomial is the empty sequence.
//!
//! The JSON encoding is an array of coefficients in ascending power, with
//! every integer written as a decimal string so no precision is lost.

mod qpoly;
mod xqpoly;

pub use num_bigint::BigInt;
pub(crate) use qpoly::forward_binop;
pub use qpoly::QPoly;
pub use xqpoly::XQPoly;

/// Serde helpers for writing a [`BigInt`] as a decimal string.
pub mod decimal {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(D::Error::custom)
    }

    pub(crate) fn parse(text: &str) -> Result<BigInt, String> {
        // `BigInt::from_str` accepts a leading '+', which is not canonical.
        let digits = text.strip_prefix('-').unwrap_or(text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid decimal integer {text:?}"));
        }
        BigInt::from_str(text).map_err(|e| e.to_string())
    }

    /// Same encoding for a whole sequence of integers.
    pub mod seq {
        use num_bigint::BigInt;
        use serde::de::Error as _;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&v.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| super::parse(t).map_err(D::Error::custom))
                .collect()
        }
    }
}
