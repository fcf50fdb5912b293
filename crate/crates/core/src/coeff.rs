//! JSON form of integer coefficients: a plain number while it fits in `i64`,
//! otherwise a decimal string.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserializer, Serializer};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff(pub BigInt);

impl serde::Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct CoeffVisitor;
        impl Visitor<'_> for CoeffVisitor {
            type Value = Coeff;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Coeff, E> {
                Ok(Coeff(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Coeff, E> {
                Ok(Coeff(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Coeff, E> {
                v.parse::<BigInt>().map(Coeff).map_err(E::custom)
            }
        }
        d.deserialize_any(CoeffVisitor)
    }
}
