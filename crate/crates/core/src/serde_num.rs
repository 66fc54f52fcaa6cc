//! Big integers as plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let n = serde_json::Number::deserialize(d)?;
    BigUint::from_str(&n.to_string()).map_err(serde::de::Error::custom)
}
