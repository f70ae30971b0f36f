//! Big integers travel as decimal strings in every serialized form.

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_str_radix(10))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(serde::de::Error::custom)
}

/// Any integer count, written as a decimal string like the big ones.
pub fn display<T: std::fmt::Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&v.to_str_radix(10)),
            None => s.serialize_none(),
        }
    }
}

/// `BTreeMap<u64, BigUint>` as a JSON object of decimal strings, keys ascending.
pub mod map {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;

    use super::*;

    pub fn serialize<S: Serializer>(value: &BTreeMap<u64, BigUint>, s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_map(Some(value.len()))?;
        for (k, v) in value {
            out.serialize_entry(&k.to_string(), &v.to_str_radix(10))?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, BigUint>, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let k = k.parse().map_err(serde::de::Error::custom)?;
                let v = v.parse().map_err(serde::de::Error::custom)?;
                Ok((k, v))
            })
            .collect()
    }
}
