//! Serde helpers: big integers travel as decimal strings.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

fn parse<E: serde::de::Error>(s: &str) -> Result<BigUint, E> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(E::custom(format!("expected a decimal string, got {s:?}")));
    }
    s.parse().map_err(E::custom)
}

pub mod dec {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s)
    }
}

pub mod dec_opt {
    use super::*;

    pub fn serialize<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        n.as_ref().map(|n| n.to_str_radix(10)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| parse(&s)).transpose()
    }
}

pub mod dec_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|n| n.to_str_radix(10)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse(s)).collect()
    }
}

/// Sorted set; a duplicated or out-of-order entry is rejected, not collapsed.
pub mod dec_set {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BTreeSet<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|n| n.to_str_radix(10)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<BigUint>, D::Error> {
        let items: Vec<BigUint> = Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse(s))
            .collect::<Result<_, _>>()?;
        if items.windows(2).any(|w| w[0] >= w[1]) {
            return Err(D::Error::custom("set elements must be strictly increasing"));
        }
        Ok(items.into_iter().collect())
    }
}

/// Canonical text: sorted keys, no insignificant whitespace.
pub fn canonical<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    serde_json::to_string(&v)
}
