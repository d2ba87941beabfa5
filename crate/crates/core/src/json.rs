//! Serde helpers that write big integers as plain JSON numbers.

use num_bigint::{BigInt, BigUint};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

pub fn number<T: ToString>(n: &T) -> Number {
    n.to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers")
}

pub fn parse_int(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| format!("{n} is not an integer")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{s:?} is not an integer")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

pub fn parse_uint(v: &Value) -> Result<BigUint, String> {
    let n = parse_int(v)?;
    n.to_biguint().ok_or_else(|| format!("{n} is negative"))
}

pub mod int_seq {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(|v| parse_int(v).map_err(D::Error::custom))
            .collect()
    }
}

pub mod uint_seq {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(|v| parse_uint(v).map_err(D::Error::custom))
            .collect()
    }
}

pub mod opt_uint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(number).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        match Value::deserialize(d)? {
            Value::Null => Ok(None),
            v => parse_uint(&v).map(Some).map_err(D::Error::custom),
        }
    }
}

pub mod uint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        number(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        parse_uint(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}
