//! h-vectors, socle-vectors and the bijection between them.
//!
//! The minimum h-vector of a socle-vector is built from the top degree
//! down, each entry being the fewest derivatives the entry above can have
//! plus the socle contribution of that degree. Reading the same recursion
//! backwards gives the maximum socle-vector of an h-vector, and the two maps
//! are mutually inverse on minimum h-vectors.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, HVectorError, Result, SocleVectorError};
use crate::json;
use crate::macaulay::{macaulay_bound, min_prev, monomial_count};

/// Hilbert function `(1, h_1, ..., h_e)` of a standard graded artinian
/// algebra, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HVector(Vec<BigUint>);

/// Graded socle dimensions `(0, s_1, ..., s_e)` with `s_e > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SocleVector(Vec<BigUint>);

/// Checks that `seq` is a finite O-sequence starting with 1.
///
/// Trailing zeros are dropped. Interior zeros and negative entries are
/// rejected, as is any entry above Macaulay's bound for the previous one.
pub fn validate_h(seq: &[BigInt]) -> Result<HVector, HVectorError> {
    let mut len = seq.len();
    while len > 1 && seq[len - 1].is_zero() {
        len -= 1;
    }
    let seq = &seq[..len];
    let first = seq.first().ok_or(HVectorError::Empty)?;
    if !first.is_one() {
        return Err(HVectorError::FirstEntryNotOne(first.clone()));
    }
    let mut entries = Vec::with_capacity(len);
    for (degree, value) in seq.iter().enumerate() {
        if !value.is_positive() {
            return Err(HVectorError::NonPositiveEntry {
                degree,
                value: value.clone(),
            });
        }
        entries.push(value.magnitude().clone());
    }
    for d in 1..entries.len().saturating_sub(1) {
        let bound = macaulay_bound(&entries[d], d);
        if entries[d + 1] > bound {
            return Err(HVectorError::MacaulayViolation {
                degree: d,
                value: entries[d + 1].clone(),
                bound,
            });
        }
    }
    Ok(HVector(entries))
}

fn signed(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl HVector {
    pub fn new(entries: Vec<BigUint>) -> Result<Self, HVectorError> {
        let seq: Vec<BigInt> = entries.into_iter().map(BigInt::from).collect();
        validate_h(&seq)
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self, HVectorError> {
        validate_h(&signed(entries))
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    /// Top degree `e`, the last degree with a non-zero entry.
    pub fn top_degree(&self) -> usize {
        self.0.len() - 1
    }

    /// `h_d`, zero beyond the top degree.
    pub fn get(&self, d: usize) -> BigUint {
        self.0.get(d).cloned().unwrap_or_default()
    }

    /// `r = h_1`, zero for the h-vector `(1)` of the field.
    pub fn codimension(&self) -> BigUint {
        self.get(1)
    }

    /// Codimension as a machine integer, for operations that materialize
    /// monomials.
    pub fn small_codimension(&self) -> Result<usize> {
        self.codimension()
            .to_usize()
            .ok_or_else(|| Error::TooLarge(format!("codimension {}", self.codimension())))
    }

    /// Entries as machine integers, for operations that materialize monomials.
    pub fn small_entries(&self) -> Result<Vec<usize>> {
        self.0
            .iter()
            .map(|v| {
                v.to_usize()
                    .ok_or_else(|| Error::TooLarge(format!("h-vector entry {v}")))
            })
            .collect()
    }

    /// Entrywise `self <= other`, missing entries read as zero.
    pub fn le_entrywise(&self, other: &HVector) -> bool {
        let n = self.0.len().max(other.0.len());
        (0..n).all(|d| self.get(d) <= other.get(d))
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[BigUint]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Checks the socle-vector conventions `s_0 = 0`, `s_e > 0`, `e >= 1`.
pub fn validate_s(seq: &[BigInt]) -> Result<SocleVector, SocleVectorError> {
    if seq.len() < 2 {
        return Err(SocleVectorError::TooShort);
    }
    if !seq[0].is_zero() {
        return Err(SocleVectorError::NonZeroFirst(seq[0].clone()));
    }
    let mut entries = Vec::with_capacity(seq.len());
    for (degree, value) in seq.iter().enumerate() {
        if value.is_negative() {
            return Err(SocleVectorError::Negative {
                degree,
                value: value.clone(),
            });
        }
        entries.push(value.magnitude().clone());
    }
    if entries.last().is_some_and(Zero::is_zero) {
        return Err(SocleVectorError::ZeroTop);
    }
    Ok(SocleVector(entries))
}

impl SocleVector {
    pub fn new(entries: Vec<BigUint>) -> Result<Self, SocleVectorError> {
        let seq: Vec<BigInt> = entries.into_iter().map(BigInt::from).collect();
        validate_s(&seq)
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self, SocleVectorError> {
        validate_s(&signed(entries))
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn top_degree(&self) -> usize {
        self.0.len() - 1
    }

    /// `s_d`, zero beyond the top degree.
    pub fn get(&self, d: usize) -> BigUint {
        self.0.get(d).cloned().unwrap_or_default()
    }

    /// Socle concentrated in the top degree.
    pub fn is_level(&self) -> bool {
        self.0[..self.0.len() - 1].iter().all(Zero::is_zero)
    }

    pub fn is_gorenstein(&self) -> bool {
        self.is_level() && self.0.last().is_some_and(One::is_one)
    }

    pub fn le_entrywise(&self, other: &SocleVector) -> bool {
        let n = self.0.len().max(other.0.len());
        (0..n).all(|d| self.get(d) <= other.get(d))
    }

    /// Copy with the entry of degree `d` lowered by one; `None` when that
    /// entry is zero or the result is not a socle-vector.
    pub fn decremented(&self, d: usize) -> Option<SocleVector> {
        let mut entries = self.0.clone();
        let slot = entries.get_mut(d)?;
        if slot.is_zero() {
            return None;
        }
        *slot -= 1u32;
        SocleVector::new(entries).ok()
    }
}

impl fmt::Display for SocleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

#[derive(Serialize, Deserialize)]
struct HJson {
    #[serde(with = "json::int_seq")]
    h: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct SJson {
    #[serde(with = "json::int_seq")]
    s: Vec<BigInt>,
}

impl Serialize for HVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HJson {
            h: self.0.iter().cloned().map(BigInt::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = HJson::deserialize(d)?;
        validate_h(&raw.h).map_err(serde::de::Error::custom)
    }
}

impl Serialize for SocleVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SJson {
            s: self.0.iter().cloned().map(BigInt::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SocleVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = SJson::deserialize(d)?;
        validate_s(&raw.s).map_err(serde::de::Error::custom)
    }
}

/// Plain-array encodings for use inside larger JSON records.
pub mod h_array {
    use super::*;

    pub fn serialize<S: Serializer>(h: &HVector, s: S) -> Result<S::Ok, S::Error> {
        json::uint_seq::serialize(&h.0, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<HVector, D::Error> {
        HVector::new(json::uint_seq::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub mod s_array {
    use super::*;

    pub fn serialize<S: Serializer>(v: &SocleVector, s: S) -> Result<S::Ok, S::Error> {
        json::uint_seq::serialize(&v.0, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SocleVector, D::Error> {
        SocleVector::new(json::uint_seq::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Entrywise minimum h-vector among algebras with socle-vector `s`.
pub fn min_h_for_socle(s: &SocleVector) -> HVector {
    let e = s.top_degree();
    let mut h = vec![BigUint::zero(); e + 1];
    h[e] = s.get(e);
    for i in (1..e).rev() {
        h[i] = min_prev(&h[i + 1], i + 1) + s.get(i);
    }
    h[0] = BigUint::one();
    HVector::new(h).expect("the minimum h-vector recursion yields an O-sequence")
}

/// Entrywise maximum socle-vector among algebras with h-vector `h`; it is
/// the socle-vector of the lex-segment ideal of `h`.
pub fn max_socle_for_h(h: &HVector) -> Result<SocleVector> {
    let e = h.top_degree();
    if e == 0 {
        return Err(Error::TrivialAlgebra);
    }
    let mut s = vec![BigUint::zero(); e + 1];
    s[e] = h.get(e);
    for (i, slot) in s.iter_mut().enumerate().take(e).skip(1) {
        *slot = h.get(i) - min_prev(&h.get(i + 1), i + 1);
    }
    Ok(SocleVector::new(s).expect("top entry is h_e > 0"))
}

/// Least codimension of an algebra with socle-vector `s`.
pub fn min_codimension(s: &SocleVector) -> BigUint {
    min_h_for_socle(s).codimension()
}

/// Largest `t` with `h_t = C(r - 1 + t, t)`, i.e. the last degree in which
/// `h` agrees with the polynomial ring.
pub fn generic_index(h: &HVector) -> usize {
    let r = h.codimension();
    let mut t = 0;
    while t < h.top_degree() && h.get(t + 1) == monomial_count(&r, t + 1) {
        t += 1;
    }
    t
}

/// `(h_d)` admits maximal growth into degree `d + 1`.
pub fn grows_maximally(h: &HVector, d: usize) -> bool {
    macaulay_bound(&h.get(d), d) == h.get(d + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(v: &[u64]) -> HVector {
        HVector::from_u64s(v).unwrap()
    }

    fn s(v: &[u64]) -> SocleVector {
        SocleVector::from_u64s(v).unwrap()
    }

    #[test]
    fn validation() {
        assert!(HVector::from_u64s(&[1, 4, 7, 9, 11, 10, 7, 5]).is_ok());
        assert_eq!(
            HVector::from_u64s(&[1, 3, 7]).unwrap_err(),
            HVectorError::MacaulayViolation {
                degree: 1,
                value: BigUint::from(7u32),
                bound: BigUint::from(6u32)
            }
        );
        let field = h(&[1]);
        assert_eq!(field.top_degree(), 0);
        assert_eq!(h(&[1, 2, 0, 0]), h(&[1, 2]));
        assert!(matches!(
            HVector::from_u64s(&[2, 1]),
            Err(HVectorError::FirstEntryNotOne(_))
        ));
        assert!(matches!(
            HVector::from_u64s(&[1, 0, 1]),
            Err(HVectorError::NonPositiveEntry { degree: 1, .. })
        ));
        assert!(matches!(
            validate_h(&[BigInt::from(1), BigInt::from(-2)]),
            Err(HVectorError::NonPositiveEntry { degree: 1, .. })
        ));
        assert_eq!(HVector::from_u64s(&[]), Err(HVectorError::Empty));
    }

    #[test]
    fn socle_validation() {
        assert!(s(&[0, 0, 1]).is_gorenstein());
        assert!(s(&[0, 0, 3]).is_level());
        assert!(!s(&[0, 1, 3]).is_level());
        assert_eq!(
            SocleVector::from_u64s(&[0, 1, 0]),
            Err(SocleVectorError::ZeroTop)
        );
        assert_eq!(
            SocleVector::from_u64s(&[1]),
            Err(SocleVectorError::TooShort)
        );
    }

    #[test]
    fn worked_bijection_example() {
        let socle = s(&[0, 0, 1, 0, 2, 4, 2, 5]);
        let minimum = min_h_for_socle(&socle);
        assert_eq!(minimum, h(&[1, 4, 7, 9, 11, 10, 7, 5]));
        assert_eq!(min_codimension(&socle), BigUint::from(4u32));
        assert_eq!(max_socle_for_h(&minimum).unwrap(), socle);
    }

    #[test]
    fn small_cases() {
        assert_eq!(min_h_for_socle(&s(&[0, 1])), h(&[1, 1]));
        assert_eq!(min_codimension(&s(&[0, 1])), BigUint::one());
        assert_eq!(max_socle_for_h(&h(&[1, 5])).unwrap(), s(&[0, 5]));
        assert_eq!(
            max_socle_for_h(&h(&[1, 3, 6, 10, 12, 14])).unwrap(),
            s(&[0, 0, 0, 1, 0, 14])
        );
        assert_eq!(max_socle_for_h(&h(&[1])), Err(Error::TrivialAlgebra));
        // (0,0,2): h_2 = 2, h_1 = min_prev(2, 2) = 2 (two quadrics y1^2, y2^2 need two variables)
        assert_eq!(
            min_codimension(&s(&[0, 0, 2])),
            min_prev(&BigUint::from(2u32), 2)
        );
        assert_eq!(min_codimension(&s(&[0, 0, 2])), BigUint::from(2u32));
    }

    #[test]
    fn level_minimum_is_iterated_lower_shift() {
        for top in 1..12u64 {
            for e in 1..7usize {
                let mut v = vec![0u64; e + 1];
                v[e] = top;
                let got = min_h_for_socle(&s(&v));
                let mut expected = BigUint::from(top);
                for i in (2..=e).rev() {
                    assert_eq!(got.get(i), expected);
                    expected = min_prev(&expected, i);
                }
                assert_eq!(got.codimension(), expected);
            }
        }
    }

    #[test]
    fn generic_indices() {
        assert_eq!(generic_index(&h(&[1, 3, 6, 10, 12, 14])), 3);
        assert_eq!(generic_index(&h(&[1, 7])), 1);
        assert_eq!(generic_index(&h(&[1, 4, 7, 9, 11, 10, 7, 5])), 1);
        assert_eq!(generic_index(&h(&[1, 3, 6])), 2);
        assert_eq!(generic_index(&h(&[1])), 0);
    }

    #[test]
    fn json_shape() {
        let v = h(&[1, 3, 6]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"h":[1,3,6]}"#);
        let back: HVector = serde_json::from_str(r#"{"h":[1,3,6,0]}"#).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<HVector>(r#"{"h":[1,3,7]}"#).is_err());
        let sv = s(&[0, 1, 2]);
        assert_eq!(serde_json::to_string(&sv).unwrap(), r#"{"s":[0,1,2]}"#);
        let huge: HVector =
            serde_json::from_str(r#"{"h":[1,123456789012345678901234567890]}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&huge).unwrap(),
            r#"{"h":[1,123456789012345678901234567890]}"#
        );
    }
}
