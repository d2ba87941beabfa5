//! Graded Betti numbers of lex-segment ideals and what they force on the
//! socle.
//!
//! The lex-segment ideal has the largest Betti numbers among all ideals with
//! a given Hilbert function; every other resolution is obtained from it by
//! cancelling equal shifts in adjacent modules. Only cancellations between
//! the last two modules can change the socle, so those shifts are the ones
//! reported here.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macaulay::{binom_u64, macaulay_bound, min_prev};
use crate::monomial::{lex_ideal_for_h, m_of, MonomialIdeal};
use crate::vectors::HVector;

/// Graded Betti numbers `β_{i,j}` of `R/I` for `1 <= i <= r`; absent
/// entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    r: usize,
    beta: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(r: usize, entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Result<Self> {
        let mut beta = BTreeMap::new();
        for ((i, j), v) in entries {
            if i == 0 || i > r {
                return Err(Error::DegreeOutOfRange {
                    degree: i,
                    min: 1,
                    max: r,
                });
            }
            if v > 0 {
                *beta.entry((i, j)).or_insert(0) += v;
            }
        }
        Ok(BettiTable { r, beta })
    }

    pub fn codimension(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.beta.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Non-zero entries `((i, j), β_{i,j})`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.beta.iter().map(|(&k, &v)| (k, v))
    }

    /// Shifts `j` with a non-zero entry in homological degree `i`.
    pub fn shifts(&self, i: usize) -> Vec<usize> {
        self.beta
            .keys()
            .filter(|(ii, _)| *ii == i)
            .map(|&(_, j)| j)
            .collect()
    }
}

impl fmt::Display for BettiTable {
    /// Rows `i = 1..r`, one column per shift, zero entries left blank.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<usize> = {
            let mut c: Vec<usize> = self.beta.keys().map(|&(_, j)| j).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let cells: Vec<Vec<String>> = (1..=self.r)
            .map(|i| {
                cols.iter()
                    .map(|&j| match self.get(i, j) {
                        0 => String::new(),
                        v => v.to_string(),
                    })
                    .collect()
            })
            .collect();
        let width = cols
            .iter()
            .map(|j| j.to_string().len())
            .chain(cells.iter().flatten().map(String::len))
            .max()
            .unwrap_or(1);
        write!(f, "i\\j")?;
        for j in &cols {
            write!(f, " {j:>width$}")?;
        }
        for (i, row) in cells.iter().enumerate() {
            write!(f, "\n{:>3}", i + 1)?;
            for cell in row {
                write!(f, " {cell:>width$}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    r: usize,
    beta: Vec<(usize, usize, u64)>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiJson {
            r: self.r,
            beta: self.beta.iter().map(|(&(i, j), &v)| (i, j, v)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BettiJson::deserialize(d)?;
        BettiTable::new(raw.r, raw.beta.into_iter().map(|(i, j, v)| ((i, j), v)))
            .map_err(serde::de::Error::custom)
    }
}

/// Betti numbers of a lex-segment ideal by the Eliahou-Kervaire formula
/// `β_{i,j} = Σ_{T ∈ G(I)_{j-i+1}} C(m(T) - 1, i - 1)`.
///
/// The ideal must be lex-segment and contain a full degree within its
/// stored bound, so that every minimal generator is visible.
pub fn ek_betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    if let Some(d) = ideal.lex_violation() {
        return Err(Error::NotLexSegment(d));
    }
    let full = ideal
        .artinian_degree()
        .ok_or(Error::NotArtinian(ideal.bound()))?;
    let r = ideal.num_vars();
    let mut beta: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for d in 1..=full {
        for t in ideal.generators(d)? {
            let m = m_of(&t)?;
            for i in 1..=m {
                let c = binom_u64((m - 1) as u64, (i - 1) as u64)
                    .to_u64()
                    .expect("C(m-1, i-1) with m <= r is small");
                *beta.entry((i, d + i - 1)).or_insert(0) += c;
            }
        }
    }
    BettiTable::new(r, beta)
}

/// Outcome of comparing `h(z)(1-z)^r` with `1 + Σ (-1)^i β_{i,j} z^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesIdentity {
    /// Coefficients of the left side minus the right side, lowest degree
    /// first, trailing zeros removed.
    pub residual: Vec<BigInt>,
}

impl SeriesIdentity {
    pub fn holds(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Checks the identity `h(z)(1-z)^r = 1 + Σ_{i,j} (-1)^i β_{i,j} z^j`
/// relating an h-vector to any graded Betti table of an algebra having it.
pub fn betti_identity(h: &HVector, table: &BettiTable) -> Result<SeriesIdentity> {
    if h.top_degree() == 0 {
        return Err(Error::TrivialAlgebra);
    }
    let r = h.small_codimension()?;
    if table.codimension() != r {
        return Err(Error::InvalidIdeal(format!(
            "table has codimension {} but the h-vector has {r}",
            table.codimension()
        )));
    }
    let mut lhs: Vec<BigInt> = h.entries().iter().cloned().map(BigInt::from).collect();
    for _ in 0..r {
        let mut next = vec![BigInt::zero(); lhs.len() + 1];
        for (k, c) in lhs.iter().enumerate() {
            next[k] += c;
            next[k + 1] -= c;
        }
        lhs = next;
    }
    let top = table
        .entries()
        .map(|((_, j), _)| j)
        .max()
        .unwrap_or(0)
        .max(lhs.len().saturating_sub(1));
    let mut diff = vec![BigInt::zero(); top + 1];
    for (k, c) in lhs.iter().enumerate() {
        diff[k] += c;
    }
    diff[0] -= BigInt::one();
    for ((i, j), v) in table.entries() {
        let term = BigInt::from(v);
        if i % 2 == 0 {
            diff[j] -= term;
        } else {
            diff[j] += term;
        }
    }
    while diff.last().is_some_and(Zero::is_zero) {
        diff.pop();
    }
    Ok(SeriesIdentity { residual: diff })
}

/// Shifts `d` for which `R(-d)` appears in both of the last two modules of
/// the lex-segment resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationReport {
    pub r: usize,
    pub shifts: Vec<usize>,
}

impl CancellationReport {
    /// Socle degree `d - r` affected by each shift.
    pub fn socle_degrees(&self) -> Vec<usize> {
        self.shifts.iter().map(|d| d - self.r).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }
}

/// Indices `i >= 2` at which `min_prev(h_i, i) != h_{i-1}` holds but the
/// growth `h_i -> h_{i+1}` is not maximal (`h_{e+1} = 0`).
pub fn cancellation_indices(h: &HVector) -> Vec<usize> {
    let e = h.top_degree();
    (2..=e)
        .filter(|&i| {
            let hi = h.get(i);
            min_prev(&hi, i) != h.get(i - 1) && macaulay_bound(&hi, i) != h.get(i + 1)
        })
        .collect()
}

/// Sufficient condition for a unique socle-vector in any codimension: for
/// every `i >= 2`, a socle entry in degree `i - 1` of the lex algebra forces
/// maximal growth from degree `i` to `i + 1`.
pub fn no_cancellation_uniqueness(h: &HVector) -> bool {
    cancellation_indices(h).is_empty()
}

/// Lists the possible cancellations in the lex-segment resolution of `h`.
///
/// For `r <= 3` the list is also derived arithmetically from
/// [`cancellation_indices`] and the two must agree.
pub fn possible_cancellations(h: &HVector) -> Result<CancellationReport> {
    let e = h.top_degree();
    if e == 0 {
        return Err(Error::TrivialAlgebra);
    }
    let ideal = lex_ideal_for_h(h, e + 1)?;
    let table = ek_betti(&ideal)?;
    let r = table.codimension();
    let shifts: Vec<usize> = if r < 2 {
        Vec::new()
    } else {
        table
            .shifts(r)
            .into_iter()
            .filter(|&d| table.get(r - 1, d) > 0)
            .collect()
    };
    if r <= 3 {
        let arithmetic: Vec<usize> = cancellation_indices(h)
            .into_iter()
            .map(|i| i - 1 + r)
            .collect();
        if arithmetic != shifts {
            return Err(Error::Invariant(format!(
                "Betti shifts {shifts:?} disagree with the arithmetic shifts {arithmetic:?}"
            )));
        }
    }
    Ok(CancellationReport { r, shifts })
}

fn check_forcing_degree(h: &HVector, d: usize) -> Result<()> {
    let e = h.top_degree();
    if d < 2 || d > e {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            min: 2,
            max: e,
        });
    }
    Ok(())
}

/// Socle entry in degree `d - 1` shared by every algebra with h-vector `h`,
/// when `h_d` grows maximally into degree `d + 1`:
/// `α = h_{d-1} - min_prev(h_d, d)`.
pub fn forced_socle_entry(h: &HVector, d: usize) -> Result<Option<BigUint>> {
    check_forcing_degree(h, d)?;
    let hd = h.get(d);
    if macaulay_bound(&hd, d) != h.get(d + 1) {
        return Ok(None);
    }
    Ok(Some(h.get(d - 1) - min_prev(&hd, d)))
}

/// The older, weaker criterion: it applies only when some `c <= h_{d-1}`
/// grows maximally onto `h_d` *and* `h_d` grows maximally onto `h_{d+1}`;
/// the forced entry is then `h_{d-1} - c`.
pub fn forced_socle_entry_maximal_growth(h: &HVector, d: usize) -> Result<Option<BigUint>> {
    check_forcing_degree(h, d)?;
    let hd = h.get(d);
    if macaulay_bound(&hd, d) != h.get(d + 1) {
        return Ok(None);
    }
    // macaulay_bound(., d-1) is strictly increasing, so the only candidate
    // is the least c reaching h_d.
    let c = min_prev(&hd, d);
    if c > h.get(d - 1) || macaulay_bound(&c, d - 1) != hd {
        return Ok(None);
    }
    Ok(Some(h.get(d - 1) - c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vectors::max_socle_for_h;

    fn h(v: &[u64]) -> HVector {
        HVector::from_u64s(v).unwrap()
    }

    #[test]
    fn betti_of_all_quadrics_in_two_variables() {
        let ideal = lex_ideal_for_h(&h(&[1, 2]), 2).unwrap();
        let table = ek_betti(&ideal).unwrap();
        assert_eq!(table.get(1, 2), 3);
        assert_eq!(table.get(2, 3), 2);
        assert_eq!(table.entries().count(), 2);
        let check = betti_identity(&h(&[1, 2]), &table).unwrap();
        assert!(check.holds());
    }

    #[test]
    fn betti_of_worked_example() {
        let hv = h(&[1, 3, 6, 10, 12, 14]);
        let table = ek_betti(&lex_ideal_for_h(&hv, 6).unwrap()).unwrap();
        assert_eq!(table.get(3, 6), 1);
        assert_eq!(table.get(2, 6), 1);
        assert!(betti_identity(&hv, &table).unwrap().holds());
        let s = max_socle_for_h(&hv).unwrap();
        for j in 0..12 {
            let socle_degree = j as isize - 3;
            let expected = if socle_degree >= 0 {
                s.get(socle_degree as usize).to_u64().unwrap()
            } else {
                0
            };
            assert_eq!(table.get(3, j), expected, "j={j}");
        }
        assert_eq!(possible_cancellations(&hv).unwrap().shifts, vec![6]);
    }

    #[test]
    fn principal_power_has_a_single_generator_row() {
        // (x^d) + (y): in one variable after dropping y; use r = 1.
        let ideal = lex_ideal_for_h(&h(&[1, 1, 1, 1]), 4).unwrap();
        let table = ek_betti(&ideal).unwrap();
        assert_eq!(table.get(1, 4), 1);
        assert_eq!(table.entries().count(), 1);
    }

    #[test]
    fn identity_reports_residual() {
        let table = BettiTable::new(2, [((1, 2), 3), ((2, 3), 1)]).unwrap();
        let check = betti_identity(&h(&[1, 2]), &table).unwrap();
        assert!(!check.holds());
        assert_eq!(
            check.residual,
            vec![
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::one()
            ]
        );
        assert_eq!(betti_identity(&h(&[1]), &table), Err(Error::TrivialAlgebra));
    }

    #[test]
    fn non_lex_ideals_are_rejected() {
        use crate::monomial::Monomial;
        let j = MonomialIdeal::from_generators(
            2,
            3,
            [
                Monomial::parse("x^2", 2).unwrap(),
                Monomial::parse("y^2", 2).unwrap(),
            ]
            .into_iter()
            .chain(crate::monomial::monomials_of_degree(2, 3).unwrap()),
        )
        .unwrap();
        assert_eq!(ek_betti(&j), Err(Error::NotLexSegment(2)));
    }

    #[test]
    fn forced_entries() {
        let hv = h(&[1, 4, 8, 9, 12, 13]);
        assert_eq!(
            forced_socle_entry(&hv, 3).unwrap(),
            Some(BigUint::from(2u32))
        );
        assert_eq!(forced_socle_entry_maximal_growth(&hv, 3).unwrap(), None);
        let hv = h(&[1, 3, 6, 10, 12, 14]);
        assert_eq!(forced_socle_entry(&hv, 4).unwrap(), None);
        assert!(forced_socle_entry(&hv, 1).is_err());
        assert!(forced_socle_entry(&hv, 6).is_err());
        assert_eq!(forced_socle_entry(&hv, 5).unwrap(), None);
        // h_2 = 3 = min_prev(4, 3)? 4 = C(4,3) -> C(3,2) = 3, and 4 grows to 5 = C(5,4)
        let hv = h(&[1, 3, 3, 4, 5]);
        assert_eq!(forced_socle_entry(&hv, 3).unwrap(), Some(BigUint::zero()));
    }

    #[test]
    fn uniqueness_condition() {
        assert!(!no_cancellation_uniqueness(&h(&[1, 4, 7, 9, 11, 10, 7, 5])));
        assert!(cancellation_indices(&h(&[1, 4, 7, 9, 11, 10, 7, 5])).contains(&3));
        assert!(no_cancellation_uniqueness(&h(&[1, 2, 1, 1])));
        assert!(possible_cancellations(&h(&[1, 2, 1, 1]))
            .unwrap()
            .is_empty());
        assert_eq!(
            possible_cancellations(&h(&[1, 2, 1])).unwrap().shifts,
            vec![3]
        );
    }

    #[test]
    fn betti_json_round_trip() {
        let table = ek_betti(&lex_ideal_for_h(&h(&[1, 2]), 2).unwrap()).unwrap();
        let text = serde_json::to_string(&table).unwrap();
        assert_eq!(text, r#"{"r":2,"beta":[[1,2,3],[2,3,2]]}"#);
        let back: BettiTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back, table);
        assert_eq!(table.to_string(), "i\\j 2 3\n  1 3  \n  2   2");
    }
}
