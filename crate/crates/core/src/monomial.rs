//! Monomials in degree-lexicographic order, monomial ideals stored degree by
//! degree, lex-segment ideals, and divisor closures (monomial inverse
//! systems).
//!
//! `Ord` on [`Monomial`] is the degree-lexicographic order with
//! `x1 > x2 > ... > xr`: a larger monomial comes *earlier* in the usual
//! listing `x^d, x^{d-1}y, ...`. Ordered sets of monomials therefore iterate
//! from the last monomial of each degree to the first.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::macaulay::monomial_count;
use crate::vectors::{HVector, SocleVector};

/// Refuse to list more monomials than this in a single degree.
pub const MAX_MONOMIALS_PER_DEGREE: usize = 2_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    /// # Panics
    /// If `exps` is empty.
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "a monomial needs at least one variable");
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(r: usize) -> Self {
        Monomial::new(vec![0; r])
    }

    /// The variable `x_j`, 0-based.
    pub fn variable(r: usize, j: usize) -> Self {
        let mut exps = vec![0; r];
        exps[j] = 1;
        Monomial { exps, degree: 1 }
    }

    /// `x_j^d`, 0-based.
    pub fn power(r: usize, j: usize, d: u32) -> Self {
        let mut exps = vec![0; r];
        exps[j] = d;
        Monomial { exps, degree: d }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul_var(&self, j: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[j] += 1;
        Monomial {
            exps,
            degree: self.degree + 1,
        }
    }

    pub fn div_var(&self, j: usize) -> Option<Monomial> {
        if self.exps[j] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        Some(Monomial {
            exps,
            degree: self.degree - 1,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_divisible_by_var(&self, j: usize) -> bool {
        self.exps[j] > 0
    }

    /// Largest (1-based) index of a variable dividing the monomial.
    pub fn max_var(&self) -> Result<usize> {
        self.exps
            .iter()
            .rposition(|&e| e > 0)
            .map(|j| j + 1)
            .ok_or(Error::ConstantMonomial)
    }

    /// The monomial immediately after this one in the listing of its
    /// degree (the next smaller one).
    pub fn lex_successor(&self) -> Option<Monomial> {
        let r = self.exps.len();
        if r < 2 {
            return None;
        }
        let i = self.exps[..r - 1].iter().rposition(|&e| e > 0)?;
        let tail: u32 = self.exps[i + 1..].iter().sum();
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        exps[i + 1] = tail + 1;
        for e in &mut exps[i + 2..] {
            *e = 0;
        }
        Some(Monomial {
            exps,
            degree: self.degree,
        })
    }

    /// The monomial immediately before this one in the listing of its
    /// degree (the next larger one).
    pub fn lex_predecessor(&self) -> Option<Monomial> {
        let r = self.exps.len();
        let k = self.exps.iter().rposition(|&e| e > 0)?;
        if k == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        let moved = exps[k] - 1;
        exps[k] = 0;
        exps[k - 1] += 1;
        exps[r - 1] += moved;
        Some(Monomial {
            exps,
            degree: self.degree,
        })
    }

    /// Parses `x1^2*x3`, `x^2 y z^3` (for at most three variables) or `1`.
    pub fn parse(text: &str, r: usize) -> Result<Monomial> {
        let bad = |why: &str| Error::Parse(format!("monomial {text:?}: {why}"));
        let mut exps = vec![0u32; r];
        let trimmed = text.trim();
        if trimmed == "1" {
            return Ok(Monomial::new(exps));
        }
        for factor in trimmed.split(|c: char| c == '*' || c.is_whitespace()) {
            if factor.is_empty() {
                continue;
            }
            let (var, exp) = match factor.split_once('^') {
                Some((v, e)) => (
                    v,
                    e.parse::<u32>()
                        .map_err(|_| bad("exponent is not a number"))?,
                ),
                None => (factor, 1),
            };
            let j = variable_index(var, r).ok_or_else(|| bad("unknown variable"))?;
            exps[j] += exp;
        }
        Ok(Monomial::new(exps))
    }
}

/// Index of `x<k>` / `y<k>` (1-based) or of the aliases `x, y, z`.
pub(crate) fn variable_index(name: &str, r: usize) -> Option<usize> {
    let j = match name {
        "x" if r <= 3 => 0,
        "y" if r <= 3 => 1,
        "z" if r <= 3 => 2,
        _ => {
            let digits = name.strip_prefix('x').or_else(|| name.strip_prefix('y'))?;
            digits.parse::<usize>().ok()?.checked_sub(1)?
        }
    };
    (j < r).then_some(j)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let compact = self.exps.len() <= 3;
        let mut first = true;
        for (j, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if compact { " " } else { "*" })?;
            }
            first = false;
            if compact {
                write!(f, "{}", ["x", "y", "z"][j])?;
            } else {
                write!(f, "x{}", j + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Degree-lexicographic comparison, rejecting monomials from different rings.
pub fn deglex_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.num_vars() != b.num_vars() {
        return Err(Error::VariableMismatch {
            left: a.num_vars(),
            right: b.num_vars(),
        });
    }
    Ok(a.cmp(b))
}

/// Index of the largest variable dividing `t`, 1-based.
pub fn m_of(t: &Monomial) -> Result<usize> {
    t.max_var()
}

/// `dim R_d` for `R` in `r` variables, guarded against huge listings.
pub fn degree_dimension(r: usize, d: usize) -> Result<usize> {
    let n = monomial_count(&BigUint::from(r), d);
    n.to_usize()
        .filter(|&n| n <= MAX_MONOMIALS_PER_DEGREE)
        .ok_or_else(|| Error::TooLarge(format!("{n} monomials of degree {d} in {r} variables")))
}

/// All monomials of degree `d` in `r` variables, first (largest) to last.
pub fn monomials_of_degree(r: usize, d: usize) -> Result<Vec<Monomial>> {
    let count = degree_dimension(r, d)?;
    let mut out = Vec::with_capacity(count);
    let mut exps = vec![0u32; r];
    fill(&mut exps, 0, d as u32, &mut out);
    Ok(out)
}

fn fill(exps: &mut [u32], pos: usize, rest: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = rest;
        out.push(Monomial::new(exps.to_vec()));
        return;
    }
    for e in (0..=rest).rev() {
        exps[pos] = e;
        fill(exps, pos + 1, rest - e, out);
    }
    exps[pos] = 0;
}

/// `R_1 · S` for a set `S` of monomials of one degree.
pub fn multiply_by_variables<'a>(
    r: usize,
    set: impl IntoIterator<Item = &'a Monomial>,
) -> BTreeSet<Monomial> {
    set.into_iter()
        .flat_map(|m| (0..r).map(move |j| m.mul_var(j)))
        .collect()
}

/// Monomial ideal of `R = k[x1..xr]`, stored as its degree pieces
/// `I_0, ..., I_bound`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    r: usize,
    pieces: Vec<BTreeSet<Monomial>>,
}

impl MonomialIdeal {
    /// Validates monomial shapes, properness and `R_1 I_d ⊆ I_{d+1}`.
    pub fn from_pieces(r: usize, pieces: Vec<BTreeSet<Monomial>>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidIdeal("no variables".into()));
        }
        if pieces.is_empty() {
            return Err(Error::InvalidIdeal("no degree pieces".into()));
        }
        for (d, piece) in pieces.iter().enumerate() {
            if let Some(m) = piece.iter().find(|m| m.num_vars() != r || m.degree() != d) {
                return Err(Error::InvalidIdeal(format!(
                    "{m} does not belong in degree {d} of a ring in {r} variables"
                )));
            }
        }
        if !pieces[0].is_empty() {
            return Err(Error::InvalidIdeal("contains 1".into()));
        }
        for d in 0..pieces.len() - 1 {
            for m in &pieces[d] {
                for j in 0..r {
                    let up = m.mul_var(j);
                    if !pieces[d + 1].contains(&up) {
                        return Err(Error::InvalidIdeal(format!(
                            "{m} lies in the ideal but {up} does not"
                        )));
                    }
                }
            }
        }
        Ok(MonomialIdeal { r, pieces })
    }

    /// The ideal generated by `gens`, truncated at degree `bound`.
    pub fn from_generators(
        r: usize,
        bound: usize,
        gens: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self> {
        let mut pieces = vec![BTreeSet::new(); bound + 1];
        for g in gens {
            if g.num_vars() != r {
                return Err(Error::VariableMismatch {
                    left: r,
                    right: g.num_vars(),
                });
            }
            if g.degree() <= bound {
                pieces[g.degree()].insert(g);
            }
        }
        for d in 1..=bound {
            let up = multiply_by_variables(r, &pieces[d - 1]);
            pieces[d].extend(up);
        }
        MonomialIdeal::from_pieces(r, pieces)
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    /// Largest stored degree.
    pub fn bound(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn piece(&self, d: usize) -> Result<&BTreeSet<Monomial>> {
        self.pieces.get(d).ok_or(Error::BoundExceeded {
            requested: d,
            bound: self.bound(),
        })
    }

    pub fn pieces(&self) -> &[BTreeSet<Monomial>] {
        &self.pieces
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.pieces.get(m.degree()).is_some_and(|p| p.contains(m))
    }

    /// Minimal generators of degree `d`, `I_d \ R_1 I_{d-1}`, largest first.
    pub fn generators(&self, d: usize) -> Result<Vec<Monomial>> {
        let piece = self.piece(d)?;
        if d == 0 {
            return Ok(piece.iter().rev().cloned().collect());
        }
        let below = &self.pieces[d - 1];
        Ok(piece
            .iter()
            .rev()
            .filter(|m| !(0..self.r).any(|j| m.div_var(j).is_some_and(|q| below.contains(&q))))
            .cloned()
            .collect())
    }

    /// All minimal generators up to the stored bound, by degree.
    pub fn all_generators(&self) -> BTreeMap<usize, Vec<Monomial>> {
        (0..=self.bound())
            .filter_map(|d| {
                let g = self.generators(d).expect("degree within bound");
                (!g.is_empty()).then_some((d, g))
            })
            .collect()
    }

    /// Whether `I_d = R_d`.
    pub fn is_full(&self, d: usize) -> Result<bool> {
        Ok(self.piece(d)?.len() == degree_dimension(self.r, d)?)
    }

    /// First stored degree where the ideal contains everything.
    pub fn artinian_degree(&self) -> Option<usize> {
        (0..=self.bound()).find(|&d| self.is_full(d).unwrap_or(false))
    }

    /// Degree in which `I_d` fails to be an initial segment, if any.
    pub fn lex_violation(&self) -> Option<usize> {
        self.pieces.iter().enumerate().find_map(|(d, piece)| {
            let smallest = piece.iter().next()?;
            let mut expected = smallest.clone();
            let mut count = 1;
            while let Some(prev) = expected.lex_predecessor() {
                if !piece.contains(&prev) {
                    return Some(d);
                }
                expected = prev;
                count += 1;
            }
            (count != piece.len()).then_some(d)
        })
    }

    pub fn is_lex_segment(&self) -> bool {
        self.lex_violation().is_none()
    }

    /// `h_d = dim R_d - |I_d|` for `d <= top`, trailing zeros dropped.
    pub fn hilbert_function(&self, top: usize) -> Result<HVector> {
        if top > self.bound() {
            return Err(Error::BoundExceeded {
                requested: top,
                bound: self.bound(),
            });
        }
        let mut h = Vec::with_capacity(top + 1);
        for d in 0..=top {
            h.push(BigUint::from(
                degree_dimension(self.r, d)? - self.pieces[d].len(),
            ));
        }
        Ok(HVector::new(h)?)
    }

    /// Degree-`d` monomials outside `I` whose products with every variable
    /// lie in `I`.
    pub fn socle_monomials(&self, d: usize) -> Result<Vec<Monomial>> {
        let above = self.piece(d + 1)?;
        let here = &self.pieces[d];
        Ok(monomials_of_degree(self.r, d)?
            .into_iter()
            .filter(|m| !here.contains(m) && (0..self.r).all(|j| above.contains(&m.mul_var(j))))
            .collect())
    }

    /// Socle-vector of `R/I`, read up to degree `top`; needs
    /// `I_{top+1} = R_{top+1}` so the quotient is artinian.
    pub fn socle_vector(&self, top: usize) -> Result<SocleVector> {
        if top + 1 > self.bound() {
            return Err(Error::BoundExceeded {
                requested: top + 1,
                bound: self.bound(),
            });
        }
        if !self.is_full(top + 1)? {
            return Err(Error::NotArtinian(top + 1));
        }
        let mut s = Vec::with_capacity(top + 1);
        for d in 0..=top {
            s.push(BigUint::from(self.socle_monomials(d)?.len()));
        }
        while s.len() > 1 && s.last().is_some_and(|x| x == &BigUint::default()) {
            s.pop();
        }
        if s.len() < 2 {
            return Err(Error::TrivialAlgebra);
        }
        Ok(SocleVector::new(s)?)
    }

    /// Hilbert function and socle-vector read up to the artinian degree.
    pub fn invariants(&self) -> Result<(HVector, SocleVector)> {
        let full = self
            .artinian_degree()
            .ok_or(Error::NotArtinian(self.bound()))?;
        if full == 0 {
            return Err(Error::TrivialAlgebra);
        }
        Ok((
            self.hilbert_function(full - 1)?,
            self.socle_vector(full - 1)?,
        ))
    }
}

/// The lex-segment ideal of `h`: in each degree `d <= bound` the first
/// `dim R_d - h_d` monomials, in `r = h_1` variables.
pub fn lex_ideal_for_h(h: &HVector, bound: usize) -> Result<MonomialIdeal> {
    let e = h.top_degree();
    if e == 0 {
        return Err(Error::TrivialAlgebra);
    }
    if bound < e + 1 {
        return Err(Error::DegreeOutOfRange {
            degree: bound,
            min: e + 1,
            max: usize::MAX,
        });
    }
    let r = h.small_codimension()?;
    let hs = h.small_entries()?;
    let mut pieces = Vec::with_capacity(bound + 1);
    for d in 0..=bound {
        let keep = hs.get(d).copied().unwrap_or(0);
        if d > e + 1 {
            // everything is a multiple of degree e+1 from here on
            pieces.push(monomials_of_degree(r, d)?.into_iter().collect());
            continue;
        }
        let all = monomials_of_degree(r, d)?;
        let take = all
            .len()
            .checked_sub(keep)
            .ok_or_else(|| Error::Invariant(format!("h_{d} exceeds the number of monomials")))?;
        pieces.push(all.into_iter().take(take).collect());
    }
    MonomialIdeal::from_pieces(r, pieces)
}

/// Degree pieces of the `R`-module generated by `generators` under
/// differentiation: every monomial dividing a generator, grouped by degree.
///
/// For monomials, derivatives are (up to scalars) divisors, so the size of
/// each piece is the Hilbert function of the annihilator quotient.
pub fn divisor_closure(
    r: usize,
    generators: &BTreeMap<usize, BTreeSet<Monomial>>,
) -> BTreeMap<usize, BTreeSet<Monomial>> {
    let Some(&top) = generators.keys().next_back() else {
        return BTreeMap::new();
    };
    let mut out: BTreeMap<usize, BTreeSet<Monomial>> = BTreeMap::new();
    let mut current: BTreeSet<Monomial> = BTreeSet::new();
    for d in (0..=top).rev() {
        let mut next: BTreeSet<Monomial> = current
            .iter()
            .flat_map(|m| (0..r).filter_map(move |j| m.div_var(j)))
            .collect();
        if let Some(g) = generators.get(&d) {
            next.extend(g.iter().cloned());
        }
        out.insert(d, next.clone());
        current = next;
    }
    out
}

/// Piece sizes of a divisor closure, as an h-vector.
pub fn closure_h_vector(closure: &BTreeMap<usize, BTreeSet<Monomial>>) -> Result<HVector> {
    let top = closure.keys().next_back().copied().unwrap_or(0);
    let h = (0..=top)
        .map(|d| BigUint::from(closure.get(&d).map_or(0, BTreeSet::len)))
        .collect();
    Ok(HVector::new(h)?)
}

/// Minimal generators of a divisor-closed monomial module: elements that
/// are not a first derivative of anything one degree up.
pub fn closure_minimal_generators(
    r: usize,
    closure: &BTreeMap<usize, BTreeSet<Monomial>>,
) -> BTreeMap<usize, BTreeSet<Monomial>> {
    let empty = BTreeSet::new();
    closure
        .iter()
        .map(|(&d, piece)| {
            let above = closure.get(&(d + 1)).unwrap_or(&empty);
            let gens = piece
                .iter()
                .filter(|m| !(0..r).any(|j| above.contains(&m.mul_var(j))))
                .cloned()
                .collect();
            (d, gens)
        })
        .collect()
}

/// Socle-vector of the algebra whose inverse system is `closure`.
pub fn closure_socle_vector(
    r: usize,
    closure: &BTreeMap<usize, BTreeSet<Monomial>>,
) -> Result<SocleVector> {
    let gens = closure_minimal_generators(r, closure);
    let top = closure.keys().next_back().copied().unwrap_or(0);
    let mut s: Vec<BigUint> = (0..=top)
        .map(|d| BigUint::from(gens.get(&d).map_or(0, BTreeSet::len)))
        .collect();
    s[0] = BigUint::default();
    Ok(SocleVector::new(s)?)
}

/// Annihilator of a monomial inverse system: `J_d = R_d \ M_d`, stored up
/// to `bound`.
pub fn annihilator_of_closure(
    r: usize,
    closure: &BTreeMap<usize, BTreeSet<Monomial>>,
    bound: usize,
) -> Result<MonomialIdeal> {
    let empty = BTreeSet::new();
    let mut pieces = Vec::with_capacity(bound + 1);
    for d in 0..=bound {
        let keep = closure.get(&d).unwrap_or(&empty);
        pieces.push(
            monomials_of_degree(r, d)?
                .into_iter()
                .filter(|m| !keep.contains(m))
                .collect(),
        );
    }
    MonomialIdeal::from_pieces(r, pieces)
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    r: usize,
    bound: usize,
    pieces: BTreeMap<String, Vec<String>>,
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pieces = self
            .pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_empty())
            .map(|(d, p)| {
                (
                    d.to_string(),
                    p.iter().rev().map(ToString::to_string).collect(),
                )
            })
            .collect();
        IdealJson {
            r: self.r,
            bound: self.bound(),
            pieces,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = IdealJson::deserialize(d)?;
        let mut pieces = vec![BTreeSet::new(); raw.bound + 1];
        for (deg, monos) in &raw.pieces {
            let deg: usize = deg
                .parse()
                .map_err(|_| D::Error::custom(format!("degree key {deg:?}")))?;
            let slot = pieces
                .get_mut(deg)
                .ok_or_else(|| D::Error::custom(format!("degree {deg} beyond bound")))?;
            for m in monos {
                slot.insert(Monomial::parse(m, raw.r).map_err(D::Error::custom)?);
            }
        }
        MonomialIdeal::from_pieces(raw.r, pieces).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macaulay::min_prev;

    fn mono(text: &str, r: usize) -> Monomial {
        Monomial::parse(text, r).unwrap()
    }

    fn h(v: &[u64]) -> HVector {
        HVector::from_u64s(v).unwrap()
    }

    fn set(items: &[&str], r: usize) -> BTreeSet<Monomial> {
        items.iter().map(|t| mono(t, r)).collect()
    }

    #[test]
    fn ordering() {
        assert!(mono("x^3 y", 3) > mono("x^3 z", 3));
        assert!(mono("x^2", 3) > mono("x y", 3));
        assert!(mono("z^3", 3) > mono("x^2", 3));
        let listing: Vec<String> = monomials_of_degree(3, 4)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(&listing[..4], ["x^4", "x^3 y", "x^3 z", "x^2 y^2"]);
        assert_eq!(listing.len(), 15);
        assert!(matches!(
            deglex_cmp(&Monomial::one(2), &Monomial::one(3)),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn listing_is_strictly_decreasing_and_linked() {
        for r in 1..5 {
            for d in 0..7 {
                let all = monomials_of_degree(r, d).unwrap();
                for w in all.windows(2) {
                    assert!(w[0] > w[1]);
                    assert_eq!(w[0].lex_successor().as_ref(), Some(&w[1]));
                    assert_eq!(w[1].lex_predecessor().as_ref(), Some(&w[0]));
                }
                assert_eq!(all[0].lex_predecessor(), None);
                assert_eq!(all.last().unwrap().lex_successor(), None);
            }
        }
    }

    #[test]
    fn largest_variable() {
        assert_eq!(m_of(&mono("x^2 y^3", 3)).unwrap(), 2);
        assert_eq!(m_of(&mono("z^6", 3)).unwrap(), 3);
        assert_eq!(m_of(&mono("x^5 z", 3)).unwrap(), 3);
        assert_eq!(m_of(&Monomial::one(3)), Err(Error::ConstantMonomial));
    }

    #[test]
    fn text_formats() {
        assert_eq!(mono("x1^2*x3", 4).exponents(), &[2, 0, 1, 0]);
        assert_eq!(mono("x1^2*x3", 4).to_string(), "x1^2*x3");
        assert_eq!(mono("x^3 y", 3).to_string(), "x^3 y");
        assert_eq!(mono("x2^2", 3).to_string(), "y^2");
        assert_eq!(mono("1", 2).to_string(), "1");
        assert!(Monomial::parse("w^2", 3).is_err());
        assert!(Monomial::parse("x5", 3).is_err());
    }

    #[test]
    fn lex_ideal_of_worked_example() {
        let ideal = lex_ideal_for_h(&h(&[1, 3, 6, 10, 12, 14]), 6).unwrap();
        assert!(ideal.is_lex_segment());
        for d in 0..4 {
            assert!(ideal.piece(d).unwrap().is_empty());
        }
        assert_eq!(ideal.piece(4).unwrap(), &set(&["x^4", "x^3 y", "x^3 z"], 3));
        let fifth: Vec<String> = ideal
            .piece(5)
            .unwrap()
            .iter()
            .rev()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            fifth,
            ["x^5", "x^4 y", "x^4 z", "x^3 y^2", "x^3 y z", "x^3 z^2", "x^2 y^3"]
        );
        assert_eq!(ideal.generators(5).unwrap(), vec![mono("x^2 y^3", 3)]);
        assert!(ideal.is_full(6).unwrap());
        assert_eq!(ideal.generators(6).unwrap().len(), 16);
        assert_eq!(ideal.generators(6).unwrap()[0], mono("x^2 y^2 z^2", 3));
        assert_eq!(
            ideal.hilbert_function(6).unwrap(),
            h(&[1, 3, 6, 10, 12, 14])
        );
        let s = ideal.socle_vector(5).unwrap();
        assert_eq!(s, SocleVector::from_u64s(&[0, 0, 0, 1, 0, 14]).unwrap());
        assert_eq!(ideal.socle_monomials(3).unwrap(), vec![mono("x^3", 3)]);
    }

    #[test]
    fn worked_example_alternative_ideal() {
        let j = MonomialIdeal::from_generators(
            3,
            7,
            [mono("x^4", 3), mono("x^3 y", 3), mono("x^2 y^2", 3)]
                .into_iter()
                .chain(monomials_of_degree(3, 6).unwrap()),
        )
        .unwrap();
        assert_eq!(j.hilbert_function(6).unwrap(), h(&[1, 3, 6, 10, 12, 14]));
        assert_eq!(
            j.socle_vector(5).unwrap(),
            SocleVector::from_u64s(&[0, 0, 0, 0, 0, 14]).unwrap()
        );
        assert!(!j.is_lex_segment());
    }

    #[test]
    fn small_lex_ideals() {
        let ideal = lex_ideal_for_h(&h(&[1, 4]), 2).unwrap();
        assert!(ideal.piece(1).unwrap().is_empty());
        assert!(ideal.is_full(2).unwrap());
        assert_eq!(
            ideal.socle_vector(1).unwrap(),
            SocleVector::from_u64s(&[0, 4]).unwrap()
        );
        let ideal = lex_ideal_for_h(&h(&[1, 2, 1, 1]), 4).unwrap();
        assert_eq!(ideal.piece(2).unwrap(), &set(&["x^2", "x y"], 2));
        assert_eq!(ideal.piece(3).unwrap(), &set(&["x^3", "x^2 y", "x y^2"], 2));
        assert!(matches!(
            lex_ideal_for_h(&h(&[1, 2, 1]), 2),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_ideal_hilbert_function() {
        for r in 1..6 {
            let zero = MonomialIdeal::from_pieces(r, vec![BTreeSet::new(); 3]).unwrap();
            let expected = h(&[1, r as u64, (r * (r + 1) / 2) as u64]);
            assert_eq!(zero.hilbert_function(2).unwrap(), expected);
            assert!(matches!(zero.socle_vector(1), Err(Error::NotArtinian(2))));
        }
    }

    #[test]
    fn ideal_property_is_enforced() {
        let pieces = vec![
            BTreeSet::new(),
            BTreeSet::new(),
            set(&["x^2"], 2),
            set(&["x^3"], 2),
        ];
        assert!(matches!(
            MonomialIdeal::from_pieces(2, pieces),
            Err(Error::InvalidIdeal(_))
        ));
    }

    #[test]
    fn divisor_closures() {
        let gens = BTreeMap::from([(2, set(&["x y"], 2))]);
        let closure = divisor_closure(2, &gens);
        assert_eq!(closure[&0], set(&["1"], 2));
        assert_eq!(closure[&1], set(&["x", "y"], 2));
        assert_eq!(closure_h_vector(&closure).unwrap(), h(&[1, 2, 1]));
        for e in 1..6u32 {
            let gens = BTreeMap::from([(e as usize, BTreeSet::from([Monomial::power(3, 0, e)]))]);
            let closure = divisor_closure(3, &gens);
            assert_eq!(
                closure_h_vector(&closure).unwrap(),
                HVector::from_u64s(&vec![1; e as usize + 1]).unwrap()
            );
        }
        let gens = BTreeMap::from([(1, set(&["x"], 2)), (2, set(&["y^2"], 2))]);
        let closure = divisor_closure(2, &gens);
        assert_eq!(
            closure_socle_vector(2, &closure).unwrap(),
            SocleVector::from_u64s(&[0, 1, 1]).unwrap()
        );
    }

    #[test]
    fn derivatives_of_last_monomials_are_last_monomials() {
        for r in 1..=4 {
            for d in 2..=8 {
                let top = monomials_of_degree(r, d).unwrap();
                let below = monomials_of_degree(r, d - 1).unwrap();
                for c in 1..=top.len() {
                    let tail = &top[top.len() - c..];
                    let divisors: BTreeSet<Monomial> = tail
                        .iter()
                        .flat_map(|m| (0..r).filter_map(move |j| m.div_var(j)))
                        .collect();
                    let want = min_prev(&BigUint::from(c), d).to_usize().unwrap();
                    let expected: BTreeSet<Monomial> =
                        below[below.len() - want..].iter().cloned().collect();
                    assert_eq!(divisors, expected, "r={r} d={d} c={c}");
                }
            }
        }
    }

    #[test]
    fn no_two_consecutive_monomials_avoid_the_last_variable() {
        for d in 2..=10 {
            let all = monomials_of_degree(3, d).unwrap();
            for k in 1..all.len() - 1 {
                assert!(
                    all[k].is_divisible_by_var(2) || all[k + 1].is_divisible_by_var(2),
                    "d={d}: {} {}",
                    all[k],
                    all[k + 1]
                );
            }
        }
    }

    #[test]
    fn ideal_json_round_trip() {
        let ideal = lex_ideal_for_h(&h(&[1, 3, 6, 10, 12, 14]), 6).unwrap();
        let text = serde_json::to_string(&ideal).unwrap();
        assert!(text.contains(r#""4":["x^4","x^3 y","x^3 z"]"#));
        let back: MonomialIdeal = serde_json::from_str(&text).unwrap();
        assert_eq!(back, ideal);
    }
}
