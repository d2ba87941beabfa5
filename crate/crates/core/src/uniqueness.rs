//! Does an h-vector admit more than one socle-vector?
//!
//! In at most three variables the answer is decided by the possible
//! cancellations of the lex-segment resolution, and every possible
//! cancellation is realised by an explicit monomial ideal. In general three
//! sufficient conditions for non-uniqueness are checked, each with a
//! witnessing inverse system.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inverse_systems::{
    module_h_vector, module_invariants, power_sum, Form, InverseSystemModule,
};
use crate::macaulay::{min_prev, monomial_count};
use crate::monomial::{
    closure_h_vector, closure_minimal_generators, closure_socle_vector, divisor_closure,
    lex_ideal_for_h, monomials_of_degree, multiply_by_variables, Monomial, MonomialIdeal,
};
use crate::oracle::{socle_catalog, Budget};
use crate::resolution::{cancellation_indices, possible_cancellations};
use crate::vectors::{generic_index, h_array, max_socle_for_h, s_array, HVector, SocleVector};

/// Sampling of "generic" rational coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericityConfig {
    pub coefficient_bound: u32,
    /// Extra seeds tried after the first one fails.
    pub retries: u32,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        GenericityConfig {
            coefficient_bound: 100,
            retries: 5,
        }
    }
}

impl GenericityConfig {
    fn seeds(&self, seed: u64) -> impl Iterator<Item = u64> {
        (0..=self.retries as u64).map(move |k| seed.wrapping_add(k))
    }
}

/// `h_j(m, d) = min{m, dim R_j, dim R_{d-j}}`: the h-vector of the
/// annihilator of a sum of `m` general `d`-th powers in `r` variables.
pub fn compressed_gorenstein_h(m: &BigUint, d: usize, r: usize) -> Result<HVector> {
    if m.is_zero() || d == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!(
            "need m, d, r >= 1 (got m={m}, d={d}, r={r})"
        )));
    }
    let rr = BigUint::from(r);
    let h = (0..=d)
        .map(|j| {
            m.clone()
                .min(monomial_count(&rr, j))
                .min(monomial_count(&rr, d - j))
        })
        .collect();
    Ok(HVector::new(h)?)
}

/// A power sum whose principal inverse system has the compressed h-vector,
/// and the seed that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericPowerSum {
    pub form: Form,
    pub h: HVector,
    pub seed: u64,
}

/// Draws power sums until one has the expected h-vector.
pub fn generic_power_sum(
    m: usize,
    d: usize,
    r: usize,
    seed: u64,
    config: &GenericityConfig,
) -> Result<GenericPowerSum> {
    let expected = compressed_gorenstein_h(&BigUint::from(m), d, r)?;
    let mut tried = Vec::new();
    for s in config.seeds(seed) {
        tried.push(s);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let Some(form) = power_sum(m, d, r, &mut rng, config.coefficient_bound)? else {
            continue;
        };
        let h = module_h_vector(&InverseSystemModule::from_forms(r, [form.clone()])?)?;
        if h == expected {
            return Ok(GenericPowerSum { form, h, seed: s });
        }
    }
    Err(Error::GenericityExhausted { seeds: tried })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessPayload {
    MonomialIdeal(MonomialIdeal),
    InverseSystem(InverseSystemModule),
}

/// An algebra with h-vector `h` whose socle-vector `s` is not the maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub payload: WitnessPayload,
    pub h: HVector,
    pub s: SocleVector,
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self.payload {
            WitnessPayload::MonomialIdeal(_) => "monomial-ideal",
            WitnessPayload::InverseSystem(_) => "inverse-system",
        }
    }

    pub fn payload_is_monomial(&self) -> bool {
        match &self.payload {
            WitnessPayload::MonomialIdeal(_) => true,
            WitnessPayload::InverseSystem(m) => m.is_monomial(),
        }
    }

    fn from_payload(payload: WitnessPayload) -> Result<Witness> {
        let (h, s) = payload_invariants(&payload)?;
        Ok(Witness { payload, h, s })
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    kind: String,
    #[serde(with = "h_array")]
    h: HVector,
    #[serde(with = "s_array")]
    s: SocleVector,
    payload: serde_json::Value,
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let payload = match &self.payload {
            WitnessPayload::MonomialIdeal(i) => serde_json::to_value(i),
            WitnessPayload::InverseSystem(m) => serde_json::to_value(m),
        }
        .map_err(S::Error::custom)?;
        WitnessJson {
            kind: self.kind().into(),
            h: self.h.clone(),
            s: self.s.clone(),
            payload,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = WitnessJson::deserialize(d)?;
        let payload = match raw.kind.as_str() {
            "monomial-ideal" => {
                serde_json::from_value(raw.payload).map(WitnessPayload::MonomialIdeal)
            }
            "inverse-system" => {
                serde_json::from_value(raw.payload).map(WitnessPayload::InverseSystem)
            }
            other => return Err(D::Error::custom(format!("unknown witness kind {other:?}"))),
        }
        .map_err(D::Error::custom)?;
        Ok(Witness {
            payload,
            h: raw.h,
            s: raw.s,
        })
    }
}

fn payload_invariants(payload: &WitnessPayload) -> Result<(HVector, SocleVector)> {
    match payload {
        WitnessPayload::MonomialIdeal(ideal) => ideal.invariants(),
        WitnessPayload::InverseSystem(m) if m.is_monomial() => {
            let mut gens: BTreeMap<usize, BTreeSet<Monomial>> = BTreeMap::new();
            for (d, forms) in m.generators() {
                for f in forms {
                    let (mono, _) = f.terms().next().expect("forms are non-zero");
                    gens.entry(*d).or_default().insert(mono.clone());
                }
            }
            let closure = divisor_closure(m.num_vars(), &gens);
            Ok((
                closure_h_vector(&closure)?,
                closure_socle_vector(m.num_vars(), &closure)?,
            ))
        }
        WitnessPayload::InverseSystem(m) => module_invariants(m),
    }
}

/// Recomputes the invariants of the payload and checks that they match the
/// claim and that the claimed socle-vector lies strictly below the maximum.
pub fn verify_witness(w: &Witness) -> Result<()> {
    let (h, s) = payload_invariants(&w.payload)?;
    if h != w.h {
        return Err(Error::WitnessRejected(format!(
            "payload has h-vector {h}, claimed {}",
            w.h
        )));
    }
    if s != w.s {
        return Err(Error::WitnessRejected(format!(
            "payload has socle-vector {s}, claimed {}",
            w.s
        )));
    }
    let max = max_socle_for_h(&h)?;
    if !s.le_entrywise(&max) || s == max {
        return Err(Error::WitnessRejected(format!(
            "socle-vector {s} is not strictly below the maximum {max}"
        )));
    }
    Ok(())
}

fn invariant(why: impl Into<String>) -> Error {
    Error::Invariant(why.into())
}

/// Monomial ideal realising the cancellation of the shift `d` in the
/// lex-segment resolution of `h`: same Hilbert function, strictly smaller
/// socle in degree `d - r`. Needs `r <= 3`.
pub fn construct_cancellation_witness(h: &HVector, d: usize) -> Result<Witness> {
    let e = h.top_degree();
    if e == 0 {
        return Err(Error::TrivialAlgebra);
    }
    let r = h.small_codimension()?;
    if r > 3 {
        return Err(Error::UnsupportedCodimension(
            r.to_string(),
            "cancellation witnesses are built in at most three variables",
        ));
    }
    if !possible_cancellations(h)?.shifts.contains(&d) {
        return Err(Error::NotACancellation(d));
    }
    let sigma = d - r;
    let a = sigma + 1;
    let z = r - 1;
    let lex = lex_ideal_for_h(h, e + 1)?;
    let mut pieces: Vec<BTreeSet<Monomial>> = lex.pieces().to_vec();
    let segment: Vec<Monomial> = lex.piece(a)?.iter().rev().cloned().collect();
    let p = segment.len();
    let q = segment
        .iter()
        .rposition(|t| t.is_divisible_by_var(z))
        .ok_or_else(|| {
            invariant("no monomial of the lex piece is divisible by the last variable")
        })?;
    let after = |m: &Monomial| {
        m.lex_successor()
            .ok_or_else(|| invariant(format!("{m} has no successor")))
    };
    let generators = lex.generators(a)?;
    let piece = &mut pieces[a];
    if q + 1 == p {
        let t_p = &segment[p - 1];
        if !generators.contains(t_p) {
            return Err(invariant(format!("{t_p} is not a generator")));
        }
        piece.remove(t_p);
        piece.insert(after(t_p)?);
    } else if q + 2 == p && r == 3 {
        let t_q = &segment[q];
        if !generators.contains(t_q) {
            return Err(invariant(format!("{t_q} is not a generator")));
        }
        if t_q.exponents()[z] > 1 {
            piece.remove(t_q);
            piece.insert(after(&after(&segment[p - 1])?)?);
        } else {
            let ai = a as u32;
            let expected = [[ai, 0, 0], [ai - 1, 1, 0], [ai - 1, 0, 1], [ai - 2, 2, 0]];
            if segment
                .iter()
                .map(|m| m.exponents().to_vec())
                .ne(expected.iter().map(|v| v.to_vec()))
            {
                return Err(invariant(format!("unexpected lex piece {segment:?}")));
            }
            piece.remove(&segment[1]);
            piece.insert(Monomial::new(vec![ai - 2, 1, 1]));
        }
    } else {
        return Err(invariant(
            "two consecutive monomials of the lex piece avoid the last variable",
        ));
    }
    for i in a + 1..=e + 1 {
        let base = multiply_by_variables(r, &pieces[i - 1]);
        let target = lex.piece(i)?;
        if base.is_subset(target) {
            break;
        }
        if base.len() > target.len() {
            return Err(invariant(format!("R_1 J exceeds I in degree {i}")));
        }
        let mut next = base;
        let candidates = lex
            .generators(i)?
            .into_iter()
            .chain(target.iter().rev().cloned())
            .chain(monomials_of_degree(r, i)?);
        for m in candidates {
            if next.len() == target.len() {
                break;
            }
            next.insert(m);
        }
        pieces[i] = next;
    }
    let j = MonomialIdeal::from_pieces(r, pieces)?;
    let w = Witness::from_payload(WitnessPayload::MonomialIdeal(j))?;
    let max = max_socle_for_h(h)?;
    if w.h != *h || w.s.get(sigma) >= max.get(sigma) {
        return Err(Error::WitnessRejected(format!(
            "constructed ideal has h-vector {} and socle-vector {}",
            w.h, w.s
        )));
    }
    verify_witness(&w)?;
    Ok(w)
}

/// The sufficient conditions for more than one socle-vector, stated in
/// terms of the maximum socle-vector `s` and the generic index `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `s_{t+1} s_{t+2} != 0`.
    AfterGeneric,
    /// `s_i s_{i+1} != 0` and `min_prev(h_{i+1} + 1) > min_prev(h_{i+1})`.
    Adjacent(usize),
    /// `s_{e-1} != 0`.
    BelowTop,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::AfterGeneric => write!(f, "condition-i"),
            Condition::Adjacent(i) => write!(f, "condition-ii@i={i}"),
            Condition::BelowTop => write!(f, "condition-iii"),
        }
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text
            .trim()
            .strip_prefix("condition-")
            .unwrap_or(text.trim());
        match t {
            "i" => Ok(Condition::AfterGeneric),
            "iii" => Ok(Condition::BelowTop),
            _ => t
                .strip_prefix("ii@i=")
                .or_else(|| t.strip_prefix("ii@"))
                .and_then(|i| i.parse().ok())
                .map(Condition::Adjacent)
                .ok_or_else(|| Error::Parse(format!("unknown condition {text:?}"))),
        }
    }
}

impl Serialize for Condition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Condition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A condition that holds, with the socle-vector its construction yields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiredCondition {
    pub condition: Condition,
    #[serde(with = "s_array")]
    pub predicted: SocleVector,
}

pub fn non_uniqueness_conditions(h: &HVector) -> Result<Vec<FiredCondition>> {
    let e = h.top_degree();
    let s = max_socle_for_h(h)?;
    let t = generic_index(h);
    let nz = |d: usize| !s.get(d).is_zero();
    let lowered = |d: usize| {
        s.decremented(d)
            .ok_or_else(|| invariant(format!("cannot lower s_{d} of {s}")))
    };
    let mut out = Vec::new();
    if t + 2 <= e && nz(t + 1) && nz(t + 2) {
        out.push(FiredCondition {
            condition: Condition::AfterGeneric,
            predicted: lowered(t + 1)?,
        });
    }
    for i in 1..e {
        let next = h.get(i + 1);
        if nz(i) && nz(i + 1) && min_prev(&(&next + 1u32), i + 1) > min_prev(&next, i + 1) {
            out.push(FiredCondition {
                condition: Condition::Adjacent(i),
                predicted: lowered(i)?,
            });
        }
    }
    if e >= 2 && nz(e - 1) {
        out.push(FiredCondition {
            condition: Condition::BelowTop,
            predicted: lowered(e - 1)?,
        });
    }
    Ok(out)
}

/// Last `n` monomials of degree `d`, largest first.
fn last_monomials(r: usize, d: usize, n: usize) -> Result<Vec<Monomial>> {
    let all = monomials_of_degree(r, d)?;
    let start = all
        .len()
        .checked_sub(n)
        .ok_or_else(|| invariant(format!("{n} exceeds the monomials of degree {d}")))?;
    Ok(all[start..].to_vec())
}

/// Inverse system of the lex-segment ideal with h-vector given by `sizes`:
/// the last `sizes[d]` monomials of each degree.
fn lex_closure(r: usize, sizes: &[usize]) -> Result<BTreeMap<usize, BTreeSet<Monomial>>> {
    sizes
        .iter()
        .enumerate()
        .map(|(d, &n)| Ok((d, last_monomials(r, d, n)?.into_iter().collect())))
        .collect()
}

fn small(n: &BigUint) -> Result<usize> {
    n.to_usize()
        .ok_or_else(|| Error::TooLarge(format!("entry {n}")))
}

type Generators = BTreeMap<usize, BTreeSet<Monomial>>;

fn lex_generators(h: &HVector) -> Result<(usize, Generators)> {
    let r = h.small_codimension()?;
    let closure = lex_closure(r, &h.small_entries()?)?;
    Ok((r, closure_minimal_generators(r, &closure)))
}

fn monomial_module(r: usize, gens: &Generators) -> Result<InverseSystemModule> {
    InverseSystemModule::from_monomials(r, gens.values().flatten())
}

fn drop_smallest(gens: &mut Generators, d: usize) -> Result<Monomial> {
    let piece = gens
        .get_mut(&d)
        .ok_or_else(|| invariant(format!("no generators in degree {d}")))?;
    piece
        .pop_first()
        .ok_or_else(|| invariant(format!("no generators in degree {d}")))
}

fn adjacent_witness(h: &HVector, i: usize) -> Result<Witness> {
    let (r, mut gens) = lex_generators(h)?;
    drop_smallest(&mut gens, i)?;
    let upper = gens
        .get_mut(&(i + 1))
        .ok_or_else(|| invariant(format!("no generators in degree {}", i + 1)))?;
    let first = upper
        .pop_last()
        .ok_or_else(|| invariant(format!("no generators in degree {}", i + 1)))?;
    let before = first
        .lex_predecessor()
        .ok_or_else(|| invariant(format!("{first} is the first monomial of its degree")))?;
    upper.insert(before);
    Witness::from_payload(WitnessPayload::InverseSystem(monomial_module(r, &gens)?))
}

fn below_top_witness(h: &HVector) -> Result<Witness> {
    let e = h.top_degree();
    let he = h.get(e);
    if min_prev(&(&he + 1u32), e) > min_prev(&he, e) {
        return adjacent_witness(h, e - 1);
    }
    let (r, mut gens) = lex_generators(h)?;
    let z = r - 1;
    let top = last_monomials(r, e, small(&he)?)?;
    if top.len() < 2 {
        return Err(invariant("the top piece has fewer than two monomials"));
    }
    let (u, w) = (&top[0], &top[1]);
    let mut t = u.lex_predecessor();
    while let Some(m) = t.as_ref().filter(|m| !m.is_divisible_by_var(z)) {
        t = m.lex_predecessor();
    }
    let t = t.ok_or_else(|| {
        invariant(format!(
            "no monomial before {u} is divisible by the last variable"
        ))
    })?;
    let s = max_socle_for_h(h)?;
    let derivatives = small(&(h.get(e - 1) - s.get(e - 1)))?;
    let u_prime = last_monomials(r, e - 1, derivatives)?
        .into_iter()
        .next()
        .ok_or_else(|| invariant("no derivatives in degree e - 1"))?;
    let w_div = w
        .div_var(w.max_var()? - 1)
        .expect("the largest variable divides");
    let mut chosen: BTreeSet<Monomial> = top[1..].iter().cloned().collect();
    chosen.insert(t.clone());
    if w_div != u_prime {
        chosen.remove(&Monomial::power(r, z, e as u32));
        chosen.insert(
            t.lex_successor()
                .ok_or_else(|| invariant(format!("{t} has no successor")))?,
        );
    }
    gens.insert(e, chosen);
    drop_smallest(&mut gens, e - 1)?;
    Witness::from_payload(WitnessPayload::InverseSystem(monomial_module(r, &gens)?))
}

fn after_generic_witness(h: &HVector, seed: u64, config: &GenericityConfig) -> Result<Witness> {
    let e = h.top_degree();
    let r = h.small_codimension()?;
    let t = generic_index(h);
    let s = max_socle_for_h(h)?;
    let mut lowered: Vec<BigUint> = s.entries().to_vec();
    lowered[t + 1] -= 1u32;
    lowered[t + 2] -= 1u32;
    let mut sizes = vec![0usize; e + 1];
    let mut above = BigUint::zero();
    for d in (1..=e).rev() {
        let carried = if d == e {
            BigUint::zero()
        } else {
            min_prev(&above, d + 1)
        };
        let n = carried + &lowered[d];
        sizes[d] = small(&n)?;
        above = n;
    }
    sizes[0] = 1;
    let base = closure_minimal_generators(r, &lex_closure(r, &sizes)?);
    let tail = h.get(t + 2) - 1u32;
    let powers = if min_prev(&tail, t + 2) == h.get(t + 1) - s.get(t + 1) {
        1
    } else {
        2
    };
    let mut tried = Vec::new();
    for k in config.seeds(seed) {
        tried.push(k);
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let Some(f) = power_sum(powers, t + 2, r, &mut rng, config.coefficient_bound)? else {
            continue;
        };
        let mut module = monomial_module(r, &base)?;
        module.push(f)?;
        let (hh, ss) = module_invariants(&module)?;
        if hh == *h && ss.le_entrywise(&s) && ss != s {
            return Ok(Witness {
                payload: WitnessPayload::InverseSystem(module),
                h: hh,
                s: ss,
            });
        }
    }
    Err(Error::GenericityExhausted { seeds: tried })
}

/// Builds and verifies an inverse system with h-vector `h` and a
/// non-maximal socle-vector. For the second and third conditions the
/// socle-vector is exactly the predicted one; for the first it is at most
/// the predicted one entrywise.
pub fn construct_condition_witness(
    h: &HVector,
    condition: Condition,
    seed: u64,
    config: &GenericityConfig,
) -> Result<Witness> {
    let fired = non_uniqueness_conditions(h)?;
    let predicted = fired
        .iter()
        .find(|f| f.condition == condition)
        .map(|f| f.predicted.clone())
        .ok_or_else(|| Error::ConditionNotMet(condition.to_string()))?;
    let w = match condition {
        Condition::AfterGeneric => after_generic_witness(h, seed, config)?,
        Condition::Adjacent(i) => adjacent_witness(h, i)?,
        Condition::BelowTop => below_top_witness(h)?,
    };
    // The generic module of the first condition can lose socle in degree t
    // as well, so only the ordering below the prediction is enforced there.
    let as_predicted = match condition {
        Condition::AfterGeneric => w.s.le_entrywise(&predicted),
        _ => w.s == predicted,
    };
    if w.h != *h || !as_predicted {
        return Err(Error::WitnessRejected(format!(
            "{condition}: built h-vector {} and socle-vector {}, expected {h} and {predicted}",
            w.h, w.s
        )));
    }
    verify_witness(&w)?;
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Unique,
    NonUnique,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unique => "unique",
            Status::NonUnique => "non-unique",
            Status::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniquenessVerdict {
    #[serde(with = "h_array")]
    pub h: HVector,
    #[serde(with = "s_array")]
    pub max_socle: SocleVector,
    pub status: Status,
    pub reasons: Vec<String>,
    pub conditions: Vec<FiredCondition>,
    pub witnesses: Vec<Witness>,
}

/// Complete decision in at most three variables: unique exactly when the
/// lex-segment resolution has no possible cancellation, otherwise one
/// witness per cancellable shift.
pub fn decide_low_codimension(h: &HVector) -> Result<UniquenessVerdict> {
    let r = h.small_codimension()?;
    if r > 3 {
        return Err(Error::UnsupportedCodimension(
            r.to_string(),
            "the complete decision covers at most three variables",
        ));
    }
    let max_socle = max_socle_for_h(h)?;
    let conditions = non_uniqueness_conditions(h)?;
    let indices = cancellation_indices(h);
    if indices.is_empty() {
        if !conditions.is_empty() {
            return Err(invariant(format!(
                "{h} has no possible cancellation but satisfies {}",
                conditions[0].condition
            )));
        }
        return Ok(UniquenessVerdict {
            h: h.clone(),
            max_socle,
            status: Status::Unique,
            reasons: vec!["cancellation-free".into()],
            conditions,
            witnesses: Vec::new(),
        });
    }
    let witnesses = indices
        .iter()
        .map(|&i| construct_cancellation_witness(h, i - 1 + r))
        .collect::<Result<Vec<_>>>()?;
    Ok(UniquenessVerdict {
        h: h.clone(),
        max_socle,
        status: Status::NonUnique,
        reasons: indices
            .iter()
            .map(|i| format!("cancellation@i={i}"))
            .collect(),
        conditions,
        witnesses,
    })
}

/// Settings for [`decide`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DecideOptions {
    pub seed: u64,
    pub genericity: GenericityConfig,
    /// Fall back to the monomial-ideal search when no criterion applies.
    pub search: Option<Budget>,
}

/// Decision in any codimension. Beyond three variables the answer may be
/// `undecided`: no criterion applies and the search found nothing.
pub fn decide(h: &HVector, options: &DecideOptions) -> Result<UniquenessVerdict> {
    let r = h.small_codimension()?;
    if r <= 3 {
        return decide_low_codimension(h);
    }
    let max_socle = max_socle_for_h(h)?;
    let conditions = non_uniqueness_conditions(h)?;
    let mut verdict = UniquenessVerdict {
        h: h.clone(),
        max_socle,
        status: Status::Undecided,
        reasons: Vec::new(),
        conditions: conditions.clone(),
        witnesses: Vec::new(),
    };
    if cancellation_indices(h).is_empty() {
        if !conditions.is_empty() {
            return Err(invariant(format!(
                "{h} has no possible cancellation but satisfies {}",
                conditions[0].condition
            )));
        }
        verdict.status = Status::Unique;
        verdict.reasons.push("cancellation-free".into());
        return Ok(verdict);
    }
    if !conditions.is_empty() {
        verdict.status = Status::NonUnique;
        for fired in &conditions {
            verdict.reasons.push(fired.condition.to_string());
            match construct_condition_witness(h, fired.condition, options.seed, &options.genericity)
            {
                Ok(w) => verdict.witnesses.push(w),
                Err(Error::GenericityExhausted { .. }) => {}
                Err(err) => return Err(err),
            }
        }
        return Ok(verdict);
    }
    let Some(budget) = options.search else {
        verdict.reasons.push("no-criterion-applies".into());
        return Ok(verdict);
    };
    match socle_catalog(h, budget) {
        Ok(catalog) if catalog.len() >= 2 => {
            verdict.status = Status::NonUnique;
            verdict.reasons.push("monomial-search".into());
            for (s, ideal) in catalog.examples {
                if s != verdict.max_socle {
                    let w = Witness::from_payload(WitnessPayload::MonomialIdeal(ideal))?;
                    verify_witness(&w)?;
                    verdict.witnesses.push(w);
                }
            }
        }
        Ok(catalog) if !catalog.exhaustive => {
            verdict.reasons.push("monomial-search-out-of-budget".into())
        }
        Ok(_) => verdict.reasons.push("monomial-search-single".into()),
        Err(Error::TooLarge(_)) => verdict.reasons.push("monomial-search-too-large".into()),
        Err(err) => return Err(err),
    }
    Ok(verdict)
}

/// Expected h-vector after adjoining a general sum of `m` powers of
/// degree `d` to a module with h-vector `h`: `min{h_i + h_i(m, d), dim R_i}`.
pub fn predicted_after_adjoining(h: &HVector, m: usize, d: usize) -> Result<HVector> {
    let r = h.small_codimension()?;
    let added = compressed_gorenstein_h(&BigUint::from(m), d, r)?;
    let rr = BigUint::from(r);
    let top = h.top_degree().max(d);
    let entries = (0..=top)
        .map(|i| {
            if i == 0 {
                BigUint::one()
            } else {
                (h.get(i) + added.get(i)).min(monomial_count(&rr, i))
            }
        })
        .collect();
    Ok(HVector::new(entries)?)
}
