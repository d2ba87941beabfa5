//! Exhaustive search over monomial ideals with a prescribed Hilbert function.
//!
//! Each degree piece is a bit mask over the monomials of that degree, so the
//! search is limited to degrees with at most 128 monomials.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use itertools::{Combinations, Itertools};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::monomial::{lex_ideal_for_h, monomials_of_degree, Monomial, MonomialIdeal};
use crate::vectors::{max_socle_for_h, HVector, SocleVector};

pub const MAX_MONOMIALS_PER_MASK: usize = 128;

/// Node and wall-clock limits for one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 1_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            ..Budget::default()
        }
    }
}

struct Meter {
    budget: Budget,
    start: Instant,
    nodes: u64,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
        }
    }

    /// Counts one node; false once either limit is exceeded.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return false;
        }
        !self.nodes.is_multiple_of(1024) || self.start.elapsed() <= self.budget.max_time
    }
}

struct Layout {
    r: usize,
    e: usize,
    listings: Vec<Vec<Monomial>>,
    // up[d][k]: mask in degree d+1 of the multiples x_j * listings[d][k]
    up: Vec<Vec<u128>>,
    sizes: Vec<usize>,
}

impl Layout {
    fn new(h: &HVector) -> Result<Self> {
        let e = h.top_degree();
        if e == 0 {
            return Err(Error::TrivialAlgebra);
        }
        let r = h.small_codimension()?;
        let mut listings = Vec::with_capacity(e + 2);
        for d in 0..=e + 1 {
            let listing = monomials_of_degree(r, d)?;
            if listing.len() > MAX_MONOMIALS_PER_MASK {
                return Err(Error::TooLarge(format!(
                    "degree {d} with {} monomials (the search handles at most {MAX_MONOMIALS_PER_MASK})",
                    listing.len()
                )));
            }
            listings.push(listing);
        }
        let sizes = (0..=e + 1)
            .map(|d| {
                let hd = h.get(d).to_usize().unwrap_or(usize::MAX);
                listings[d].len().checked_sub(hd).ok_or_else(|| {
                    Error::Invariant(format!("h_{d} exceeds the number of monomials"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let up = (0..=e)
            .map(|d| {
                let index: HashMap<&Monomial, usize> = listings[d + 1]
                    .iter()
                    .enumerate()
                    .map(|(k, m)| (m, k))
                    .collect();
                listings[d]
                    .iter()
                    .map(|m| (0..r).fold(0u128, |acc, j| acc | 1u128 << index[&m.mul_var(j)]))
                    .collect()
            })
            .collect();
        Ok(Layout {
            r,
            e,
            listings,
            up,
            sizes,
        })
    }

    fn multiples(&self, d: usize, mask: u128) -> u128 {
        bits(mask).fold(0, |acc, k| acc | self.up[d][k])
    }

    fn free_choices(
        &self,
        d: usize,
        forced: u128,
    ) -> Option<Combinations<std::vec::IntoIter<usize>>> {
        let need = self.sizes[d].checked_sub(forced.count_ones() as usize)?;
        let free: Vec<usize> = (0..self.listings[d].len())
            .filter(|&k| forced >> k & 1 == 0)
            .collect();
        Some(free.into_iter().combinations(need))
    }

    /// Socle monomials of degree `d` given the pieces in degrees `d`, `d+1`.
    fn socle_count(&self, d: usize, mask: u128, next: u128) -> u32 {
        (0..self.listings[d].len())
            .filter(|&k| mask >> k & 1 == 0 && self.up[d][k] & !next == 0)
            .count() as u32
    }

    fn ideal(&self, masks: &[u128]) -> Result<MonomialIdeal> {
        let pieces: Vec<BTreeSet<Monomial>> = masks
            .iter()
            .zip(&self.listings)
            .map(|(&mask, listing)| bits(mask).map(|k| listing[k].clone()).collect())
            .collect();
        for (d, piece) in pieces.iter().enumerate() {
            assert_eq!(
                piece.len(),
                self.sizes[d],
                "piece of degree {d} has the wrong size"
            );
        }
        MonomialIdeal::from_pieces(self.r, pieces)
    }
}

fn bits(mask: u128) -> impl Iterator<Item = usize> {
    (0..128).filter(move |k| mask >> k & 1 == 1)
}

fn mask_of(combo: &[usize]) -> u128 {
    combo.iter().fold(0, |acc, &k| acc | 1u128 << k)
}

struct Frame {
    d: usize,
    forced: u128,
    choices: Combinations<std::vec::IntoIter<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Progress {
    Running,
    Finished,
    OutOfBudget,
}

/// Depth-first stream of every monomial ideal `I` with `R/I` of h-vector
/// `h`, stored up to degree `e + 1`.
pub struct IdealEnumerator {
    layout: Layout,
    meter: Meter,
    stack: Vec<Frame>,
    masks: Vec<u128>,
    progress: Progress,
}

pub fn enumerate_monomial_ideals(h: &HVector, budget: Budget) -> Result<IdealEnumerator> {
    let layout = Layout::new(h)?;
    let mut masks = vec![0u128; layout.e + 2];
    masks[0] = 0;
    let stack = layout
        .free_choices(1, 0)
        .map(|choices| Frame {
            d: 1,
            forced: 0,
            choices,
        })
        .into_iter()
        .collect();
    Ok(IdealEnumerator {
        layout,
        meter: Meter::new(budget),
        stack,
        masks,
        progress: Progress::Running,
    })
}

impl IdealEnumerator {
    /// True once the stream has ended without hitting the budget.
    pub fn exhaustive(&self) -> bool {
        self.progress == Progress::Finished
    }

    pub fn nodes(&self) -> u64 {
        self.meter.nodes
    }
}

impl Iterator for IdealEnumerator {
    type Item = MonomialIdeal;

    fn next(&mut self) -> Option<MonomialIdeal> {
        while self.progress == Progress::Running {
            let Some(frame) = self.stack.last_mut() else {
                self.progress = Progress::Finished;
                break;
            };
            let Some(combo) = frame.choices.next() else {
                self.stack.pop();
                continue;
            };
            if !self.meter.tick() {
                self.progress = Progress::OutOfBudget;
                break;
            }
            let d = frame.d;
            let mask = frame.forced | mask_of(&combo);
            self.masks[d] = mask;
            if d == self.layout.e + 1 {
                return Some(
                    self.layout
                        .ideal(&self.masks)
                        .expect("enumerated pieces form an ideal"),
                );
            }
            let forced = self.layout.multiples(d, mask);
            if let Some(choices) = self.layout.free_choices(d + 1, forced) {
                self.stack.push(Frame {
                    d: d + 1,
                    forced,
                    choices,
                });
            }
        }
        None
    }
}

/// Socle-vectors realised by monomial ideals with a given h-vector.
///
/// Only monomial ideals are searched: two entries prove that the socle-vector
/// is not unique, a single entry proves nothing by itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocleCatalog {
    pub h: HVector,
    pub examples: BTreeMap<SocleVector, MonomialIdeal>,
    pub ideal_count: Option<BigUint>,
    pub exhaustive: bool,
    pub nodes: u64,
}

impl SocleCatalog {
    pub fn socle_vectors(&self) -> impl Iterator<Item = &SocleVector> {
        self.examples.keys()
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    fn out_of_budget(h: &HVector, nodes: u64) -> Result<Self> {
        let e = h.top_degree();
        let lex = lex_ideal_for_h(h, e + 1)?;
        Ok(SocleCatalog {
            h: h.clone(),
            examples: BTreeMap::from([(max_socle_for_h(h)?, lex)]),
            ideal_count: None,
            exhaustive: false,
            nodes,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CatalogEntry {
    #[serde(with = "json::uint_seq")]
    s: Vec<BigUint>,
    example: MonomialIdeal,
}

#[derive(Serialize, Deserialize)]
struct CatalogJson {
    #[serde(with = "json::uint_seq")]
    h: Vec<BigUint>,
    exhaustive: bool,
    #[serde(with = "json::opt_uint")]
    ideal_count: Option<BigUint>,
    nodes: u64,
    scope: String,
    socle_vectors: Vec<CatalogEntry>,
}

const SCOPE: &str = "monomial ideals only";

impl Serialize for SocleCatalog {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CatalogJson {
            h: self.h.entries().to_vec(),
            exhaustive: self.exhaustive,
            ideal_count: self.ideal_count.clone(),
            nodes: self.nodes,
            scope: SCOPE.into(),
            socle_vectors: self
                .examples
                .iter()
                .map(|(s, ideal)| CatalogEntry {
                    s: s.entries().to_vec(),
                    example: ideal.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SocleCatalog {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CatalogJson::deserialize(d)?;
        let h = HVector::new(raw.h).map_err(D::Error::custom)?;
        let examples = raw
            .socle_vectors
            .into_iter()
            .map(|entry| {
                Ok((
                    SocleVector::new(entry.s).map_err(D::Error::custom)?,
                    entry.example,
                ))
            })
            .collect::<std::result::Result<_, D::Error>>()?;
        Ok(SocleCatalog {
            h,
            examples,
            ideal_count: raw.ideal_count,
            exhaustive: raw.exhaustive,
            nodes: raw.nodes,
        })
    }
}

#[derive(Default)]
struct State {
    paths: BigUint,
    // partial socle-vector (degrees < current) -> pieces of one ideal realising it
    partials: HashMap<Vec<u32>, Vec<u128>>,
}

/// Catalog of socle-vectors over all monomial ideals with h-vector `h`.
///
/// The socle in degree `d` depends only on the pieces in degrees `d` and
/// `d + 1`, so ideals sharing a piece are merged degree by degree instead of
/// being enumerated one by one.
pub fn socle_catalog(h: &HVector, budget: Budget) -> Result<SocleCatalog> {
    let layout = Layout::new(h)?;
    let mut meter = Meter::new(budget);
    let mut states: HashMap<u128, State> = HashMap::new();
    states.insert(
        0,
        State {
            paths: BigUint::from(1u32),
            partials: HashMap::from([(Vec::new(), vec![0u128])]),
        },
    );
    for d in 0..=layout.e {
        let mut next: HashMap<u128, State> = HashMap::new();
        for (mask, state) in &states {
            let forced = layout.multiples(d, *mask);
            let Some(choices) = layout.free_choices(d + 1, forced) else {
                continue;
            };
            for combo in choices {
                if !meter.tick() {
                    return SocleCatalog::out_of_budget(h, meter.nodes);
                }
                let piece = forced | mask_of(&combo);
                let socle = layout.socle_count(d, *mask, piece);
                let target = next.entry(piece).or_default();
                target.paths += &state.paths;
                for (partial, path) in &state.partials {
                    let mut key = partial.clone();
                    key.push(socle);
                    target.partials.entry(key).or_insert_with(|| {
                        let mut p = path.clone();
                        p.push(piece);
                        p
                    });
                }
            }
        }
        states = next;
    }
    let mut examples = BTreeMap::new();
    let mut count = BigUint::zero();
    for state in states.into_values() {
        count += state.paths;
        for (partial, path) in state.partials {
            let s = SocleVector::new(partial.into_iter().map(BigUint::from).collect())?;
            if let std::collections::btree_map::Entry::Vacant(slot) = examples.entry(s) {
                slot.insert(layout.ideal(&path)?);
            }
        }
    }
    Ok(SocleCatalog {
        h: h.clone(),
        examples,
        ideal_count: Some(count),
        exhaustive: true,
        nodes: meter.nodes,
    })
}

/// The same catalog, folded directly over [`enumerate_monomial_ideals`].
pub fn socle_catalog_by_enumeration(h: &HVector, budget: Budget) -> Result<SocleCatalog> {
    let mut stream = enumerate_monomial_ideals(h, budget)?;
    let mut examples = BTreeMap::new();
    let mut count = BigUint::zero();
    for ideal in stream.by_ref() {
        count += 1u32;
        let (_, s) = ideal.invariants()?;
        examples.entry(s).or_insert(ideal);
    }
    if !stream.exhaustive() {
        return SocleCatalog::out_of_budget(h, stream.nodes());
    }
    Ok(SocleCatalog {
        h: h.clone(),
        examples,
        ideal_count: Some(count),
        exhaustive: true,
        nodes: stream.nodes(),
    })
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
    fn three_ideals_for_one_two_one() {
        let ideals: Vec<MonomialIdeal> =
            enumerate_monomial_ideals(&h(&[1, 2, 1]), Budget::default())
                .unwrap()
                .collect();
        assert_eq!(ideals.len(), 3);
        let catalog = socle_catalog(&h(&[1, 2, 1]), Budget::default()).unwrap();
        assert!(catalog.exhaustive);
        assert_eq!(catalog.ideal_count, Some(BigUint::from(3u32)));
        let found: Vec<&SocleVector> = catalog.socle_vectors().collect();
        assert_eq!(found, [&s(&[0, 0, 1]), &s(&[0, 1, 1])]);
        let gorenstein = &catalog.examples[&s(&[0, 0, 1])];
        assert!(gorenstein.contains(&Monomial::parse("x^2", 2).unwrap()));
        assert!(gorenstein.contains(&Monomial::parse("y^2", 2).unwrap()));
    }

    #[test]
    fn single_variable() {
        let ideals: Vec<MonomialIdeal> = enumerate_monomial_ideals(&h(&[1, 1]), Budget::default())
            .unwrap()
            .collect();
        assert_eq!(ideals.len(), 1);
        assert!(ideals[0].contains(&Monomial::parse("x1^2", 1).unwrap()));
    }

    #[test]
    fn unique_case_is_a_singleton() {
        let catalog = socle_catalog(&h(&[1, 2, 1, 1]), Budget::default()).unwrap();
        assert!(catalog.exhaustive);
        assert_eq!(
            catalog.socle_vectors().collect::<Vec<_>>(),
            [&s(&[0, 1, 0, 1])]
        );
    }

    #[test]
    fn worked_example_catalog() {
        let hv = h(&[1, 3, 6, 10, 12, 14]);
        let catalog = socle_catalog(&hv, Budget::default()).unwrap();
        assert!(catalog.exhaustive);
        assert!(catalog.examples.contains_key(&s(&[0, 0, 0, 1, 0, 14])));
        assert!(catalog.examples.contains_key(&s(&[0, 0, 0, 0, 0, 14])));
        let lex = lex_ideal_for_h(&hv, 6).unwrap();
        let stream: Vec<MonomialIdeal> = enumerate_monomial_ideals(&hv, Budget::default())
            .unwrap()
            .collect();
        assert!(stream.contains(&lex));
        let j4: BTreeSet<Monomial> = ["x^4", "x^3 y", "x^2 y^2"]
            .iter()
            .map(|t| Monomial::parse(t, 3).unwrap())
            .collect();
        assert!(stream.iter().any(|j| j.piece(4).unwrap() == &j4));
    }

    #[test]
    fn dynamic_programme_matches_the_stream() {
        for v in [
            &[1u64, 2, 1][..],
            &[1, 2, 3, 2, 1],
            &[1, 2, 2, 2],
            &[1, 3, 3, 1],
            &[1, 3, 4, 3, 2],
            &[1, 3, 5, 4, 2],
            &[1, 3, 6, 5, 3],
        ] {
            let hv = h(v);
            let a = socle_catalog(&hv, Budget::default()).unwrap();
            let b = socle_catalog_by_enumeration(&hv, Budget::default()).unwrap();
            assert_eq!(
                a.examples.keys().collect::<Vec<_>>(),
                b.examples.keys().collect::<Vec<_>>(),
                "{hv}"
            );
            assert_eq!(a.ideal_count, b.ideal_count, "{hv}");
            for (sv, ideal) in &a.examples {
                assert_eq!(&ideal.invariants().unwrap(), &(hv.clone(), sv.clone()));
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let hv = h(&[1, 3, 6, 10, 12, 14]);
        let mut stream = enumerate_monomial_ideals(&hv, Budget::nodes(5)).unwrap();
        assert!(stream.by_ref().count() <= 5);
        assert!(!stream.exhaustive());
        let catalog = socle_catalog(&hv, Budget::nodes(5)).unwrap();
        assert!(!catalog.exhaustive);
        assert_eq!(catalog.ideal_count, None);
        assert!(catalog
            .examples
            .contains_key(&max_socle_for_h(&hv).unwrap()));
    }

    #[test]
    fn too_many_monomials() {
        assert!(matches!(
            socle_catalog(&h(&[1, 5, 15, 35, 70, 126, 20]), Budget::default()),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn catalog_json_round_trip() {
        let catalog = socle_catalog(&h(&[1, 2, 1]), Budget::default()).unwrap();
        let text = serde_json::to_string(&catalog).unwrap();
        assert!(text.contains(r#""scope":"monomial ideals only""#));
        let back: SocleCatalog = serde_json::from_str(&text).unwrap();
        assert_eq!(back, catalog);
    }
}
