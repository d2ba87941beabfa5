//! Systematic and random families of h-vectors and socle-vectors.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::macaulay::macaulay_bound;
use crate::vectors::{HVector, SocleVector};

/// Every h-vector with `h_1 = r` and top degree exactly `e`.
pub fn h_vectors(r: usize, e: usize) -> Vec<HVector> {
    fn extend(prefix: &mut Vec<BigUint>, e: usize, out: &mut Vec<HVector>) {
        let d = prefix.len() - 1;
        if d == e {
            out.push(HVector::new(prefix.clone()).expect("entries stay within the bound"));
            return;
        }
        let bound = macaulay_bound(&prefix[d], d).to_u64().expect("small bound");
        for v in 1..=bound {
            prefix.push(BigUint::from(v));
            extend(prefix, e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if e == 0 {
        return vec![HVector::new(vec![BigUint::one()]).expect("(1) is valid")];
    }
    if r == 0 {
        return out;
    }
    extend(&mut vec![BigUint::one(), BigUint::from(r)], e, &mut out);
    out
}

/// Every socle-vector of top degree `1..=max_degree` with entries at most
/// `max_entry`.
pub fn socle_vectors(max_degree: usize, max_entry: u64) -> Vec<SocleVector> {
    let mut out = Vec::new();
    for e in 1..=max_degree {
        let mut entries = vec![0u64; e + 1];
        loop {
            if entries[e] > 0 {
                out.push(SocleVector::from_u64s(&entries).expect("valid by construction"));
            }
            let Some(k) = (1..=e).find(|&k| entries[k] < max_entry) else {
                break;
            };
            entries[k] += 1;
            entries[1..k].iter_mut().for_each(|v| *v = 0);
        }
    }
    out
}

/// A random h-vector with `h_1 = r` and top degree `e`, each entry drawn
/// uniformly below Macaulay's bound for the previous one.
pub fn random_h_vector<R: Rng + ?Sized>(rng: &mut R, r: usize, e: usize) -> HVector {
    let mut h = vec![BigUint::one()];
    if e > 0 {
        h.push(BigUint::from(r.max(1)));
    }
    for d in 1..e {
        let bound = macaulay_bound(&h[d], d).to_u64().unwrap_or(u64::MAX);
        h.push(BigUint::from(rng.gen_range(1..=bound)));
    }
    HVector::new(h).expect("entries stay within the bound")
}
