//! Binomial coefficients, i-binomial (Macaulay) expansions and their shifts.
//!
//! Every growth bound on Hilbert functions reduces to two numbers computed
//! from the `i`-binomial expansion `n = C(n_i, i) + C(n_{i-1}, i-1) + ... + C(n_j, j)`:
//! the upper shift `Σ C(n_k + 1, k + 1)` (Macaulay's bound on the next entry)
//! and the lower shift `Σ C(n_k - 1, k - 1)` (the least possible previous entry).
//! All arithmetic is exact.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binom(n: &BigUint, k: usize) -> BigUint {
    let kb = BigUint::from(k);
    if kb > *n {
        return BigUint::zero();
    }
    let complement = n - &kb;
    let k = match complement.to_usize() {
        Some(c) if c < k => c,
        _ => k,
    };
    let base = n - BigUint::from(k);
    let mut acc = BigUint::one();
    for t in 1..=k {
        acc *= &base + BigUint::from(t);
        acc /= BigUint::from(t);
    }
    acc
}

/// `C(n, k)` for machine-sized arguments.
pub fn binom_u64(n: u64, k: u64) -> BigUint {
    match usize::try_from(k) {
        Ok(k) => binom(&BigUint::from(n), k),
        Err(_) => BigUint::zero(),
    }
}

/// Number of monomials of degree `d` in `r` variables, `C(r - 1 + d, d)`.
pub fn monomial_count(r: &BigUint, d: usize) -> BigUint {
    if r.is_zero() {
        return if d == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    binom(&(r + BigUint::from(d) - 1u32), d)
}

/// The `i`-binomial expansion of a non-negative integer.
///
/// Terms are stored from the largest lower index `i` downwards; lower
/// indices are consecutive and tops strictly decrease. The expansion of 0
/// has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinomialExpansion {
    index: usize,
    terms: Vec<(BigUint, usize)>,
}

impl BinomialExpansion {
    pub fn index(&self) -> usize {
        self.index
    }

    /// `(n_k, k)` pairs, `k` running from `index` down.
    pub fn terms(&self) -> &[(BigUint, usize)] {
        &self.terms
    }

    /// Smallest lower index `j`, `None` for the empty expansion.
    pub fn lowest_index(&self) -> Option<usize> {
        self.terms.last().map(|(_, k)| *k)
    }

    pub fn value(&self) -> BigUint {
        self.terms.iter().map(|(n, k)| binom(n, *k)).sum()
    }

    /// `Σ C(n_k + a, k + a)`.
    ///
    /// Fails when `k + a < 0` for some term; tops never go negative because
    /// `n_k >= k`.
    pub fn shift(&self, a: i64) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (top, k) in &self.terms {
            let bottom = *k as i64 + a;
            if bottom < 0 {
                return Err(Error::ShiftOutOfRange {
                    shift: a,
                    lowest: self.lowest_index().unwrap_or(0),
                });
            }
            let top = if a >= 0 {
                top + BigUint::from(a as u64)
            } else {
                top - BigUint::from(a.unsigned_abs())
            };
            total += binom(&top, bottom as usize);
        }
        Ok(total)
    }
}

impl fmt::Display for BinomialExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (top, k)) in self.terms.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            write!(f, "C({top},{k})")?;
        }
        Ok(())
    }
}

/// Largest `m >= k` with `C(m, k) <= bound`; requires `bound >= 1`, `k >= 1`.
fn largest_top(bound: &BigUint, k: usize) -> BigUint {
    if k == 1 {
        return bound.clone();
    }
    let mut lo = BigUint::from(k);
    let mut step = BigUint::one();
    let mut hi = &lo + &step;
    while binom(&hi, k) <= *bound {
        lo = hi;
        step <<= 1u32;
        hi = &lo + &step;
    }
    let one = BigUint::one();
    while &hi - &lo > one {
        let mid = (&lo + &hi) >> 1u32;
        if binom(&mid, k) <= *bound {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Greedy `i`-binomial expansion of `n`.
///
/// # Panics
/// When `i == 0` and `n > 0`.
pub fn expand(n: &BigUint, i: usize) -> BinomialExpansion {
    let mut terms = Vec::new();
    let mut rest = n.clone();
    let mut k = i;
    while !rest.is_zero() {
        assert!(
            k >= 1,
            "binomial expansion of a positive integer needs index >= 1"
        );
        let top = largest_top(&rest, k);
        rest -= binom(&top, k);
        terms.push((top, k));
        k -= 1;
    }
    BinomialExpansion { index: i, terms }
}

/// Macaulay's bound `((h_d)_(d))^{+1}_{+1}` on the entry following `h_d`.
pub fn macaulay_bound(h_d: &BigUint, d: usize) -> BigUint {
    expand(h_d, d)
        .shift(1)
        .expect("positive shifts are always defined")
}

/// `((a)_(b))^{-1}_{-1}`: the least `c` with `a <= macaulay_bound(c, b - 1)`.
///
/// In inverse-system terms, the fewest first derivatives that `a`
/// independent forms of degree `b` can have.
pub fn min_prev(a: &BigUint, b: usize) -> BigUint {
    expand(a, b)
        .shift(-1)
        .expect("lower indices are at least 1, so a shift by -1 is defined")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn pascal_row(n: usize) -> Vec<BigUint> {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        row
    }

    #[test]
    fn small_binomials() {
        assert_eq!(binom_u64(4, 3), big(4));
        assert_eq!(binom_u64(7, 6), big(7));
        assert_eq!(binom_u64(3, 5), big(0));
        assert_eq!(binom_u64(0, 0), big(1));
    }

    #[test]
    fn binomials_match_pascal_triangle() {
        let row = pascal_row(60);
        for (k, expected) in row.iter().enumerate() {
            assert_eq!(binom_u64(60, k as u64), *expected, "C(60,{k})");
        }
        assert_eq!(binom_u64(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(expand(&big(1), 5).terms(), &[(big(5), 5)]);
        assert_eq!(expand(&big(7), 2).terms(), &[(big(4), 2), (big(1), 1)]);
        assert_eq!(
            expand(&big(9), 3).terms(),
            &[(big(4), 3), (big(3), 2), (big(2), 1)]
        );
        assert!(expand(&big(0), 3).terms().is_empty());
    }

    /// Every admissible term list with tops below `limit`, evaluated.
    fn admissible_lists(i: usize, limit: u64) -> Vec<(Vec<(u64, usize)>, u64)> {
        fn rec(
            k: usize,
            max_top: u64,
            prefix: &mut Vec<(u64, usize)>,
            sum: u64,
            out: &mut Vec<(Vec<(u64, usize)>, u64)>,
        ) {
            if !prefix.is_empty() {
                out.push((prefix.clone(), sum));
            }
            if k == 0 {
                return;
            }
            for top in k as u64..max_top {
                let v = binom_u64(top, k as u64).to_u64().unwrap();
                prefix.push((top, k));
                rec(k - 1, top, prefix, sum + v, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(i, limit, &mut Vec::new(), 0, &mut out);
        out
    }

    #[test]
    fn expansions_are_the_unique_admissible_lists() {
        for (n, i) in [(7u64, 2usize), (9, 3)] {
            let hits: Vec<_> = admissible_lists(i, 12)
                .into_iter()
                .filter(|(_, v)| *v == n)
                .collect();
            assert_eq!(hits.len(), 1, "n={n} i={i}: {hits:?}");
            let got: Vec<(u64, usize)> = expand(&big(n), i)
                .terms()
                .iter()
                .map(|(t, k)| (t.to_u64().unwrap(), *k))
                .collect();
            assert_eq!(got, hits[0].0);
        }
    }

    #[test]
    fn shifts() {
        let e = expand(&big(9), 3);
        assert_eq!(e.shift(-1).unwrap(), big(6));
        assert_eq!(e.shift(1).unwrap(), big(12));
        assert_eq!(e.shift(0).unwrap(), big(9));
        assert_eq!(expand(&big(6), 2).shift(1).unwrap(), big(10));
        assert!(matches!(e.shift(-2), Err(Error::ShiftOutOfRange { .. })));
        assert_eq!(expand(&big(0), 4).shift(-9).unwrap(), big(0));
    }

    #[test]
    fn bounds() {
        assert_eq!(macaulay_bound(&big(3), 1), big(6));
        assert_eq!(macaulay_bound(&big(9), 3), big(12));
        for d in 1..10 {
            assert_eq!(macaulay_bound(&big(1), d), big(1));
        }
        assert_eq!(min_prev(&big(5), 7), big(5));
        assert_eq!(min_prev(&big(10), 5), big(9));
        for b in 2..10 {
            assert_eq!(min_prev(&big(1), b), big(1));
        }
    }

    #[test]
    fn huge_values_stay_exact() {
        let n = binom_u64(200, 100) + big(12345);
        let e = expand(&n, 100);
        assert_eq!(e.value(), n);
        assert_eq!(e.terms()[0], (big(200), 100));
    }
}
