//! Periods of strings: minimum period, bounded-period detection by suffix
//! array, maximal periodic substrings, least rotations and
//! `(D, R)`-periodic freeness.

mod rotation;
mod suffix_array;

use serde::{Deserialize, Serialize};

use std::collections::HashMap;

use crate::edit::Symbol;
use crate::error::{invalid, Result};
use crate::hashing::{window_hashes, Digest, HashFamily};

pub use rotation::smallest_rotation_offset;
pub use suffix_array::suffix_array;

/// A maximal substring `w[start..=end]` (1-based, inclusive) of length at
/// least `8c` whose minimum period `period` is at most `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicSpan {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl PeriodicSpan {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Smallest `p >= 1` with `w[i] = w[i + p]` wherever both exist.
pub fn min_period<T: PartialEq>(w: &[T]) -> Result<usize> {
    if w.is_empty() {
        return Err(invalid("minimum period of the empty string"));
    }
    Ok(min_period_unchecked(w))
}

/// KMP border: period = n - longest proper border.
pub(crate) fn min_period_unchecked<T: PartialEq>(w: &[T]) -> usize {
    let n = w.len();
    let mut fail = vec![0usize; n + 1];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    n - fail[n]
}

pub(crate) fn has_period<T: PartialEq>(w: &[T], p: usize) -> bool {
    p >= w.len() || w[p..].iter().zip(w).all(|(a, b)| a == b)
}

/// The minimum period of `a` if it is at most `c`.
///
/// Reads the suffix ranked just before the whole string in the suffix
/// array: when `a` has minimum period `p` and `|a| >= 2p` that suffix starts
/// at `p`. Requires `|a| >= 2c`.
pub fn period_at_most(a: &[Symbol], c: usize) -> Result<Option<usize>> {
    if c == 0 {
        return Err(invalid("period bound c must be at least 1"));
    }
    if a.len() < 2 * c {
        return Err(invalid(format!("string of length {} is shorter than 2c = {}", a.len(), 2 * c)));
    }
    let sa = suffix_array(a);
    let rank = sa.iter().position(|&i| i == 0).expect("suffix 0 is ranked");
    if rank == 0 {
        return Ok(None);
    }
    let p = sa[rank - 1];
    Ok((p <= c && has_period(a, p)).then_some(p))
}

/// All maximal periodic substrings of `w` with period at most `c` and
/// length at least `8c`, sorted by start.
pub fn maximal_periodic_substrings(w: &[Symbol], c: usize) -> Result<Vec<PeriodicSpan>> {
    if c == 0 {
        return Err(invalid("period bound c must be at least 1"));
    }
    let n = w.len();
    let chunk = 4 * c;
    let mut spans: Vec<PeriodicSpan> = Vec::new();
    let mut b = 0;
    while b + chunk <= n {
        if spans.last().is_some_and(|s| s.start - 1 <= b && b + chunk <= s.end) {
            b += chunk;
            continue;
        }
        if let Some(p) = period_at_most(&w[b..b + chunk], c)? {
            let (mut lo, mut hi) = (b, b + chunk);
            while lo > 0 && w[lo - 1] == w[lo - 1 + p] {
                lo -= 1;
            }
            while hi < n && w[hi] == w[hi - p] {
                hi += 1;
            }
            if hi - lo >= 8 * c {
                spans.push(PeriodicSpan { start: lo + 1, end: hi, period: p });
            }
        }
        b += chunk;
    }
    spans.sort_by_key(|s| s.start);
    Ok(spans)
}

/// True iff no substring of `w` of length at least `d` has a period at most
/// `r`. Requires `r <= d`.
pub fn is_periodic_free(w: &[Symbol], d: usize, r: usize) -> Result<bool> {
    if r > d {
        return Err(invalid(format!("freeness needs R <= D, got R = {r}, D = {d}")));
    }
    if r == 0 || w.len() < d.max(1) {
        return Ok(true);
    }
    if d >= 8 * r {
        let spans = maximal_periodic_substrings(w, r)?;
        return Ok(spans.iter().all(|s| s.len() < d));
    }
    Ok(periodic_free_scan(w, d, r))
}

/// Direct `O(n r)` check: a length-`L` substring has period `p` exactly
/// when `L - p` consecutive positions satisfy `w[k] = w[k + p]`.
pub(crate) fn periodic_free_scan(w: &[Symbol], d: usize, r: usize) -> bool {
    let n = w.len();
    if n < d {
        return true;
    }
    for p in 1..=r.min(d) {
        let need = d - p;
        if need == 0 {
            return false;
        }
        let mut run = 0;
        for k in 0..n.saturating_sub(p) {
            if w[k] == w[k + p] {
                run += 1;
                if run >= need {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

/// True iff no two equal `d`-grams of `w` start fewer than `r + 1`
/// positions apart; equivalently no substring of length `d + p` has period
/// `p` for any `p <= r`. Unlike [`is_periodic_free`] this accepts `r > d`.
pub fn distinct_grams_within(w: &[Symbol], d: usize, r: usize) -> Result<bool> {
    if d == 0 {
        return Err(invalid("gram length must be at least 1"));
    }
    if w.len() < d + 1 || r == 0 {
        return Ok(true);
    }
    let digests = window_hashes(w, d, &HashFamily::new(0x4752_414D))?;
    let mut last: HashMap<Digest, usize> = HashMap::with_capacity(digests.len());
    for (i, dig) in digests.iter().enumerate() {
        if let Some(j) = last.insert(*dig, i) {
            if w[j..j + d] != w[i..i + d] {
                // digest collision: settle it exactly
                return Ok(grams_scan(w, d, r));
            }
            if i - j <= r {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn grams_scan(w: &[Symbol], d: usize, r: usize) -> bool {
    (1..=r).all(|p| {
        let mut run = 0;
        for k in 0..w.len().saturating_sub(p) {
            run = if w[k] == w[k + p] { run + 1 } else { 0 };
            if run >= d {
                return false;
            }
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::syms;
    use crate::hashing::HashFamily;

    fn rand_str(seed: u64, n: usize, alpha: u64) -> Vec<Symbol> {
        let s = HashFamily::new(seed).stream(0);
        (0..n as u64).map(|i| Symbol(s.below(i, alpha) as u32)).collect()
    }

    #[test]
    fn min_period_examples() {
        assert_eq!(min_period(&syms("aaaa")).unwrap(), 1);
        assert_eq!(min_period(&syms("abab")).unwrap(), 2);
        assert_eq!(min_period(&syms("abc")).unwrap(), 3);
        assert_eq!(min_period(&syms("abaab")).unwrap(), 3);
        assert!(min_period::<Symbol>(&[]).is_err());
    }

    #[test]
    fn period_at_most_examples() {
        assert_eq!(period_at_most(&syms("abababab"), 2).unwrap(), Some(2));
        assert_eq!(period_at_most(&syms("abcdabce"), 2).unwrap(), None);
        assert_eq!(period_at_most(&syms("aaaaaaaa"), 2).unwrap(), Some(1));
        assert_eq!(period_at_most(&syms("aaaa"), 2).unwrap(), Some(1));
        assert!(period_at_most(&syms("aaa"), 2).is_err());
    }

    #[test]
    fn period_at_most_matches_brute_force() {
        for seed in 0..400 {
            let c = 1 + (seed as usize % 8);
            for len in [2 * c, 3 * c + 1, 4 * c] {
                let a = rand_str(seed, len, 2);
                let brute = (1..=c).find(|&p| has_period(&a, p));
                assert_eq!(period_at_most(&a, c).unwrap(), brute, "{a:?} c={c}");
            }
        }
    }

    #[test]
    fn maximal_spans_examples() {
        let w = syms(&"ab".repeat(8));
        assert_eq!(
            maximal_periodic_substrings(&w, 2).unwrap(),
            vec![PeriodicSpan { start: 1, end: 16, period: 2 }]
        );
        assert!(maximal_periodic_substrings(&syms("abababa"), 1).unwrap().is_empty());
        assert!(maximal_periodic_substrings(&rand_str(1, 400, 64), 2).unwrap().is_empty());
    }

    #[test]
    fn freeness_examples() {
        let w = syms(&"ab".repeat(10));
        assert!(!is_periodic_free(&w, 8, 2).unwrap());
        assert!(is_periodic_free(&syms("abab"), 8, 2).unwrap());
        assert!(is_periodic_free(&w, 2, 3).is_err());
    }

    #[test]
    fn freeness_routes_agree() {
        for seed in 0..300 {
            let alpha = [2u64, 3, 64][seed as usize % 3];
            let w = rand_str(seed, 150, alpha);
            for r in 1..=3 {
                for d in [8 * r, 8 * r + 3, 12 * r] {
                    assert_eq!(
                        is_periodic_free(&w, d, r).unwrap(),
                        periodic_free_scan(&w, d, r),
                        "seed {seed} d {d} r {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn gram_distance_check() {
        assert!(!distinct_grams_within(&syms("abcabc"), 3, 3).unwrap());
        assert!(distinct_grams_within(&syms("abcabc"), 3, 2).unwrap());
        assert!(distinct_grams_within(&syms("abcdef"), 2, 10).unwrap());
        for seed in 0..200 {
            let w = rand_str(seed, 120, 3);
            for (d, r) in [(3, 2), (5, 8), (8, 30)] {
                assert_eq!(distinct_grams_within(&w, d, r).unwrap(), grams_scan(&w, d, r));
            }
        }
    }
}
