//! Randomized alignment embedding of permutations into sparse Hamming space.
//!
//! The letter of least hash near the middle of the string is written to the
//! centre of a `2^m - 1` array and both sides recurse into the two halves of
//! the array. Equal permutations pick equal pivots, so Hamming differences
//! between two embeddings decode into an edit script.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::edit::{EditOp, EditScript, Symbol};
use crate::error::{invalid, Error, Result};
use crate::hashing::{HashFamily, RmqIndex};

const PIVOT_STREAM: u64 = 0x554C_414D;

/// Largest supported `m`; dimensions are `2^m - 1 < 2^63`.
pub const MAX_LEVELS: u32 = 63;

/// Nonzero entries of a `2^m - 1` array, as `(index, symbol)` pairs with
/// 1-based indices in increasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseEmbedding {
    pub dim: u64,
    pub eps: f64,
    pub m: u32,
    pub seed: u64,
    pub runs: Vec<(u64, Symbol)>,
}

impl SparseEmbedding {
    pub fn nonzeros(&self) -> usize {
        self.runs.len()
    }

    /// Nonzero entries in index order; spells the embedded permutation.
    pub fn readout(&self) -> Vec<Symbol> {
        self.runs.iter().map(|&(_, s)| s).collect()
    }

    fn same_params(&self, other: &SparseEmbedding) -> bool {
        self.m == other.m && self.seed == other.seed && self.eps.to_bits() == other.eps.to_bits()
    }
}

/// Real-valued lower bound `log_{1/2+eps}(1/n) + 1` on `m`.
pub fn required_levels(n: usize, eps: f64) -> f64 {
    if n <= 1 {
        return 1.0;
    }
    (1.0 / n as f64).ln() / (0.5 + eps).ln() + 1.0
}

/// Default `m = ceil(log_{1/2+eps}(1/n) + 1)`.
pub fn default_levels(n: usize, eps: f64) -> Result<u32> {
    check_eps(eps)?;
    let need = required_levels(n, eps);
    let r = need.round();
    let m = if (need - r).abs() < 1e-9 { r } else { need.ceil() };
    if m > f64::from(MAX_LEVELS) {
        return Err(invalid(format!("input of length {n} needs {m} levels, more than {MAX_LEVELS}")));
    }
    Ok(m as u32)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 0.25 {
        Ok(())
    } else {
        Err(invalid(format!("eps must lie in (0, 1/4], got {eps}")))
    }
}

/// Embeds permutation `w`. With `m = None` the default level count is used.
pub fn ulam_embed(w: &[Symbol], eps: f64, seed: u64, m: Option<u32>) -> Result<SparseEmbedding> {
    check_eps(eps)?;
    let mut seen = HashSet::with_capacity(w.len());
    for s in w {
        if !seen.insert(*s) {
            return Err(Error::NotPermutation { symbol: s.0 });
        }
    }
    let n = w.len();
    let m = match m {
        None => default_levels(n, eps)?,
        Some(m) => {
            let need = required_levels(n, eps);
            if m > MAX_LEVELS || f64::from(m) + 1e-9 < need {
                return Err(Error::InsufficientDimension { needed: need, got: m });
            }
            m
        }
    };
    let h = HashFamily::new(seed).stream(PIVOT_STREAM);
    let hashes: Vec<u64> = w.iter().map(|&s| h.hash_symbol(s)).collect();
    let rmq = RmqIndex::build(&hashes);

    let mut runs = Vec::with_capacity(n);
    // (start, len, region base, levels); regions hold 2^levels - 1 cells
    let mut stack = vec![(0usize, n, 1u64, m)];
    while let Some((start, len, base, k)) = stack.pop() {
        if len == 0 {
            continue;
        }
        if k == 0 {
            return Err(Error::InsufficientDimension { needed: required_levels(n, eps), got: m });
        }
        let (lo, hi) = pivot_range(len, eps);
        let i = rmq.argmin(start + lo - 1, start + hi - 1) - start + 1;
        let half = 1u64 << (k - 1);
        runs.push((base + half - 1, w[start + i - 1]));
        // right first so that the left side pops next
        stack.push((start + i, len - i, base + half, k - 1));
        stack.push((start, i - 1, base, k - 1));
    }
    runs.sort_unstable_by_key(|&(idx, _)| idx);
    Ok(SparseEmbedding { dim: (1u64 << m) - 1, eps, m, seed, runs })
}

/// 1-based inclusive pivot window `[ceil(n/2 - eps n), floor(n/2 + eps n)]`,
/// widened to contain `ceil(n/2)` and clamped to `[1, n]`.
fn pivot_range(n: usize, eps: f64) -> (usize, usize) {
    let nf = n as f64;
    let lo = (nf * (0.5 - eps) - 1e-9).ceil().max(1.0) as usize;
    let hi = ((nf * (0.5 + eps) + 1e-9).floor() as usize).min(n);
    let mid = n.div_ceil(2);
    (lo.min(mid), hi.max(mid))
}

/// Number of indices where the two arrays differ.
pub fn hamming(a: &SparseEmbedding, b: &SparseEmbedding) -> Result<usize> {
    if a.dim != b.dim {
        return Err(invalid(format!("dimensions differ: {} vs {}", a.dim, b.dim)));
    }
    if !a.same_params(b) {
        return Err(invalid("embeddings were built with different parameters"));
    }
    let mut count = 0;
    merge(&a.runs, &b.runs, |x, y| {
        if x != y {
            count += 1;
        }
    });
    Ok(count)
}

/// Edit script from the permutation embedded in `a` to the one embedded in
/// `b`, one op per differing index.
pub fn decode_alignment(a: &SparseEmbedding, b: &SparseEmbedding) -> Result<EditScript> {
    if a.dim != b.dim {
        return Err(invalid(format!("dimensions differ: {} vs {}", a.dim, b.dim)));
    }
    if !a.same_params(b) {
        return Err(invalid("embeddings were built with different parameters"));
    }
    let mut ops = Vec::new();
    // letters before `done` already match the target
    let mut done = 0usize;
    merge(&a.runs, &b.runs, |x, y| match (x, y) {
        (Some(p), Some(q)) if p == q => done += 1,
        (Some(_), None) => ops.push(EditOp::Delete { pos: done + 1 }),
        (None, Some(q)) => {
            ops.push(EditOp::Insert { pos: done + 1, symbol: q });
            done += 1;
        }
        (Some(_), Some(q)) => {
            ops.push(EditOp::Substitute { pos: done + 1, symbol: q });
            done += 1;
        }
        (None, None) => {}
    });
    Ok(EditScript::new(ops))
}

/// Visits every index present in either list with both entries.
fn merge(a: &[(u64, Symbol)], b: &[(u64, Symbol)], mut f: impl FnMut(Option<Symbol>, Option<Symbol>)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ia, sa)), Some(&(ib, sb))) if ia == ib => {
                f(Some(sa), Some(sb));
                i += 1;
                j += 1;
            }
            (Some(&(ia, sa)), Some(&(ib, _))) if ia < ib => {
                f(Some(sa), None);
                i += 1;
            }
            (Some(&(_, sa)), None) => {
                f(Some(sa), None);
                i += 1;
            }
            (_, Some(&(_, sb))) => {
                f(None, Some(sb));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::{apply_script, syms};

    #[test]
    fn single_letter() {
        let e = ulam_embed(&syms("a"), 0.25, 1, Some(1)).unwrap();
        assert_eq!(e.dim, 1);
        assert_eq!(e.runs, vec![(1, Symbol('a' as u32))]);
    }

    #[test]
    fn level_count_for_eight_letters() {
        assert_eq!(default_levels(8, 0.25).unwrap(), 9);
        let e = ulam_embed(&syms("abcdefgh"), 0.25, 3, None).unwrap();
        assert_eq!(e.dim, 511);
        assert_eq!(e.nonzeros(), 8);
        assert_eq!(e.readout(), syms("abcdefgh"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(ulam_embed(&syms("aba"), 0.25, 0, None), Err(Error::NotPermutation { .. })));
        assert!(matches!(
            ulam_embed(&syms("abcdefgh"), 0.25, 0, Some(4)),
            Err(Error::InsufficientDimension { .. })
        ));
        assert!(ulam_embed(&syms("ab"), 0.3, 0, None).is_err());
        assert!(ulam_embed(&syms("ab"), 0.0, 0, None).is_err());
    }

    #[test]
    fn pivot_window() {
        assert_eq!(pivot_range(1, 0.25), (1, 1));
        assert_eq!(pivot_range(2, 0.25), (1, 1));
        assert_eq!(pivot_range(8, 0.25), (2, 6));
        assert_eq!(pivot_range(8, 0.01), (4, 4));
    }

    #[test]
    fn deleting_the_letter_after_the_pivot() {
        let m = default_levels(2, 0.25).unwrap();
        let a = ulam_embed(&syms("ba"), 0.25, 9, Some(m)).unwrap();
        let b = ulam_embed(&syms("b"), 0.25, 9, Some(m)).unwrap();
        assert_eq!(hamming(&a, &b).unwrap(), 1);
        let s = decode_alignment(&a, &b).unwrap();
        assert_eq!(s.ops, vec![EditOp::Delete { pos: 2 }]);
        assert_eq!(apply_script(&syms("ba"), &s).unwrap(), syms("b"));
    }

    #[test]
    fn hamming_basics() {
        let a = ulam_embed(&syms("abc"), 0.25, 1, Some(5)).unwrap();
        assert_eq!(hamming(&a, &a).unwrap(), 0);
        assert!(decode_alignment(&a, &a).unwrap().is_empty());
        let z = SparseEmbedding { runs: vec![], ..a.clone() };
        let one = SparseEmbedding { runs: vec![(3, Symbol(1))], ..a.clone() };
        assert_eq!(hamming(&one, &z).unwrap(), 1);
        let other = ulam_embed(&syms("abc"), 0.25, 1, Some(6)).unwrap();
        assert!(hamming(&a, &other).is_err());
    }

    #[test]
    fn json_shape() {
        let e = ulam_embed(&syms("ab"), 0.25, 7, None).unwrap();
        let v: serde_json::Value = serde_json::to_value(&e).unwrap();
        assert_eq!(v["dim"], 15);
        assert_eq!(v["runs"].as_array().unwrap().len(), 2);
        assert_eq!(v["runs"][0].as_array().unwrap().len(), 2);
        let back: SparseEmbedding = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }
}
