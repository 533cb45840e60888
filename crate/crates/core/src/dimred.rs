//! Length-reducing maps that cut a string into blocks of about `c` letters.
//!
//! Block boundaries (markers) are chosen from local content only: a letter
//! whose hash is the unique minimum of its neighbourhood, or an anchor of a
//! long periodic stretch at its least rotation. An edit therefore moves only
//! nearby markers, and block-level edit distance tracks string distance
//! scaled down by about `c`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::edit::{levenshtein, Symbol};
use crate::error::{invalid, Error, Result};
use crate::hashing::{sliding_unique_min, window_hashes, HashFamily};
use crate::periodic::{maximal_periodic_substrings, smallest_rotation_offset};

const PERM_STREAM: u64 = 0x5045_524D;
const GRAM_LABEL: u64 = 0x4752_414D;
const CONTENT_STREAM: u64 = 0x434F_4E54;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Permutation,
    General,
}

/// A string cut into consecutive nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockString {
    source: Vec<Symbol>,
    /// 1-based block starts, strictly increasing, first is 1.
    starts: Vec<usize>,
    c: usize,
    seed: u64,
    kind: BlockKind,
}

impl BlockString {
    pub fn c(&self) -> usize {
        self.c
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn source(&self) -> &[Symbol] {
        &self.source
    }

    /// 1-based source offset of each block.
    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// 0-based half-open source range of each block.
    pub fn ranges(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        let n = self.source.len();
        self.starts
            .iter()
            .enumerate()
            .map(move |(i, &s)| s - 1..self.starts.get(i + 1).map_or(n, |&e| e - 1))
    }

    pub fn blocks(&self) -> impl Iterator<Item = &[Symbol]> + '_ {
        self.ranges().map(|r| &self.source[r])
    }

    /// Content digest of each block; equal blocks share a digest.
    pub fn digests(&self) -> Vec<u64> {
        self.blocks().map(block_digest).collect()
    }
}

/// Content digest used for block files.
pub fn block_digest(block: &[Symbol]) -> u64 {
    HashFamily::new(0).stream(CONTENT_STREAM).hash_symbols(block)
}

fn check_c(c: usize) -> Result<()> {
    if c < 2 || !c.is_multiple_of(2) {
        return Err(invalid(format!("c must be a positive even integer at least 2, got {c}")));
    }
    Ok(())
}

/// Splits every block `[s, e)` into pieces of exactly `c` letters plus a
/// shorter remainder. `starts` are 1-based and sorted.
fn subdivide(starts: &[usize], n: usize, c: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(starts.len() + n / c);
    for (i, &s) in starts.iter().enumerate() {
        let e = starts.get(i + 1).copied().unwrap_or(n + 1);
        out.extend((s..e).step_by(c));
    }
    out
}

/// Block map for permutations: markers at letters whose hash is the unique
/// minimum within distance `c`, then blocks longer than `c` are cut every
/// `c` letters.
pub fn dimred_perm(w: &[Symbol], c: usize, seed: u64) -> Result<BlockString> {
    check_c(c)?;
    let mut seen = HashSet::with_capacity(w.len());
    for s in w {
        if !seen.insert(*s) {
            return Err(Error::NotPermutation { symbol: s.0 });
        }
    }
    let n = w.len();
    let h = HashFamily::new(seed).stream(PERM_STREAM);
    let hashes: Vec<u64> = w.iter().map(|&s| h.hash_symbol(s)).collect();
    let mut markers = vec![1];
    markers.extend(sliding_unique_min(&hashes, c).into_iter().filter(|&i| i > 1));
    let starts = if n == 0 { Vec::new() } else { subdivide(&markers, n, c) };
    Ok(BlockString { source: w.to_vec(), starts, c, seed, kind: BlockKind::Permutation })
}

/// Block map for general strings. Maximal periodic stretches are anchored at
/// their least rotation every `s` letters (`s` the least multiple of the
/// period that is at least `c`); other regions use unique minima of
/// `8c`-gram digests within distance `c/2`, then chop into `c`-letter pieces.
pub fn dimred_general(w: &[Symbol], c: usize, seed: u64) -> Result<BlockString> {
    check_c(c)?;
    let n = w.len();
    if n == 0 {
        return Ok(BlockString { source: Vec::new(), starts: Vec::new(), c, seed, kind: BlockKind::General });
    }
    let spans = maximal_periodic_substrings(w, c)?;
    let mut markers = BTreeSet::new();
    markers.insert(1);

    let mut covered = vec![false; n + 2];
    for span in &spans {
        let p = span.period;
        let s = p * c.div_ceil(p);
        let t = smallest_rotation_offset(&w[span.start - 1..span.start - 1 + p])?;
        markers.extend((span.start + t - 1..=span.end).step_by(s));
        if span.end < n {
            markers.insert(span.end + 1);
        }
        covered[span.start..=span.end].iter_mut().for_each(|x| *x = true);
    }

    // maximal runs of positions outside every periodic span
    let mut regions: Vec<(usize, usize)> = Vec::new();
    let mut i = 1;
    while i <= n {
        if covered[i] {
            i += 1;
            continue;
        }
        let lo = i;
        while i <= n && !covered[i] {
            i += 1;
        }
        regions.push((lo, i - 1));
    }

    let gram = 8 * c;
    let fam = HashFamily::new(seed).child(GRAM_LABEL);
    for &(lo, hi) in &regions {
        let d = hi + 1 - lo;
        if d < gram {
            continue;
        }
        let digests = window_hashes(&w[lo - 1..hi], gram, &fam)?;
        markers.extend(sliding_unique_min(&digests, c / 2).into_iter().map(|j| lo + j - 1));
    }

    // sub-markers every c letters inside non-periodic regions
    let sorted: Vec<usize> = markers.iter().copied().collect();
    let mut extra = Vec::new();
    let mut r = 0;
    for (k, &m) in sorted.iter().enumerate() {
        while r < regions.len() && regions[r].1 < m {
            r += 1;
        }
        let Some(&(lo, hi)) = regions.get(r) else { break };
        if m < lo {
            continue;
        }
        let next = sorted.get(k + 1).copied().unwrap_or(n + 1);
        extra.extend((m + c..next.min(hi + 1)).step_by(c));
    }
    markers.extend(extra);
    let starts = markers.into_iter().collect();
    Ok(BlockString { source: w.to_vec(), starts, c, seed, kind: BlockKind::General })
}

/// Edit distance between block sequences, blocks compared by content.
pub fn block_distance(a: &BlockString, b: &BlockString) -> Result<usize> {
    if a.c != b.c {
        return Err(invalid(format!("block strings use different c: {} vs {}", a.c, b.c)));
    }
    let mut ids: HashMap<&[Symbol], u32> = HashMap::new();
    let x = intern(&mut ids, a);
    let y = intern(&mut ids, b);
    Ok(levenshtein(&x, &y))
}

fn intern<'a>(ids: &mut HashMap<&'a [Symbol], u32>, s: &'a BlockString) -> Vec<u32> {
    s.blocks()
        .map(|block| {
            let next = ids.len() as u32;
            *ids.entry(block).or_insert(next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::syms;

    fn rand_str(seed: u64, n: usize, alpha: u64) -> Vec<Symbol> {
        let s = HashFamily::new(seed).stream(0);
        (0..n as u64).map(|i| Symbol(s.below(i, alpha) as u32)).collect()
    }

    fn concat(b: &BlockString) -> Vec<Symbol> {
        b.blocks().flatten().copied().collect()
    }

    #[test]
    fn perm_short_inputs() {
        let w: Vec<Symbol> = (0..8).map(Symbol).collect();
        let b = dimred_perm(&w, 4, 1).unwrap();
        assert_eq!(b.ranges().map(|r| r.len()).collect::<Vec<_>>(), vec![4, 4]);
        let b = dimred_perm(&w[..4], 4, 1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(dimred_perm(&w, 3, 1).is_err());
        assert!(matches!(dimred_perm(&syms("aa"), 2, 1), Err(Error::NotPermutation { .. })));
    }

    #[test]
    fn general_periodic_example() {
        let w = syms(&"ab".repeat(8));
        let b = dimred_general(&w, 2, 5).unwrap();
        assert_eq!(b.starts(), &[1, 3, 5, 7, 9, 11, 13, 15]);
        assert!(b.blocks().all(|x| x == syms("ab")));
    }

    #[test]
    fn general_without_markers() {
        let w = rand_str(3, 8, 1 << 20);
        let b = dimred_general(&w, 4, 1).unwrap();
        assert_eq!(b.ranges().map(|r| r.len()).collect::<Vec<_>>(), vec![4, 4]);
        assert!(dimred_general(&w, 5, 1).is_err());
        assert!(dimred_general(&[], 4, 1).unwrap().is_empty());
    }

    #[test]
    fn reconstruction_and_block_sizes() {
        for seed in 0..200u64 {
            let c = [2, 4, 8][seed as usize % 3];
            let alpha = [2u64, 3, 64][(seed / 3) as usize % 3];
            let w = rand_str(seed, 50 + seed as usize * 3, alpha);
            let b = dimred_general(&w, c, seed).unwrap();
            assert_eq!(concat(&b), w);
            assert!(b.ranges().all(|r| !r.is_empty() && r.len() < 2 * c));
            assert!(b.len() <= 12 * w.len().div_ceil(c) + 2);
        }
    }

    #[test]
    fn block_distance_basics() {
        let w = syms("abcdefgh");
        let a = dimred_perm(&w, 2, 1).unwrap();
        assert_eq!(block_distance(&a, &a).unwrap(), 0);
        let b = dimred_perm(&w, 4, 1).unwrap();
        assert!(block_distance(&a, &b).is_err());
        let mk = |starts: Vec<usize>, s: &str| BlockString {
            source: syms(s),
            starts,
            c: 2,
            seed: 0,
            kind: BlockKind::General,
        };
        assert_eq!(block_distance(&mk(vec![1, 3], "abcd"), &mk(vec![1], "ab")).unwrap(), 1);
    }
}
