//! Reference implementations shared by the integration tests.
#![allow(dead_code)]

use edkit::corpus::rng_for;
use edkit::Symbol;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_for(seed, 0x7e57)
}

/// Full Wagner-Fischer table.
pub fn ed_oracle<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    let mut d = vec![vec![0usize; y.len() + 1]; x.len() + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=y.len() {
        d[0][j] = j;
    }
    for i in 1..=x.len() {
        for j in 1..=y.len() {
            let sub = d[i - 1][j - 1] + usize::from(x[i - 1] != y[j - 1]);
            d[i][j] = sub.min(d[i - 1][j] + 1).min(d[i][j - 1] + 1);
        }
    }
    d[x.len()][y.len()]
}

/// Distance if at most `k`, by a diagonal band; for long strings with few
/// edits where the full table is too large.
pub fn ed_within(x: &[Symbol], y: &[Symbol], k: usize) -> Option<usize> {
    if x.len().abs_diff(y.len()) > k {
        return None;
    }
    let inf = usize::MAX / 2;
    let width = 2 * k + 1;
    // row i holds columns i-k ..= i+k
    let mut prev = vec![inf; width];
    for (o, cell) in prev.iter_mut().enumerate() {
        if o >= k && o - k <= y.len() {
            *cell = o - k;
        }
    }
    for i in 1..=x.len() {
        let mut cur = vec![inf; width];
        for o in 0..width {
            let j = (i + o) as isize - k as isize;
            if j < 0 || j as usize > y.len() {
                continue;
            }
            let j = j as usize;
            let mut best = inf;
            if j == 0 {
                best = i;
            } else {
                best = best.min(prev[o] + usize::from(x[i - 1] != y[j - 1]));
                if o > 0 {
                    best = best.min(cur[o - 1] + 1);
                }
            }
            if o + 1 < width {
                best = best.min(prev[o + 1] + 1);
            }
            cur[o] = best;
        }
        prev = cur;
    }
    let o = y.len() + k - x.len();
    (prev[o] <= k).then_some(prev[o])
}

pub fn rand_str<R: Rng>(rng: &mut R, n: usize, alphabet: u32) -> Vec<Symbol> {
    (0..n).map(|_| Symbol(rng.random_range(0..alphabet))).collect()
}

pub fn rand_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<Symbol> {
    let mut v: Vec<Symbol> = (0..n as u32).map(Symbol).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
    v
}

/// `k` random insertions, deletions or substitutions.
pub fn mutate<R: Rng>(rng: &mut R, x: &[Symbol], k: usize, alphabet: u32) -> Vec<Symbol> {
    let mut y = x.to_vec();
    for _ in 0..k {
        match rng.random_range(0..3) {
            0 => {
                let p = rng.random_range(0..=y.len());
                y.insert(p, Symbol(rng.random_range(0..alphabet)));
            }
            1 if !y.is_empty() => {
                y.remove(rng.random_range(0..y.len()));
            }
            _ if !y.is_empty() => {
                let p = rng.random_range(0..y.len());
                y[p] = Symbol(rng.random_range(0..alphabet));
            }
            _ => {}
        }
    }
    y
}

/// Permutation edits: deletions and insertions of fresh letters from `fresh` on.
pub fn mutate_perm<R: Rng>(rng: &mut R, x: &[Symbol], k: usize, mut fresh: u32) -> Vec<Symbol> {
    let mut y = x.to_vec();
    for _ in 0..k {
        if y.is_empty() || rng.random_bool(0.5) {
            y.insert(rng.random_range(0..=y.len()), Symbol(fresh));
            fresh += 1;
        } else {
            y.remove(rng.random_range(0..y.len()));
        }
    }
    y
}

/// Whether `w` has period `p` by definition.
pub fn has_period(w: &[Symbol], p: usize) -> bool {
    p >= 1 && (0..w.len().saturating_sub(p)).all(|i| w[i] == w[i + p])
}

pub fn min_period_upto(w: &[Symbol], c: usize) -> Option<usize> {
    (1..=c.min(w.len())).find(|&p| has_period(w, p))
}

/// Every `(start, end, period)` (1-based, inclusive) of a substring of
/// length at least `8c` with period at most `c` that cannot be extended on
/// either side without losing that property.
pub fn maximal_spans_oracle(w: &[Symbol], c: usize) -> Vec<(usize, usize, usize)> {
    let n = w.len();
    let ok = |i: usize, j: usize| min_period_upto(&w[i..j], c).is_some();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 8 * c..=n {
            if !ok(i, j) {
                continue;
            }
            let right = j == n || !ok(i, j + 1);
            let left = i == 0 || !ok(i - 1, j);
            if right && left {
                out.push((i + 1, j, min_period_upto(&w[i..j], c).unwrap()));
            }
        }
    }
    out
}

/// Random concatenation of periodic runs and noise, cut to length `n`.
pub fn mixed<R: Rng>(rng: &mut R, n: usize, c: usize, alphabet: u32) -> Vec<Symbol> {
    let mut w = Vec::new();
    while w.len() < n {
        if rng.random_bool(0.5) {
            let p = rng.random_range(1..=c);
            let unit = rand_str(rng, p, alphabet);
            let len = rng.random_range(8 * c..=30 * c);
            w.extend(unit.iter().cycle().take(len));
        } else {
            let len = rng.random_range(1..=5 * c);
            w.extend(rand_str(rng, len, alphabet));
        }
    }
    w.truncate(n);
    w
}
