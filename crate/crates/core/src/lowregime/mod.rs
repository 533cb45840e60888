//! Embedding of low-distance strings by windowed min-hash partitioning,
//! and a one-bit sketch with bounded expected distortion.
//!
//! A string is cut into parts of length between `W/2` and `W`: each cut is
//! placed at the least-hash `W''`-gram inside a randomly chosen `W'`-wide
//! sub-window of the previous window's second half. With shared randomness
//! two nearby strings get matching cuts, so an inner embedding applied part
//! by part preserves their distance.

mod bits;
mod inner;
mod sketch;

use serde::Serialize;

pub use bits::Bits;
pub use inner::{naive_inner, InnerEmbedding, NaiveInner};
pub use sketch::{expectation_transform, ExpectationTransform};

use crate::edit::{banded, edit_distance_adaptive, Banded, Partition, Symbol};
use crate::error::{invalid, Error, Result};
use crate::hashing::{HashFamily, WindowHasher};

/// Window sizes derived from the distance budget `k`, freeness length `d`
/// and confidence `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegimeConfig {
    pub k: usize,
    pub d: usize,
    pub c: usize,
    /// `W''`
    pub w2: usize,
    /// `W'`
    pub w1: usize,
    /// `W`
    pub w: usize,
    /// `32 K C`
    pub r: usize,
}

impl RegimeConfig {
    /// Number of `W'`-sub-windows in half a window.
    pub fn sub_windows(&self) -> usize {
        self.w / (2 * self.w1)
    }

    /// `1 - 16K (W'/W + 1/(W' - W'' + 1))`.
    pub fn preservation_bound(&self) -> f64 {
        let k = self.k as f64;
        1.0 - 16.0 * k * (self.w1 as f64 / self.w as f64 + 1.0 / (self.w1 - self.w2 + 1) as f64)
    }
}

/// `W'' = D`, `W' = D + 32KC`, `W = 32KC W'`, `R = 32KC`.
pub fn choose_params(k: usize, d: usize, c: usize) -> Result<RegimeConfig> {
    if k == 0 || d == 0 || c == 0 {
        return Err(invalid(format!("K, D, C must be positive, got {k}, {d}, {c}")));
    }
    let r = 32 * k * c;
    let w2 = d;
    let w1 = w2 + r;
    Ok(RegimeConfig { k, d, c, w2, w1, w: w1 * r, r })
}

/// Shared randomness for strings of length up to `capacity`.
#[derive(Clone, Debug)]
pub struct RegimeRandomness {
    seed: u64,
    capacity: usize,
    /// 1-based sub-window choice per window.
    choices: Vec<usize>,
    hashers: Vec<WindowHasher>,
}

const CHOICE_STREAM: u64 = 0x5355_4257;

impl RegimeRandomness {
    pub fn new(seed: u64, cfg: &RegimeConfig, capacity: usize) -> Result<Self> {
        let windows = (2 * capacity).div_ceil(cfg.w).max(1);
        let fam = HashFamily::new(seed);
        let pick = fam.stream(CHOICE_STREAM);
        let choices = (0..windows as u64).map(|t| 1 + pick.below(t, cfg.sub_windows() as u64) as usize).collect();
        let hashers = (0..windows as u64)
            .map(|t| WindowHasher::new(&fam.child(t), cfg.w2))
            .collect::<Result<_>>()?;
        Ok(RegimeRandomness { seed, capacity, choices, hashers })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Window count `ceil(2n / W)`.
    pub fn windows(&self) -> usize {
        self.choices.len()
    }

    pub fn choices(&self) -> &[usize] {
        &self.choices
    }
}

/// Partition of `w` into parts starting at consecutive window starts.
pub fn window_partition(w: &[Symbol], cfg: &RegimeConfig, rnd: &RegimeRandomness) -> Result<Partition> {
    if w.len() > rnd.capacity {
        return Err(Error::Capacity { len: w.len(), max: rnd.capacity });
    }
    let mut ext = Vec::with_capacity(w.len() + 2 * cfg.w);
    ext.extend_from_slice(w);
    ext.extend((1..=2 * cfg.w as u32).map(Symbol::dummy));

    let mut cuts = vec![0];
    let mut start = 0;
    for t in 0..rnd.windows() {
        let sub = start + cfg.w / 2 + (rnd.choices[t] - 1) * cfg.w1;
        let digests = rnd.hashers[t].hash_all(&ext[sub..sub + cfg.w1])?;
        let best = (0..digests.len()).min_by_key(|&i| (digests[i], i)).unwrap();
        start = sub + best;
        if start >= w.len() {
            break;
        }
        cuts.push(start);
    }
    cuts.push(w.len());
    Partition::new(cuts, w.len())
}

/// Concatenated `psi` images of the parts, zero-padded to
/// `psi.output_len() * windows`.
pub fn primary_embed<E: InnerEmbedding + ?Sized>(
    w: &[Symbol],
    cfg: &RegimeConfig,
    rnd: &RegimeRandomness,
    psi: &E,
) -> Result<Bits> {
    let p = window_partition(w, cfg, rnd)?;
    let mut out = Bits::new();
    for part in p.parts(w) {
        if part.len() > psi.max_input_len() {
            return Err(Error::Capacity { len: part.len(), max: psi.max_input_len() });
        }
        out.extend(&psi.embed(part)?);
    }
    out.pad_to(psi.output_len() * rnd.windows());
    Ok(out)
}

/// Whether the shared-randomness partitions of `x` and `y` split an optimal
/// alignment, i.e. the part-wise distances sum to the string distance.
pub fn is_edit_preserving(x: &[Symbol], y: &[Symbol], cfg: &RegimeConfig, rnd: &RegimeRandomness) -> Result<bool> {
    let p = window_partition(x, cfg, rnd)?;
    let q = window_partition(y, cfg, rnd)?;
    let parts = p.num_parts().max(q.num_parts());
    let (p, q) = (p.padded_to(parts), q.padded_to(parts));
    let d = edit_distance_adaptive(x, y)?;
    let mut budget = d;
    for (a, b) in p.parts(x).zip(q.parts(y)) {
        match banded(a, b, budget) {
            Banded::Within(e) => budget -= e,
            Banded::Exceeds => return Ok(false),
        }
    }
    Ok(budget == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::{edit_distance, partition_distance};

    fn rand_str(seed: u64, n: usize, alpha: u64) -> Vec<Symbol> {
        let s = HashFamily::new(seed).stream(0);
        (0..n as u64).map(|i| Symbol(s.below(i, alpha) as u32)).collect()
    }

    #[test]
    fn parameter_formulas() {
        let c = choose_params(1, 8, 1).unwrap();
        assert_eq!((c.w2, c.w1, c.w, c.r), (8, 40, 1280, 32));
        let c = choose_params(2, 16, 4).unwrap();
        assert_eq!((c.w2, c.w1, c.w, c.r), (16, 272, 69632, 256));
        let c = choose_params(1, 1, 1).unwrap();
        assert_eq!((c.w2, c.w1, c.w, c.r), (1, 33, 1056, 32));
        assert!(choose_params(0, 1, 1).is_err());
    }

    #[test]
    fn empty_string_has_one_empty_part() {
        let cfg = choose_params(1, 8, 1).unwrap();
        let rnd = RegimeRandomness::new(1, &cfg, 100).unwrap();
        assert_eq!(window_partition(&[], &cfg, &rnd).unwrap().cuts(), &[0, 0]);
    }

    #[test]
    fn part_lengths_and_determinism() {
        let cfg = choose_params(1, 4, 1).unwrap();
        for seed in 0..20 {
            let n = 5000 + 97 * seed as usize;
            let rnd = RegimeRandomness::new(seed, &cfg, n).unwrap();
            let w = rand_str(seed, n, 16);
            let p = window_partition(&w, &cfg, &rnd).unwrap();
            assert_eq!(p, window_partition(&w, &cfg, &rnd).unwrap());
            let sizes: Vec<usize> = p.ranges().map(|r| r.len()).collect();
            for &s in &sizes[..sizes.len() - 1] {
                assert!(s >= cfg.w / 2 && s < cfg.w, "part size {s}");
            }
            assert!(p.num_parts() <= rnd.windows());
        }
    }

    #[test]
    fn embedding_length_is_fixed() {
        let cfg = choose_params(1, 4, 1).unwrap();
        let rnd = RegimeRandomness::new(3, &cfg, 3000).unwrap();
        let psi = naive_inner(cfg.w).unwrap();
        for n in [0, 1, 700, 3000] {
            let bits = primary_embed(&rand_str(n as u64, n, 4), &cfg, &rnd, &psi).unwrap();
            assert_eq!(bits.len(), cfg.w * rnd.windows());
        }
        let small = naive_inner(10).unwrap();
        assert!(matches!(
            primary_embed(&rand_str(1, 3000, 4), &cfg, &rnd, &small),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn preservation_is_consistent_with_partition_distance() {
        let cfg = choose_params(1, 4, 1).unwrap();
        for seed in 0..10 {
            let x = rand_str(seed, 3000, 8);
            let mut y = x.clone();
            y.remove(1000 + seed as usize * 100);
            let rnd = RegimeRandomness::new(seed, &cfg, 3000).unwrap();
            assert!(is_edit_preserving(&x, &x, &cfg, &rnd).unwrap());
            let p = window_partition(&x, &cfg, &rnd).unwrap();
            let q = window_partition(&y, &cfg, &rnd).unwrap();
            let parts = p.num_parts().max(q.num_parts());
            let sum = partition_distance(&x, &p.padded_to(parts), &y, &q.padded_to(parts)).unwrap();
            let d = edit_distance(&x, &y).unwrap();
            assert!(sum >= d);
            assert_eq!(is_edit_preserving(&x, &y, &cfg, &rnd).unwrap(), sum == d);
        }
    }
}
