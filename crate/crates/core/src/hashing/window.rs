//! Merkle-tree digests of every fixed-width window of a string.
//!
//! Level 0 hashes single letters with `f_0`; level `k` combines the two
//! halves of each length-`2^k` window with `f_k`. A width that is not a
//! power of two is covered by the two overlapping power-of-two windows at
//! its ends, combined under one extra key. Total work is `O(n log width)`.

use super::family::{Digest, HashFamily, HashStream};
use crate::edit::Symbol;
use crate::error::{invalid, Result};

const LEVEL_TAG: u64 = 0x4D45_524B_4C45_0000;

/// Per-level keys `f_0 ..= f_{ceil(log2 width)}` for one window width.
#[derive(Clone, Debug)]
pub struct WindowHasher {
    width: usize,
    levels: Vec<HashStream>,
}

impl WindowHasher {
    pub fn new(family: &HashFamily, width: usize) -> Result<Self> {
        if width == 0 {
            return Err(invalid("window width must be at least 1"));
        }
        let top = ceil_log2(width);
        let levels = (0..=top as u64).map(|k| family.stream(LEVEL_TAG + k)).collect();
        Ok(WindowHasher { width, levels })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Digest of each window `w[i..i + width]`, for `i` in `0..=n - width`.
    pub fn hash_all(&self, w: &[Symbol]) -> Result<Vec<Digest>> {
        if self.width > w.len() {
            return Err(invalid(format!(
                "window width {} exceeds string length {}",
                self.width,
                w.len()
            )));
        }
        let pow_level = floor_log2(self.width);
        let pow = 1usize << pow_level;
        let mut d: Vec<u64> = w.iter().map(|&s| self.levels[0].hash_symbol(s)).collect();
        let mut span = 1usize;
        for level in 1..=pow_level {
            let f = &self.levels[level];
            let valid = w.len() + 1 - 2 * span;
            // ascending in-place update only reads entries not yet overwritten
            for i in 0..valid {
                d[i] = f.hash_pair(d[i], d[i + span]);
            }
            d.truncate(valid);
            span *= 2;
        }
        debug_assert_eq!(span, pow);
        let count = w.len() + 1 - self.width;
        if pow == self.width {
            d.truncate(count);
            return Ok(d.into_iter().map(Digest).collect());
        }
        let f = &self.levels[pow_level + 1];
        let tail = self.width - pow;
        Ok((0..count).map(|i| Digest(f.hash_pair(d[i], d[i + tail]))).collect())
    }
}

/// Digest of every `width`-letter window of `w`, in start order.
pub fn window_hashes(w: &[Symbol], width: usize, family: &HashFamily) -> Result<Vec<Digest>> {
    if width == 0 || width > w.len() {
        return Err(invalid(format!("window width {width} outside 1..={}", w.len())));
    }
    WindowHasher::new(family, width)?.hash_all(w)
}

fn floor_log2(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        floor_log2(x - 1) + 1
    }
}
