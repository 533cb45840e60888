use std::fmt;

use crate::edit::Symbol;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function; a bijection on `u64`.
pub(crate) fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// MurmurHash3 finalizer; a bijection on `u64`.
fn fmix64(mut k: u64) -> u64 {
    k ^= k >> 33;
    k = k.wrapping_mul(0xFF51_AFD7_ED55_8CCD);
    k ^= k >> 33;
    k = k.wrapping_mul(0xC4CE_B9FE_1A85_EC53);
    k ^ (k >> 33)
}

/// A seeded family of keyed 64-bit mixing functions, indexed by stream.
///
/// Equal seeds give bit-identical outputs. Within one stream, hashing a
/// single `u64` is a bijection, so distinct symbols never collide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HashFamily {
    seed: u64,
}

impl HashFamily {
    pub fn new(seed: u64) -> Self {
        HashFamily { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self, t: u64) -> HashStream {
        let k1 = splitmix64(self.seed ^ splitmix64(t));
        let k2 = splitmix64(k1 ^ GOLDEN.rotate_left(17));
        HashStream { k1, k2 }
    }

    /// Hash of an arbitrary byte string under stream `t`.
    pub fn hash(&self, t: u64, bytes: &[u8]) -> u64 {
        self.stream(t).hash_bytes(bytes)
    }

    /// Independent sub-seed for `label`; used to fan one master seed out
    /// to every randomized component.
    pub fn derive_seed(&self, label: u64) -> u64 {
        splitmix64(self.stream(label).hash_u64(0x5EED))
    }

    /// A child family keyed by `label`.
    pub fn child(&self, label: u64) -> HashFamily {
        HashFamily::new(self.derive_seed(label))
    }
}

/// One keyed function of a [`HashFamily`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HashStream {
    k1: u64,
    k2: u64,
}

impl HashStream {
    #[inline]
    pub fn hash_u64(&self, x: u64) -> u64 {
        fmix64(fmix64(x ^ self.k1).wrapping_add(self.k2))
    }

    #[inline]
    pub fn hash_symbol(&self, s: Symbol) -> u64 {
        self.hash_u64(u64::from(s.0))
    }

    #[inline]
    pub fn hash_pair(&self, a: u64, b: u64) -> u64 {
        let left = fmix64(a ^ self.k1);
        fmix64(left.wrapping_add(b.rotate_left(29) ^ self.k2))
    }

    pub fn hash_symbols(&self, s: &[Symbol]) -> u64 {
        let mut h = self.k1 ^ (s.len() as u64).wrapping_mul(GOLDEN);
        for sym in s {
            h = fmix64(h ^ u64::from(sym.0)).wrapping_add(self.k2);
        }
        fmix64(h)
    }

    pub fn hash_bytes(&self, bytes: &[u8]) -> u64 {
        let mut h = self.k1 ^ (bytes.len() as u64).wrapping_mul(GOLDEN);
        let mut chunks = bytes.chunks_exact(8);
        for c in &mut chunks {
            let word = u64::from_le_bytes(c.try_into().unwrap());
            h = fmix64(h ^ word).wrapping_add(self.k2);
        }
        let rest = chunks.remainder();
        if !rest.is_empty() {
            let mut buf = [0u8; 8];
            buf[..rest.len()].copy_from_slice(rest);
            h = fmix64(h ^ u64::from_le_bytes(buf)).wrapping_add(self.k2);
        }
        fmix64(h)
    }

    /// Uniform value in `0..bound` (bound > 0).
    pub fn below(&self, x: u64, bound: u64) -> u64 {
        ((u128::from(self.hash_u64(x)) * u128::from(bound)) >> 64) as u64
    }

    /// True with probability `p` (clamped to [0, 1]).
    pub fn bernoulli(&self, x: u64, p: f64) -> bool {
        if p >= 1.0 {
            return true;
        }
        if p <= 0.0 {
            return false;
        }
        (self.hash_u64(x) as f64) < p * 18_446_744_073_709_551_616.0
    }
}

/// A 64-bit window digest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Digest(pub u64);

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({self})")
    }
}
