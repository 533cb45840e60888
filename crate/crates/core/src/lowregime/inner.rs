use super::bits::Bits;
use crate::edit::Symbol;
use crate::error::{Error, Result};
use crate::hashing::{HashFamily, HashStream};

/// An embedding of strings of bounded length into fixed-length bit vectors
/// with `ed(u, v) <= ham(embed(u), embed(v)) / scale()`.
pub trait InnerEmbedding: Send + Sync {
    fn embed(&self, s: &[Symbol]) -> Result<Bits>;
    fn output_len(&self) -> usize;
    fn max_input_len(&self) -> usize;

    fn scale(&self) -> f64 {
        1.0
    }

    fn gamma(&self, len: usize) -> f64 {
        len as f64
    }
}

const PAD: Symbol = Symbol(u32::MAX);
const NAIVE_STREAM: u64 = 0x4E41_4956;

/// Pads to `max_len` and maps each letter to one bit.
#[derive(Clone, Debug)]
pub struct NaiveInner {
    max_len: usize,
    bit: BitMap,
}

#[derive(Clone, Debug)]
enum BitMap {
    Hashed(HashStream),
    /// Lowest bit of the code; the padding letter maps to 0.
    Identity,
}

/// Hashed one-bit-per-letter embedding with a fixed stream.
pub fn naive_inner(max_len: usize) -> Result<NaiveInner> {
    if max_len == 0 {
        return Err(crate::error::invalid("naive inner embedding needs max_len >= 1"));
    }
    Ok(NaiveInner { max_len, bit: BitMap::Hashed(HashFamily::new(0).stream(NAIVE_STREAM)) })
}

impl NaiveInner {
    /// Variant for binary alphabets `{0, 1}` where each letter is its own
    /// bit, so Hamming distance equals substitution count exactly.
    pub fn identity(max_len: usize) -> Result<NaiveInner> {
        let mut n = naive_inner(max_len)?;
        n.bit = BitMap::Identity;
        Ok(n)
    }

    fn bit_of(&self, s: Symbol) -> bool {
        match &self.bit {
            BitMap::Hashed(h) => h.hash_symbol(s) & 1 == 1,
            BitMap::Identity => s != PAD && s.0 & 1 == 1,
        }
    }
}

impl InnerEmbedding for NaiveInner {
    fn embed(&self, s: &[Symbol]) -> Result<Bits> {
        if s.len() > self.max_len {
            return Err(Error::Capacity { len: s.len(), max: self.max_len });
        }
        let padded = s.iter().copied().chain(std::iter::repeat(PAD)).take(self.max_len);
        Ok(Bits::from_bools(padded.map(|c| self.bit_of(c))))
    }

    fn output_len(&self) -> usize {
        self.max_len
    }

    fn max_input_len(&self) -> usize {
        self.max_len
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_length_and_capacity() {
        let psi = naive_inner(8).unwrap();
        let x: Vec<Symbol> = (0..5).map(Symbol).collect();
        assert_eq!(psi.embed(&x).unwrap().len(), 8);
        assert_eq!(psi.embed(&x).unwrap(), psi.embed(&x).unwrap());
        assert!(psi.embed(&[Symbol(1); 9]).is_err());
        assert!(naive_inner(0).is_err());
    }

    #[test]
    fn identity_counts_substitutions() {
        let psi = NaiveInner::identity(6).unwrap();
        let x: Vec<Symbol> = [0, 1, 1, 0, 1].map(Symbol).to_vec();
        let y: Vec<Symbol> = [0, 0, 1, 0, 0].map(Symbol).to_vec();
        assert_eq!(psi.embed(&x).unwrap().hamming(&psi.embed(&y).unwrap()), 2);
    }
}
