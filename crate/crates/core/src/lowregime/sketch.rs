use super::bits::Bits;
use crate::error::{invalid, Result};
use crate::hashing::{HashFamily, HashStream};

const LETTER_STREAM: u64 = 0x4C45_5454;
const MASK_STREAM: u64 = 0x4D41_534B;

/// One-bit sketch `alpha(x) = <r, h(embed(x))> mod 2`, where each output
/// letter is hashed to a bit by a per-position hash and `r` has each bit set
/// independently with probability `1 / (T K F_K)`.
#[derive(Clone, Debug)]
pub struct ExpectationTransform {
    letters: HashStream,
    mask: HashStream,
    prob: f64,
}

impl ExpectationTransform {
    pub fn new(k: usize, f_k: f64, scale: f64, seed: u64) -> Result<Self> {
        if k == 0 || f_k < 1.0 || scale < 1.0 {
            return Err(invalid(format!("need K >= 1, F_K >= 1, T >= 1; got K = {k}, F_K = {f_k}, T = {scale}")));
        }
        let fam = HashFamily::new(seed);
        Ok(ExpectationTransform {
            letters: fam.stream(LETTER_STREAM),
            mask: fam.stream(MASK_STREAM),
            prob: 1.0 / (scale * k as f64 * f_k),
        })
    }

    pub fn probability(&self) -> f64 {
        self.prob
    }

    pub fn apply(&self, bits: &Bits) -> bool {
        let mut acc = false;
        for (i, b) in bits.iter().enumerate() {
            if self.mask.bernoulli(i as u64, self.prob) {
                acc ^= self.letters.hash_pair(i as u64, u64::from(b)) & 1 == 1;
            }
        }
        acc
    }
}

/// Composes `embed` with an [`ExpectationTransform`] drawn from `seed`.
pub fn expectation_transform<F, S>(
    embed: F,
    k: usize,
    f_k: f64,
    scale: f64,
    seed: u64,
) -> Result<impl Fn(&S) -> Result<bool>>
where
    F: Fn(&S) -> Result<Bits>,
    S: ?Sized,
{
    let t = ExpectationTransform::new(k, f_k, scale, seed)?;
    Ok(move |x: &S| embed(x).map(|bits| t.apply(&bits)))
}
