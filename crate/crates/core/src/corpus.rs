//! Seeded generators for test and benchmark inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::edit::{apply_script, EditOp, EditScript, Symbol};
use crate::error::{invalid, Error, Result};
use crate::hashing::HashFamily;
use crate::periodic::is_periodic_free;

/// Maximum rejection-sampling attempts for constrained generators.
pub const MAX_ATTEMPTS: usize = 10_000;

/// Deterministic generator for `(master seed, label)`.
pub fn rng_for(seed: u64, label: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(HashFamily::new(seed).derive_seed(label))
}

pub fn random_string<R: Rng>(rng: &mut R, n: usize, alphabet: u32) -> Vec<Symbol> {
    (0..n).map(|_| Symbol(rng.random_range(0..alphabet.max(1)))).collect()
}

/// A uniformly random ordering of the codes `0..n`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<Symbol> {
    let mut w: Vec<Symbol> = (0..n as u32).map(Symbol).collect();
    w.shuffle(rng);
    w
}

/// Applies `k` random edits with letters from `0..alphabet`; returns the
/// edited string and the script that produced it.
pub fn random_edits<R: Rng>(rng: &mut R, x: &[Symbol], k: usize, alphabet: u32) -> (Vec<Symbol>, EditScript) {
    let mut cur = x.to_vec();
    let mut ops = Vec::with_capacity(k);
    for _ in 0..k {
        let len = cur.len();
        let kind = if len == 0 { 0 } else { rng.random_range(0..3) };
        let op = match kind {
            0 => EditOp::Insert { pos: rng.random_range(1..=len + 1), symbol: Symbol(rng.random_range(0..alphabet.max(1))) },
            1 => EditOp::Delete { pos: rng.random_range(1..=len) },
            _ => EditOp::Substitute { pos: rng.random_range(1..=len), symbol: Symbol(rng.random_range(0..alphabet.max(1))) },
        };
        apply_op(&mut cur, op);
        ops.push(op);
    }
    (cur, EditScript::new(ops))
}

/// Random edits that keep a permutation a permutation: deletions, and
/// insertions of codes not yet used (starting at `fresh`).
pub fn random_perm_edits<R: Rng>(rng: &mut R, x: &[Symbol], k: usize, mut fresh: u32) -> (Vec<Symbol>, EditScript) {
    let mut cur = x.to_vec();
    let mut ops = Vec::with_capacity(k);
    for _ in 0..k {
        let len = cur.len();
        let op = if len == 0 || rng.random_bool(0.5) {
            fresh += 1;
            EditOp::Insert { pos: rng.random_range(1..=len + 1), symbol: Symbol(fresh - 1) }
        } else {
            EditOp::Delete { pos: rng.random_range(1..=len) }
        };
        apply_op(&mut cur, op);
        ops.push(op);
    }
    (cur, EditScript::new(ops))
}

fn apply_op(cur: &mut Vec<Symbol>, op: EditOp) {
    match op {
        EditOp::Insert { pos, symbol } => cur.insert(pos - 1, symbol),
        EditOp::Delete { pos } => {
            cur.remove(pos - 1);
        }
        EditOp::Substitute { pos, symbol } => cur[pos - 1] = symbol,
    }
}

/// Rejection-samples a random string with no substring of length at least
/// `d` and period at most `r`.
pub fn periodic_free_string<R: Rng>(rng: &mut R, n: usize, alphabet: u32, d: usize, r: usize) -> Result<Vec<Symbol>> {
    for _ in 0..MAX_ATTEMPTS {
        let w = random_string(rng, n, alphabet);
        if is_periodic_free(&w, d, r)? {
            return Ok(w);
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS,
        detail: format!("no ({d}, {r})-free string of length {n} over {alphabet} letters"),
    })
}

/// What to generate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CorpusSpec {
    RandomString { n: usize, alphabet: u32, seed: u64 },
    RandomPermutation { n: usize, seed: u64 },
    EditedPair { n: usize, alphabet: u32, k: usize, seed: u64 },
    PeriodicFree { n: usize, alphabet: u32, d: usize, r: usize, seed: u64 },
}

/// Generated strings; pairs carry the script that relates them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub x: Vec<Symbol>,
    pub y: Option<Vec<Symbol>>,
    pub script: Option<EditScript>,
}

pub fn gen_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    let single = |x| Corpus { x, y: None, script: None };
    match *spec {
        CorpusSpec::RandomString { n, alphabet, seed } => {
            check_alphabet(alphabet)?;
            Ok(single(random_string(&mut rng_for(seed, 0), n, alphabet)))
        }
        CorpusSpec::RandomPermutation { n, seed } => Ok(single(random_permutation(&mut rng_for(seed, 0), n))),
        CorpusSpec::EditedPair { n, alphabet, k, seed } => {
            check_alphabet(alphabet)?;
            let mut rng = rng_for(seed, 0);
            let x = random_string(&mut rng, n, alphabet);
            let (y, script) = random_edits(&mut rng, &x, k, alphabet);
            debug_assert_eq!(apply_script(&x, &script).as_ref(), Ok(&y));
            Ok(Corpus { x, y: Some(y), script: Some(script) })
        }
        CorpusSpec::PeriodicFree { n, alphabet, d, r, seed } => {
            check_alphabet(alphabet)?;
            Ok(single(periodic_free_string(&mut rng_for(seed, 0), n, alphabet, d, r)?))
        }
    }
}

fn check_alphabet(alphabet: u32) -> Result<()> {
    if alphabet == 0 || alphabet > crate::edit::DUMMY_BASE {
        return Err(invalid(format!("alphabet size {alphabet} outside 1..=2^31")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::edit_distance;
    use std::collections::HashSet;

    #[test]
    fn permutation_has_distinct_symbols() {
        let c = gen_corpus(&CorpusSpec::RandomPermutation { n: 5, seed: 3 }).unwrap();
        assert_eq!(c.x.iter().collect::<HashSet<_>>().len(), 5);
    }

    #[test]
    fn edited_pairs() {
        let c = gen_corpus(&CorpusSpec::EditedPair { n: 30, alphabet: 4, k: 0, seed: 1 }).unwrap();
        assert_eq!(Some(c.x.clone()), c.y);
        for seed in 0..50 {
            let c = gen_corpus(&CorpusSpec::EditedPair { n: 40, alphabet: 4, k: 6, seed }).unwrap();
            let y = c.y.unwrap();
            assert_eq!(apply_script(&c.x, &c.script.unwrap()).unwrap(), y);
            assert!(edit_distance(&c.x, &y).unwrap() <= 6);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let spec = CorpusSpec::RandomString { n: 50, alphabet: 7, seed: 9 };
        assert_eq!(gen_corpus(&spec).unwrap(), gen_corpus(&spec).unwrap());
    }

    #[test]
    fn periodic_free_output_passes_checker() {
        let c = gen_corpus(&CorpusSpec::PeriodicFree { n: 200, alphabet: 64, d: 10, r: 3, seed: 4 }).unwrap();
        assert!(is_periodic_free(&c.x, 10, 3).unwrap());
        let err = gen_corpus(&CorpusSpec::PeriodicFree { n: 200, alphabet: 1, d: 10, r: 3, seed: 4 }).unwrap_err();
        assert!(matches!(err, Error::GenerationFailed { attempts: MAX_ATTEMPTS, .. }));
    }

    #[test]
    fn perm_edits_keep_distinctness() {
        let mut rng = rng_for(1, 2);
        let x = random_permutation(&mut rng, 50);
        let (y, s) = random_perm_edits(&mut rng, &x, 10, 50);
        assert_eq!(apply_script(&x, &s).unwrap(), y);
        assert_eq!(y.iter().collect::<HashSet<_>>().len(), y.len());
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = CorpusSpec::EditedPair { n: 10, alphabet: 4, k: 2, seed: 5 };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"edited_pair\""));
        assert_eq!(serde_json::from_str::<CorpusSpec>(&text).unwrap(), spec);
    }
}
