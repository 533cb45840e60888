use crate::edit::Symbol;
use crate::error::{invalid, Result};

use super::min_period_unchecked;

/// 1-based offset at which the lexicographically least rotation of `u`
/// begins. When several offsets give the same rotation the smallest wins.
pub fn smallest_rotation_offset(u: &[Symbol]) -> Result<usize> {
    if u.is_empty() {
        return Err(invalid("smallest rotation of the empty string"));
    }
    let k = booth(u);
    let n = u.len();
    let p = min_period_unchecked(u);
    let cyclic = if n.is_multiple_of(p) { p } else { n };
    Ok(k % cyclic + 1)
}

/// Booth's least-rotation algorithm; returns a 0-based start.
fn booth<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let at = |i: usize| &s[i % n];
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = f[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::syms;
    use crate::periodic::suffix_array;

    fn brute(u: &[Symbol]) -> usize {
        let n = u.len();
        let rot = |k: usize| -> Vec<Symbol> { u[k..].iter().chain(&u[..k]).copied().collect() };
        (0..n).min_by_key(|&k| (rot(k), k)).unwrap() + 1
    }

    #[test]
    fn examples() {
        assert_eq!(smallest_rotation_offset(&syms("a")).unwrap(), 1);
        assert_eq!(smallest_rotation_offset(&syms("ba")).unwrap(), 2);
        assert_eq!(smallest_rotation_offset(&syms("cab")).unwrap(), 2);
        assert_eq!(smallest_rotation_offset(&syms("abab")).unwrap(), 1);
        assert_eq!(smallest_rotation_offset(&syms("baba")).unwrap(), 2);
        assert!(smallest_rotation_offset(&[]).is_err());
    }

    #[test]
    fn agrees_with_brute_force_and_suffix_array() {
        let s = crate::hashing::HashFamily::new(12).stream(0);
        let mut ctr = 0;
        for n in 1..30 {
            for alpha in [2u64, 3, 10] {
                for _ in 0..20 {
                    let u: Vec<Symbol> = (0..n)
                        .map(|_| {
                            ctr += 1;
                            Symbol(s.below(ctr, alpha) as u32)
                        })
                        .collect();
                    let got = smallest_rotation_offset(&u).unwrap();
                    assert_eq!(got, brute(&u), "{u:?}");
                    // suffix array of u·u: first suffix starting inside u
                    // spells the least rotation in its first n letters
                    let uu: Vec<Symbol> = u.iter().chain(&u).copied().collect();
                    let first = suffix_array(&uu).into_iter().find(|&i| i < n).unwrap();
                    assert_eq!(uu[first..first + n], uu[got - 1..got - 1 + n]);
                }
            }
        }
    }
}
