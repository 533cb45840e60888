//! Exact unit-cost edit distance: the textbook dynamic program, a banded
//! variant for small distances, and alignment recovery by traceback.

use super::script::{EditOp, EditScript};
use super::types::{check_len, Symbol, DEFAULT_MAX_LEN};
use crate::error::Result;

/// Levenshtein distance between two `DEFAULT_MAX_LEN`-bounded strings.
pub fn edit_distance<T: PartialEq>(x: &[T], y: &[T]) -> Result<usize> {
    check_len(x.len(), DEFAULT_MAX_LEN)?;
    check_len(y.len(), DEFAULT_MAX_LEN)?;
    Ok(levenshtein(x, y))
}

/// Two-row DP without capacity checks.
pub(crate) fn levenshtein<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    let (x, y) = if x.len() < y.len() { (y, x) } else { (x, y) };
    if y.is_empty() {
        return x.len();
    }
    let mut row: Vec<usize> = (0..=y.len()).collect();
    for (i, a) in x.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        for (j, b) in y.iter().enumerate() {
            let up = row[j + 1];
            let cost = if a == b { diag } else { diag + 1 };
            row[j + 1] = cost.min(up + 1).min(row[j] + 1);
            diag = up;
        }
    }
    row[y.len()]
}

/// Outcome of [`banded_distance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Banded {
    Within(usize),
    Exceeds,
}

impl Banded {
    pub fn within(self) -> Option<usize> {
        match self {
            Banded::Within(d) => Some(d),
            Banded::Exceeds => None,
        }
    }
}

/// Exact distance when it is at most `k`, otherwise [`Banded::Exceeds`].
///
/// Only cells with `|i - j| <= k` are filled, so the cost is `O((|x|+|y|) k)`.
pub fn banded_distance<T: PartialEq>(x: &[T], y: &[T], k: usize) -> Result<Banded> {
    check_len(x.len(), DEFAULT_MAX_LEN)?;
    check_len(y.len(), DEFAULT_MAX_LEN)?;
    Ok(banded(x, y, k))
}

pub(crate) fn banded<T: PartialEq>(x: &[T], y: &[T], k: usize) -> Banded {
    let (n, m) = (x.len(), y.len());
    if n.abs_diff(m) > k {
        return Banded::Exceeds;
    }
    let cap = k + 1;
    let width = 2 * k + 1;
    // row[d] holds D[i][i + d - k]; values are saturated at `cap`.
    let mut prev = vec![cap; width];
    let mut cur = vec![cap; width];
    for d in 0..width {
        let j = d as isize - k as isize;
        if (0..=m as isize).contains(&j) {
            prev[d] = (j as usize).min(cap);
        }
    }
    for i in 1..=n {
        let mut row_min = cap;
        for d in 0..width {
            let j = i as isize + d as isize - k as isize;
            if j < 0 || j > m as isize {
                cur[d] = cap;
                continue;
            }
            let j = j as usize;
            let mut best = cap;
            if j == 0 {
                best = i.min(cap);
            } else {
                // diagonal D[i-1][j-1] sits at the same offset in prev
                let sub = prev[d] + usize::from(x[i - 1] != y[j - 1]);
                best = best.min(sub);
                if d > 0 {
                    best = best.min(cur[d - 1] + 1); // D[i][j-1]
                }
            }
            if d + 1 < width {
                best = best.min(prev[d + 1] + 1); // D[i-1][j]
            }
            cur[d] = best.min(cap);
            row_min = row_min.min(cur[d]);
        }
        if row_min > k {
            return Banded::Exceeds;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let d = prev[m + k - n];
    if d <= k {
        Banded::Within(d)
    } else {
        Banded::Exceeds
    }
}

/// Exact distance in `O((|x|+|y|) d)` time by doubling the band until the
/// banded DP succeeds.
pub fn edit_distance_adaptive<T: PartialEq>(x: &[T], y: &[T]) -> Result<usize> {
    check_len(x.len(), DEFAULT_MAX_LEN)?;
    check_len(y.len(), DEFAULT_MAX_LEN)?;
    let mut k = x.len().abs_diff(y.len()).max(1);
    loop {
        if let Banded::Within(d) = banded(x, y, k) {
            return Ok(d);
        }
        k *= 2;
    }
}

/// Distances from `part` to every prefix `v[..j]`, stopping once the column
/// minimum exceeds `cap` (all later prefixes are then at least that far).
/// Entry `j` is `None` when it was not computed.
pub(crate) fn prefix_distances<T: PartialEq>(part: &[T], v: &[T], cap: Option<usize>) -> Vec<Option<usize>> {
    let a = part.len();
    let mut out = vec![None; v.len() + 1];
    let mut col: Vec<usize> = (0..=a).collect();
    out[0] = Some(a);
    for (j, b) in v.iter().enumerate() {
        let mut diag = col[0];
        col[0] = j + 1;
        let mut col_min = col[0];
        for i in 1..=a {
            let left = col[i];
            let sub = diag + usize::from(part[i - 1] != *b);
            let val = sub.min(left + 1).min(col[i - 1] + 1);
            diag = left;
            col[i] = val;
            col_min = col_min.min(val);
        }
        out[j + 1] = Some(col[a]);
        if let Some(c) = cap {
            if col_min > c {
                break;
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Step {
    Match,
    Sub,
    Del,
    Ins,
}

/// An optimal edit script from `x` to `y`, ops in ascending position order.
pub fn optimal_alignment(x: &[Symbol], y: &[Symbol]) -> Result<EditScript> {
    check_len(x.len(), DEFAULT_MAX_LEN)?;
    check_len(y.len(), DEFAULT_MAX_LEN)?;
    let (n, m) = (x.len(), y.len());
    let w = m + 1;
    let mut table = vec![0u32; (n + 1) * w];
    for j in 0..=m {
        table[j] = j as u32;
    }
    for i in 1..=n {
        table[i * w] = i as u32;
        for j in 1..=m {
            let sub = table[(i - 1) * w + j - 1] + u32::from(x[i - 1] != y[j - 1]);
            let del = table[(i - 1) * w + j] + 1;
            let ins = table[i * w + j - 1] + 1;
            table[i * w + j] = sub.min(del).min(ins);
        }
    }

    let mut steps = Vec::with_capacity(n.max(m));
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = table[i * w + j];
        if i > 0 && j > 0 {
            let diag = table[(i - 1) * w + j - 1];
            if x[i - 1] == y[j - 1] && here == diag {
                steps.push(Step::Match);
                i -= 1;
                j -= 1;
                continue;
            }
            if here == diag + 1 {
                steps.push(Step::Sub);
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && here == table[(i - 1) * w + j] + 1 {
            steps.push(Step::Del);
            i -= 1;
        } else {
            steps.push(Step::Ins);
            j -= 1;
        }
    }
    steps.reverse();

    // forward sweep: `emitted` letters of y are already in place
    let mut ops = Vec::new();
    let (mut emitted, mut yi) = (0usize, 0usize);
    for step in steps {
        match step {
            Step::Match => {
                emitted += 1;
                yi += 1;
            }
            Step::Sub => {
                ops.push(EditOp::Substitute { pos: emitted + 1, symbol: y[yi] });
                emitted += 1;
                yi += 1;
            }
            Step::Del => ops.push(EditOp::Delete { pos: emitted + 1 }),
            Step::Ins => {
                ops.push(EditOp::Insert { pos: emitted + 1, symbol: y[yi] });
                emitted += 1;
                yi += 1;
            }
        }
    }
    Ok(EditScript::new(ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::script::apply_script;
    use crate::edit::types::syms;

    #[test]
    fn small_distances() {
        assert_eq!(edit_distance::<Symbol>(&[], &[]).unwrap(), 0);
        assert_eq!(edit_distance(&syms("abc"), &syms("abc")).unwrap(), 0);
        assert_eq!(edit_distance(&syms("abcd"), &syms("bcda")).unwrap(), 2);
        assert_eq!(edit_distance(&syms("kitten"), &syms("sitting")).unwrap(), 3);
        assert_eq!(edit_distance(&syms(""), &syms("xyz")).unwrap(), 3);
    }

    #[test]
    fn banded_examples() {
        let x = syms("abc");
        assert_eq!(banded_distance(&x, &x, 0).unwrap(), Banded::Within(0));
        assert_eq!(banded_distance(&x, &syms("abd"), 1).unwrap(), Banded::Within(1));
        assert_eq!(banded_distance(&x, &syms("xyz"), 1).unwrap(), Banded::Exceeds);
        assert_eq!(banded_distance(&x, &syms("xyz"), 3).unwrap(), Banded::Within(3));
        assert_eq!(banded_distance(&syms(""), &syms("ab"), 1).unwrap(), Banded::Exceeds);
        assert_eq!(banded_distance(&syms(""), &syms("ab"), 2).unwrap(), Banded::Within(2));
    }

    #[test]
    fn alignment_examples() {
        let x = syms("abcd");
        assert!(optimal_alignment(&x, &x).unwrap().is_empty());
        assert_eq!(
            optimal_alignment(&syms("a"), &[]).unwrap().ops,
            vec![EditOp::Delete { pos: 1 }]
        );
        let s = optimal_alignment(&x, &syms("bcda")).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(apply_script(&x, &s).unwrap(), syms("bcda"));
    }

    #[test]
    fn prefix_row_matches_full_dp() {
        let part = syms("abca");
        let v = syms("xabcaabyy");
        let row = prefix_distances(&part, &v, None);
        for j in 0..=v.len() {
            assert_eq!(row[j], Some(levenshtein(&part, &v[..j])));
        }
        let capped = prefix_distances(&part, &v, Some(1));
        for j in 0..=v.len() {
            if let Some(d) = capped[j] {
                assert_eq!(d, levenshtein(&part, &v[..j]));
            } else {
                assert!(levenshtein(&part, &v[..j]) > 1);
            }
        }
    }

    #[test]
    fn adaptive_agrees_with_full_dp() {
        let x = syms("the quick brown fox");
        let y = syms("a quick brow fax jumps");
        assert_eq!(edit_distance_adaptive(&x, &y).unwrap(), levenshtein(&x, &y));
    }
}
