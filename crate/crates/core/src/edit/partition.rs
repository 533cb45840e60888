use std::ops::Range;

use super::distance::levenshtein;
use super::types::Symbol;
use crate::error::{invalid, Result};

/// Monotone cut points `p_0 = 0 <= p_1 <= ... <= p_m = len` splitting a
/// string into `m` (possibly empty) parts; part `i` is `u[p_{i-1}..p_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    cuts: Vec<usize>,
}

impl Partition {
    pub fn new(cuts: Vec<usize>, len: usize) -> Result<Self> {
        if cuts.len() < 2 {
            return Err(invalid("a partition needs at least two cut points"));
        }
        if cuts[0] != 0 || *cuts.last().unwrap() != len {
            return Err(invalid(format!("cuts must run from 0 to {len}, got {cuts:?}")));
        }
        if cuts.windows(2).any(|w| w[0] > w[1]) {
            return Err(invalid(format!("cuts must be non-decreasing, got {cuts:?}")));
        }
        Ok(Partition { cuts })
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn num_parts(&self) -> usize {
        self.cuts.len() - 1
    }

    /// Length of the partitioned string.
    pub fn len(&self) -> usize {
        *self.cuts.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Half-open ranges of each part, in order.
    pub fn ranges(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.cuts.windows(2).map(|w| w[0]..w[1])
    }

    pub fn parts<'a, T>(&'a self, s: &'a [T]) -> impl Iterator<Item = &'a [T]> + 'a {
        self.ranges().map(move |r| &s[r])
    }

    /// Appends empty parts at the end until there are `parts` parts.
    pub fn padded_to(&self, parts: usize) -> Partition {
        let mut cuts = self.cuts.clone();
        let end = self.len();
        while cuts.len() < parts + 1 {
            cuts.push(end);
        }
        Partition { cuts }
    }
}

/// Splits `len` letters into `m` parts whose sizes differ by at most one,
/// with the `len mod m` larger parts first.
pub fn equipartition(len: usize, m: usize) -> Result<Partition> {
    if m == 0 {
        return Err(invalid("equipartition needs m >= 1"));
    }
    let base = len / m;
    let extra = len % m;
    let mut cuts = Vec::with_capacity(m + 1);
    cuts.push(0);
    let mut at = 0;
    for i in 0..m {
        at += base + usize::from(i < extra);
        cuts.push(at);
    }
    Ok(Partition { cuts })
}

/// Sum of part-wise edit distances between two partitions with the same
/// number of parts.
pub fn partition_distance(x: &[Symbol], p: &Partition, y: &[Symbol], q: &Partition) -> Result<usize> {
    if p.num_parts() != q.num_parts() {
        return Err(invalid(format!(
            "partitions have {} and {} parts",
            p.num_parts(),
            q.num_parts()
        )));
    }
    if p.len() != x.len() || q.len() != y.len() {
        return Err(invalid("partition does not match its string length"));
    }
    Ok(p.parts(x).zip(q.parts(y)).map(|(a, b)| levenshtein(a, b)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edit::types::syms;

    #[test]
    fn equipartition_layouts() {
        assert_eq!(equipartition(4, 2).unwrap().cuts(), &[0, 2, 4]);
        assert_eq!(equipartition(5, 2).unwrap().cuts(), &[0, 3, 5]);
        assert_eq!(equipartition(3, 5).unwrap().cuts(), &[0, 1, 2, 3, 3, 3]);
        assert!(equipartition(3, 0).is_err());
    }

    #[test]
    fn equipartition_sizes_differ_by_at_most_one() {
        for len in 0..40 {
            for m in 1..12 {
                let p = equipartition(len, m).unwrap();
                let sizes: Vec<_> = p.ranges().map(|r| r.len()).collect();
                assert_eq!(sizes.len(), m);
                assert!(sizes.iter().all(|&s| s == len / m || s == len.div_ceil(m)));
                assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![0, 3, 2, 4], 4).is_err());
        assert!(Partition::new(vec![1, 4], 4).is_err());
        assert!(Partition::new(vec![0, 3], 4).is_err());
        assert!(Partition::new(vec![0, 0, 4, 4], 4).is_ok());
    }

    #[test]
    fn distance_of_parts() {
        let x = syms("abcd");
        let y = syms("abce");
        let p = Partition::new(vec![0, 2, 4], 4).unwrap();
        assert_eq!(partition_distance(&x, &p, &x, &p).unwrap(), 0);
        assert_eq!(partition_distance(&x, &p, &y, &p).unwrap(), 1);
        let q3 = equipartition(4, 3).unwrap();
        assert!(partition_distance(&x, &p, &y, &q3).is_err());
    }
}
