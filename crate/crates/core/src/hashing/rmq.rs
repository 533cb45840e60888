use crate::error::{invalid, Result};

/// Sparse-table range-minimum index; ties resolve to the leftmost position.
#[derive(Clone, Debug)]
pub struct RmqIndex<T> {
    vals: Vec<T>,
    // table[k][i]: 0-based argmin of vals[i .. i + 2^k]
    table: Vec<Vec<u32>>,
}

impl<T: Ord + Copy> RmqIndex<T> {
    pub fn build(vals: &[T]) -> Self {
        let n = vals.len();
        let mut table: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let mut span = 1;
        while 2 * span <= n {
            let prev = table.last().unwrap();
            let row: Vec<u32> = (0..=n - 2 * span)
                .map(|i| pick(vals, prev[i], prev[i + span]))
                .collect();
            table.push(row);
            span *= 2;
        }
        RmqIndex { vals: vals.to_vec(), table }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    /// 1-based position of the leftmost minimum of `vals[l..=r]` (1-based).
    pub fn query(&self, l: usize, r: usize) -> Result<usize> {
        if l == 0 || l > r || r > self.vals.len() {
            return Err(invalid(format!("rmq range {l}..={r} outside 1..={}", self.vals.len())));
        }
        Ok(self.argmin(l - 1, r - 1) + 1)
    }

    /// 0-based argmin over the inclusive 0-based range `lo..=hi`.
    pub(crate) fn argmin(&self, lo: usize, hi: usize) -> usize {
        let len = hi - lo + 1;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let row = &self.table[k];
        pick(&self.vals, row[lo], row[hi + 1 - (1 << k)]) as usize
    }
}

fn pick<T: Ord>(vals: &[T], a: u32, b: u32) -> u32 {
    // a <= b always; `<=` keeps the left one on ties
    if vals[a as usize] <= vals[b as usize] {
        a
    } else {
        b
    }
}
