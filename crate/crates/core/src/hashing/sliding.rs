use std::collections::VecDeque;

/// 1-based indices `i` with `radius < i <= len - radius` whose value is
/// strictly smaller than every other value in `vals[i-radius ..= i+radius]`.
///
/// Runs in linear time with a monotonic deque. Equal values are kept in the
/// deque so that a tied minimum is never reported as unique.
pub fn sliding_unique_min<T: Ord>(vals: &[T], radius: usize) -> Vec<usize> {
    let n = vals.len();
    if n < 2 * radius + 1 {
        return Vec::new();
    }
    let width = 2 * radius + 1;
    let mut out = Vec::new();
    let mut dq: VecDeque<usize> = VecDeque::with_capacity(width);
    for j in 0..n {
        while let Some(&back) = dq.back() {
            if vals[back] > vals[j] {
                dq.pop_back();
            } else {
                break;
            }
        }
        dq.push_back(j);
        if j + 1 < width {
            continue;
        }
        let lo = j + 1 - width;
        while dq.front().is_some_and(|&f| f < lo) {
            dq.pop_front();
        }
        // window lo..=j has centre lo + radius
        let centre = lo + radius;
        let front = dq[0];
        if front == centre && dq.get(1).is_none_or(|&s| vals[s] > vals[front]) {
            out.push(centre + 1);
        }
    }
    out
}
