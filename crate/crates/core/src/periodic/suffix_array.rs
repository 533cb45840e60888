/// Suffix array by prefix doubling: `sa[r]` is the 0-based start of the
/// suffix of rank `r`.
pub fn suffix_array<T: Ord>(s: &[T]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n <= 1 {
        return sa;
    }
    sa.sort_by(|&a, &b| s[a].cmp(&s[b]));
    let mut rank = vec![0usize; n];
    for r in 1..n {
        rank[sa[r]] = rank[sa[r - 1]] + usize::from(s[sa[r]] != s[sa[r - 1]]);
    }
    let mut k = 1;
    let mut tmp = vec![0usize; n];
    while rank[sa[n - 1]] < n - 1 {
        // rank + 1 for the second half so that "past the end" sorts first
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for r in 1..n {
            tmp[sa[r]] = tmp[sa[r - 1]] + usize::from(key(sa[r]) != key(sa[r - 1]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        k *= 2;
    }
    sa
}
