//! Alignment recovery from a black-box edit-distance estimator.
//!
//! `u` is split into `m` equal parts; a dynamic program picks cut points for
//! `v` from a sparse candidate set so that the summed estimates are minimal,
//! and each part pair is solved recursively. Parts of at most one letter are
//! solved exactly.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::edit::{
    banded, check_len, equipartition, levenshtein, prefix_distances, Banded, EditOp, EditScript,
    Partition, Symbol, DEFAULT_MAX_LEN,
};
use crate::error::{invalid, Error, Result};
use crate::hashing::HashFamily;

/// An edit-distance estimator with approximation factor `gamma(n)`:
/// `ed(u, v) <= estimate(u, v) <= gamma(n) * ed(u, v)`.
pub trait Estimator: Send + Sync {
    /// Estimate for one pair. Randomized estimators draw all their
    /// randomness from `seed`.
    fn estimate(&self, u: &[Symbol], v: &[Symbol], seed: u64) -> Result<usize>;

    fn gamma(&self, n: usize) -> f64;

    fn is_randomized(&self) -> bool {
        false
    }

    /// Estimates of `part` against `v_tail[..e]` for every `e` in `ends`
    /// (ascending). Entries may be `None` when the value is known to exceed
    /// `cap`; the caller never needs such values.
    fn estimate_prefixes(
        &self,
        part: &[Symbol],
        v_tail: &[Symbol],
        ends: &[usize],
        cap: Option<usize>,
        seed: u64,
    ) -> Result<Vec<Option<usize>>> {
        let _ = cap;
        let fam = HashFamily::new(seed);
        ends.iter()
            .map(|&e| {
                let s = if self.is_randomized() { fam.derive_seed(e as u64) } else { seed };
                self.estimate(part, &v_tail[..e], s).map(Some)
            })
            .collect()
    }
}

impl<E: Estimator + ?Sized> Estimator for Box<E> {
    fn estimate(&self, u: &[Symbol], v: &[Symbol], seed: u64) -> Result<usize> {
        (**self).estimate(u, v, seed)
    }
    fn gamma(&self, n: usize) -> f64 {
        (**self).gamma(n)
    }
    fn is_randomized(&self) -> bool {
        (**self).is_randomized()
    }
    fn estimate_prefixes(
        &self,
        part: &[Symbol],
        v_tail: &[Symbol],
        ends: &[usize],
        cap: Option<usize>,
        seed: u64,
    ) -> Result<Vec<Option<usize>>> {
        (**self).estimate_prefixes(part, v_tail, ends, cap, seed)
    }
}

/// The exact dynamic program; `gamma = 1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactEstimator;

impl Estimator for ExactEstimator {
    fn estimate(&self, u: &[Symbol], v: &[Symbol], _seed: u64) -> Result<usize> {
        Ok(levenshtein(u, v))
    }

    fn gamma(&self, _n: usize) -> f64 {
        1.0
    }

    fn estimate_prefixes(
        &self,
        part: &[Symbol],
        v_tail: &[Symbol],
        ends: &[usize],
        cap: Option<usize>,
        _seed: u64,
    ) -> Result<Vec<Option<usize>>> {
        let Some(&last) = ends.last() else {
            return Ok(Vec::new());
        };
        let row = prefix_distances(part, &v_tail[..last], cap);
        Ok(ends.iter().map(|&e| row[e]).collect())
    }
}

/// Exact below `k`, otherwise `max(|u|, |v|)`; `gamma(n) = n`.
#[derive(Clone, Copy, Debug)]
pub struct BandedEstimator {
    pub k: usize,
}

impl Estimator for BandedEstimator {
    fn estimate(&self, u: &[Symbol], v: &[Symbol], _seed: u64) -> Result<usize> {
        Ok(match banded(u, v, self.k) {
            Banded::Within(d) => d,
            Banded::Exceeds => u.len().max(v.len()),
        })
    }

    fn gamma(&self, n: usize) -> f64 {
        n.max(1) as f64
    }
}

/// Median of `trials` independent runs of a randomized estimator.
#[derive(Clone, Debug)]
pub struct Amplified<E> {
    inner: E,
    trials: usize,
    seed: u64,
}

/// Wraps `est` so that each estimate is the median over `trials` runs with
/// independently derived seeds. `trials` must be odd.
pub fn amplify<E: Estimator>(est: E, trials: usize, seed: u64) -> Result<Amplified<E>> {
    if trials == 0 || trials.is_multiple_of(2) {
        return Err(invalid(format!("amplification needs an odd trial count, got {trials}")));
    }
    Ok(Amplified { inner: est, trials, seed })
}

impl<E> Amplified<E> {
    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn inner(&self) -> &E {
        &self.inner
    }
}

impl<E: Estimator> Estimator for Amplified<E> {
    fn estimate(&self, u: &[Symbol], v: &[Symbol], seed: u64) -> Result<usize> {
        if !self.inner.is_randomized() || self.trials == 1 {
            return self.inner.estimate(u, v, seed ^ self.seed);
        }
        let fam = HashFamily::new(self.seed ^ seed);
        let mut vals = (0..self.trials)
            .map(|t| self.inner.estimate(u, v, fam.derive_seed(t as u64)))
            .collect::<Result<Vec<_>>>()?;
        vals.sort_unstable();
        Ok(vals[self.trials / 2])
    }

    fn gamma(&self, n: usize) -> f64 {
        self.inner.gamma(n)
    }

    fn is_randomized(&self) -> bool {
        self.inner.is_randomized()
    }
}

/// Tuning for [`align`].
#[derive(Clone, Copy, Debug)]
pub struct AlignConfig {
    /// Candidate offsets are powers of `1 + 1/m^c`; `c = 1` by default.
    pub granularity_exponent: u32,
    pub seed: u64,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig { granularity_exponent: 1, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlignerReport {
    #[serde(skip)]
    pub script: EditScript,
    /// Recursion depth executed, counting the base level.
    pub levels: usize,
    pub estimator_calls: u64,
}

impl AlignerReport {
    pub fn cost(&self) -> usize {
        self.script.len()
    }
}

/// Candidate cut points for `v`: every cut of `p` that fits, `v_len`, and
/// `ceil(p_i ± b^j)` for `b = 1 + 1/m^c`, all clipped to `[0, v_len]`.
pub fn candidate_positions(p: &Partition, v_len: usize, m: usize, granularity_exponent: u32) -> Result<Vec<usize>> {
    if m < 2 {
        return Err(invalid(format!("m must be at least 2, got {m}")));
    }
    if granularity_exponent == 0 {
        return Err(invalid("granularity exponent must be at least 1"));
    }
    let base = 1.0 + 1.0 / (m as f64).powi(granularity_exponent as i32);
    let mut set = BTreeSet::new();
    set.insert(0);
    set.insert(v_len);
    for &cut in p.cuts() {
        if cut <= v_len {
            set.insert(cut);
        }
        let reach = cut.max(v_len) as f64;
        let pf = cut as f64;
        let mut j = 0;
        loop {
            let power = base.powi(j);
            if power > reach {
                break;
            }
            let up = (pf + power).ceil();
            if up <= v_len as f64 {
                set.insert(up as usize);
            }
            let down = (pf - power).ceil();
            if down >= 0.0 && down <= v_len as f64 {
                set.insert(down as usize);
            }
            j += 1;
        }
    }
    Ok(set.into_iter().collect())
}

/// Recovers an edit script from `u` to `v` using only estimates from `est`.
pub fn align<E: Estimator + ?Sized>(
    u: &[Symbol],
    v: &[Symbol],
    m: usize,
    est: &E,
    cfg: &AlignConfig,
) -> Result<AlignerReport> {
    if m < 2 {
        return Err(invalid(format!("m must be at least 2, got {m}")));
    }
    check_len(u.len() + v.len(), DEFAULT_MAX_LEN)?;
    let mut run = Run { est, m, cfg, calls: 0, fam: HashFamily::new(cfg.seed) };
    let mut ops = Vec::new();
    let levels = run.solve(u, v, 0, 0, 0, &mut ops)?;
    Ok(AlignerReport { script: EditScript::new(ops), levels, estimator_calls: run.calls })
}

struct Run<'a, E: ?Sized> {
    est: &'a E,
    m: usize,
    cfg: &'a AlignConfig,
    calls: u64,
    fam: HashFamily,
}

impl<E: Estimator + ?Sized> Run<'_, E> {
    /// Appends ops turning `u` into `v`. Everything left of `u` has already
    /// become `v`'s prefix of length `v_off`, so positions are shifted by it.
    /// Returns the number of levels used.
    fn solve(
        &mut self,
        u: &[Symbol],
        v: &[Symbol],
        depth: u64,
        u_off: usize,
        v_off: usize,
        out: &mut Vec<EditOp>,
    ) -> Result<usize> {
        if u.len() <= 1 || v.is_empty() {
            base_case(u, v, v_off, out);
            return Ok(1);
        }
        let p = equipartition(u.len(), self.m)?;
        let q = self.choose_cuts(u, v, &p, depth, u_off, v_off)?;
        let mut deepest = 0;
        for i in 0..self.m {
            let (a, b) = (p.cuts()[i], p.cuts()[i + 1]);
            let (c, d) = (q[i], q[i + 1]);
            let lv = self.solve(&u[a..b], &v[c..d], depth + 1, u_off + a, v_off + c, out)?;
            deepest = deepest.max(lv);
        }
        Ok(deepest + 1)
    }

    fn row_seed(&self, depth: u64, u_at: usize, v_at: usize) -> u64 {
        self.fam.stream(depth).hash_pair(u_at as u64, v_at as u64)
    }

    fn one(&mut self, part: &[Symbol], w: &[Symbol], seed: u64) -> Result<usize> {
        self.calls += 1;
        self.est.estimate(part, w, seed).map_err(estimator_err)
    }

    /// Cut points `q_0 = 0 <= ... <= q_m = |v|` drawn from the candidate set,
    /// minimizing the summed estimates. Equal costs prefer smaller cuts.
    fn choose_cuts(
        &mut self,
        u: &[Symbol],
        v: &[Symbol],
        p: &Partition,
        depth: u64,
        u_off: usize,
        v_off: usize,
    ) -> Result<Vec<usize>> {
        let m = self.m;
        let s = candidate_positions(p, v.len(), m, self.cfg.granularity_exponent)?;
        let last = s.len() - 1;
        let parts: Vec<&[Symbol]> = p.parts(u).collect();

        // cost of a proportional cut layout bounds the optimum from above
        let mut ub = 0usize;
        let mut prev = 0usize;
        for (i, part) in parts.iter().enumerate() {
            let next = if i + 1 == m {
                last
            } else {
                let target = ((p.cuts()[i + 1] * v.len()) as f64 / u.len() as f64).round() as usize;
                nearest(&s, target).max(prev)
            };
            let seed = self.row_seed(depth, u_off + p.cuts()[i], v_off + s[prev]);
            ub += self.one(part, &v[s[prev]..s[next]], seed)?;
            prev = next;
        }

        const NONE: usize = usize::MAX;
        let mut f = vec![NONE; s.len()];
        f[0] = 0;
        let mut parent = vec![vec![NONE; s.len()]; m];
        for (l, part) in parts.iter().enumerate() {
            let mut g = vec![NONE; s.len()];
            let final_part = l + 1 == m;
            for a in 0..s.len() {
                if f[a] == NONE || f[a] > ub {
                    continue;
                }
                let lo = s[a];
                let targets: Vec<usize> = if final_part { vec![last] } else { (a..s.len()).collect() };
                let ends: Vec<usize> = targets.iter().map(|&b| s[b] - lo).collect();
                let seed = self.row_seed(depth, u_off + p.cuts()[l], v_off + lo);
                let cap = ub - f[a];
                let vals = self
                    .est
                    .estimate_prefixes(part, &v[lo..], &ends, Some(cap), seed)
                    .map_err(estimator_err)?;
                for (&b, val) in targets.iter().zip(vals) {
                    let Some(cost) = val else { continue };
                    self.calls += 1;
                    if cost > cap {
                        continue;
                    }
                    let total = f[a] + cost;
                    if total < g[b] {
                        g[b] = total;
                        parent[l][b] = a;
                    }
                }
            }
            f = g;
        }
        if f[last] == NONE {
            return Err(Error::Estimator(
                "estimates exceed the cost of a feasible partition; estimator is inconsistent".into(),
            ));
        }
        let mut q = vec![0usize; m + 1];
        let mut at = last;
        for l in (0..m).rev() {
            q[l + 1] = s[at];
            at = parent[l][at];
        }
        debug_assert_eq!(at, 0);
        Ok(q)
    }
}

fn estimator_err(e: Error) -> Error {
    match e {
        Error::Estimator(_) => e,
        other => Error::Estimator(other.to_string()),
    }
}

/// Index of the element of sorted `s` closest to `target`, lower on ties.
fn nearest(s: &[usize], target: usize) -> usize {
    match s.binary_search(&target) {
        Ok(i) => i,
        Err(0) => 0,
        Err(i) if i == s.len() => i - 1,
        Err(i) => {
            if target - s[i - 1] <= s[i] - target {
                i - 1
            } else {
                i
            }
        }
    }
}

/// Optimal script when `|u| <= 1` or `v` is empty.
fn base_case(u: &[Symbol], v: &[Symbol], shift: usize, out: &mut Vec<EditOp>) {
    if v.is_empty() {
        out.extend(u.iter().map(|_| EditOp::Delete { pos: shift + 1 }));
        return;
    }
    let Some(&a) = u.first() else {
        out.extend(v.iter().enumerate().map(|(j, &symbol)| EditOp::Insert { pos: shift + j + 1, symbol }));
        return;
    };
    match v.iter().position(|&b| b == a) {
        Some(k) => {
            for (j, &symbol) in v.iter().enumerate() {
                if j != k {
                    out.push(EditOp::Insert { pos: shift + j + 1, symbol });
                }
            }
        }
        None => {
            out.push(EditOp::Substitute { pos: shift + 1, symbol: v[0] });
            out.extend(v[1..].iter().enumerate().map(|(j, &symbol)| EditOp::Insert { pos: shift + j + 2, symbol }));
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("eps must lie in (0, 1), got {eps}")))
    }
}

/// Ceiling that treats values within `1e-9` of an integer as that integer.
fn snapped_ceil(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r
    } else {
        x.ceil()
    }
}

/// `max(2, ceil(n^(eps/5)))`.
pub fn choose_m_distortion(n: usize, eps: f64) -> Result<usize> {
    check_eps(eps)?;
    let m = snapped_ceil((n.max(1) as f64).powf(eps / 5.0));
    Ok((m as usize).max(2))
}

/// `max(2, ceil((3 gamma)^(1/eps)))`.
pub fn choose_m_runtime(gamma_n: usize, eps: f64) -> Result<usize> {
    check_eps(eps)?;
    if gamma_n == 0 {
        return Err(invalid("gamma must be at least 1"));
    }
    let m = snapped_ceil((3.0 * gamma_n as f64).powf(1.0 / eps));
    Ok((m as usize).max(2))
}
