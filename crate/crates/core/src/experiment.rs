//! Seeded experiment runs producing per-trial CSV rows and a JSON summary.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::align::{align, AlignConfig, ExactEstimator};
use crate::corpus::{random_edits, random_perm_edits, random_permutation, random_string, rng_for, MAX_ATTEMPTS};
use crate::dimred::{block_distance, dimred_general};
use crate::edit::{apply_script, edit_distance_adaptive, Symbol};
use crate::error::{Error, Result};
use crate::hashing::HashFamily;
use crate::lowregime::{
    choose_params, is_edit_preserving, window_partition, ExpectationTransform, InnerEmbedding, NaiveInner, RegimeConfig,
    RegimeRandomness,
};
use crate::periodic::distinct_grams_within;
use crate::ulam::{decode_alignment, hamming, ulam_embed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    AlignerRatio,
    UlamDistortion,
    DimredDistortion,
    DimredLength,
    LowregimePreserve,
    AlphaSketch,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::AlignerRatio,
        Experiment::UlamDistortion,
        Experiment::DimredDistortion,
        Experiment::DimredLength,
        Experiment::LowregimePreserve,
        Experiment::AlphaSketch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::AlignerRatio => "aligner-ratio",
            Experiment::UlamDistortion => "ulam-distortion",
            Experiment::DimredDistortion => "dimred-distortion",
            Experiment::DimredLength => "dimred-length",
            Experiment::LowregimePreserve => "lowregime-preserve",
            Experiment::AlphaSketch => "alpha-sketch",
        }
    }

    /// Names of the measured columns, after the shared leading columns.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Experiment::AlignerRatio => &["cost", "levels", "calls", "valid"],
            Experiment::UlamDistortion => &["hamming", "nonzeros", "dim", "decode_len", "decode_valid"],
            Experiment::DimredDistortion => &["c", "n", "block_distance", "blocks_x", "blocks_y", "reconstructs"],
            Experiment::DimredLength => &["block_distance", "blocks_x", "max_block"],
            Experiment::LowregimePreserve => &["preserved", "parts_ok"],
            Experiment::AlphaSketch => &["differs", "identity_equal"],
        }
    }

    /// Defaults for each run; fields an experiment does not use are ignored.
    pub fn default_config(self) -> ExperimentConfig {
        let base = ExperimentConfig::default();
        match self {
            Experiment::AlignerRatio => ExperimentConfig { trials: 500, n: 512, k: 32, m: 8, ..base },
            Experiment::UlamDistortion => ExperimentConfig { trials: 1000, n: 256, k: 4, ..base },
            Experiment::DimredDistortion => ExperimentConfig { trials: 1000, n: 400, k: 8, c: 4, ..base },
            Experiment::DimredLength => ExperimentConfig { trials: 1000, n: 2000, k: 1, c: 8, ..base },
            Experiment::LowregimePreserve => ExperimentConfig { trials: 200, n: 0, k: 2, d: 16, conf: 4, ..base },
            Experiment::AlphaSketch => ExperimentConfig { trials: 10_000, n: 64, k: 1, f_k: 64.0, ..base },
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| {
            let known: Vec<_> = Experiment::ALL.iter().map(|e| e.name()).collect();
            Error::InvalidArgument(format!("unknown experiment {s:?}; expected one of {}", known.join(", ")))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub seed: u64,
    /// String length. For lowregime-preserve, 0 means four windows.
    pub n: usize,
    /// Edits per pair (an upper bound where the count is drawn).
    pub k: usize,
    pub alphabet: u32,
    /// Aligner branching factor.
    pub m: usize,
    /// Dimension-reduction contraction.
    pub c: usize,
    pub eps: f64,
    /// Periodic-freeness length for lowregime-preserve.
    pub d: usize,
    /// Confidence parameter for lowregime-preserve.
    pub conf: usize,
    /// Distortion bound fed to the expectation transform.
    pub f_k: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig { trials: 100, seed: 0, n: 256, k: 1, alphabet: 4, m: 8, c: 4, eps: 0.25, d: 16, conf: 4, f_k: 64.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub experiment: &'static str,
    pub pair: usize,
    pub seed: u64,
    /// Edit distance recomputed from the strings.
    pub oracle: usize,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub mean: f64,
    pub median: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(vals: &[f64]) -> Option<Stats> {
        if vals.is_empty() {
            return None;
        }
        let mut v = vals.to_vec();
        v.sort_by(f64::total_cmp);
        let mid = v.len() / 2;
        let median = if v.len() % 2 == 1 { v[mid] } else { (v[mid - 1] + v[mid]) / 2.0 };
        Some(Stats { mean: v.iter().sum::<f64>() / v.len() as f64, median, max: v[v.len() - 1] })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub experiment: &'static str,
    pub trials: usize,
    pub config: ExperimentConfig,
    /// Column the statistics describe.
    pub measured: &'static str,
    pub stats: Option<Stats>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub experiment: Experiment,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

impl ExperimentOutput {
    pub fn header(&self) -> String {
        let mut cols = vec!["experiment", "pair", "seed", "oracle"];
        cols.extend(self.experiment.columns());
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header();
        s.push('\n');
        for r in &self.records {
            write!(s, "{},{},{},{}", r.experiment, r.pair, r.seed, r.oracle).unwrap();
            for v in &r.values {
                write!(s, ",{v}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }

    pub fn passed(&self) -> bool {
        self.summary.pass
    }

    /// Values of one measured column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.experiment.columns().iter().position(|c| *c == name)?;
        Some(self.records.iter().map(|r| r.values[i]).collect())
    }
}

/// Runs `exp` with `cfg`. Trial `i` draws everything from a seed derived
/// from `(cfg.seed, experiment, i)`, so equal configs give equal output.
pub fn run_experiment(exp: Experiment, cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let fam = HashFamily::new(cfg.seed).child(exp as u64);
    let mut records = Vec::with_capacity(cfg.trials);
    let mut ctx = Context::new(exp, cfg)?;
    for pair in 0..cfg.trials {
        let seed = fam.derive_seed(pair as u64);
        let mut rng = rng_for(seed, 0);
        let (oracle, values) = ctx.trial(&mut rng, seed)?;
        records.push(TrialRecord { experiment: exp.name(), pair, seed, oracle, values });
    }
    let (measured, verdicts) = ctx.verdicts(&records);
    let col = exp.columns().iter().position(|c| *c == measured).expect("measured column exists");
    let vals: Vec<f64> = records.iter().map(|r| r.values[col]).collect();
    let pass = verdicts.iter().all(|v| v.pass);
    let summary = Summary {
        experiment: exp.name(),
        trials: cfg.trials,
        config: cfg.clone(),
        measured,
        stats: Stats::of(&vals),
        verdicts,
        pass,
    };
    Ok(ExperimentOutput { experiment: exp, records, summary })
}

struct Context<'a> {
    exp: Experiment,
    cfg: &'a ExperimentConfig,
    regime: Option<RegimeConfig>,
    inner: Option<NaiveInner>,
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

fn verdict(name: &str, pass: bool, detail: String) -> Verdict {
    Verdict { name: name.into(), pass, detail }
}

/// Concatenates periodic runs (period at most `c`, length at least `8c`)
/// and short random stretches until the length reaches `n`.
pub fn mixed_string<R: Rng>(rng: &mut R, n: usize, c: usize, alphabet: u32) -> Vec<Symbol> {
    let mut w = Vec::with_capacity(n + 48 * c);
    while w.len() < n {
        if rng.random_bool(0.5) {
            let p = rng.random_range(1..=c.max(1));
            let unit = random_string(rng, p, alphabet);
            let len = rng.random_range(8 * c..=24 * c);
            w.extend(unit.iter().cycle().take(len));
        } else {
            let len = rng.random_range(1..=4 * c);
            w.extend(random_string(rng, len, alphabet));
        }
    }
    w.truncate(n);
    w
}

impl<'a> Context<'a> {
    fn new(exp: Experiment, cfg: &'a ExperimentConfig) -> Result<Self> {
        let mut ctx = Context { exp, cfg, regime: None, inner: None };
        match exp {
            Experiment::LowregimePreserve => ctx.regime = Some(choose_params(cfg.k, cfg.d, cfg.conf)?),
            Experiment::AlphaSketch => ctx.inner = Some(NaiveInner::identity(cfg.n.max(1))?),
            _ => {}
        }
        Ok(ctx)
    }

    fn trial(&mut self, rng: &mut ChaCha8Rng, seed: u64) -> Result<(usize, Vec<f64>)> {
        let cfg = self.cfg;
        match self.exp {
            Experiment::AlignerRatio => {
                let x = random_string(rng, cfg.n, cfg.alphabet);
                let k = rng.random_range(0..=cfg.k);
                let (y, _) = random_edits(rng, &x, k, cfg.alphabet);
                let ed = edit_distance_adaptive(&x, &y)?;
                let rep = align(&x, &y, cfg.m, &ExactEstimator, &AlignConfig { seed, ..AlignConfig::default() })?;
                let valid = apply_script(&x, &rep.script).map(|z| z == y).unwrap_or(false);
                Ok((ed, vec![rep.cost() as f64, rep.levels as f64, rep.estimator_calls as f64, flag(valid)]))
            }
            Experiment::UlamDistortion => {
                let x = random_permutation(rng, cfg.n);
                let (y, _) = random_perm_edits(rng, &x, cfg.k, cfg.n as u32);
                let ed = edit_distance_adaptive(&x, &y)?;
                let m = crate::ulam::default_levels(cfg.n + cfg.k, cfg.eps)?;
                let a = ulam_embed(&x, cfg.eps, seed, Some(m))?;
                let b = ulam_embed(&y, cfg.eps, seed, Some(m))?;
                let ham = hamming(&a, &b)?;
                let script = decode_alignment(&a, &b)?;
                let valid = apply_script(&x, &script).map(|z| z == y).unwrap_or(false);
                Ok((
                    ed,
                    vec![ham as f64, a.nonzeros() as f64, a.dim as f64, script.len() as f64, flag(valid)],
                ))
            }
            Experiment::DimredDistortion => {
                let c = if cfg.c == 0 { [2, 4, 8][rng.random_range(0..3)] } else { cfg.c };
                let n = rng.random_range(cfg.n / 2..=cfg.n);
                let x = if rng.random_bool(0.5) {
                    mixed_string(rng, n, c, cfg.alphabet)
                } else {
                    random_string(rng, n, cfg.alphabet)
                };
                let k = rng.random_range(0..=cfg.k);
                let (y, _) = random_edits(rng, &x, k, cfg.alphabet);
                let ed = edit_distance_adaptive(&x, &y)?;
                let a = dimred_general(&x, c, seed)?;
                let b = dimred_general(&y, c, seed)?;
                let bd = block_distance(&a, &b)?;
                let rebuilt = |s: &crate::dimred::BlockString, w: &[Symbol]| {
                    s.blocks().flatten().copied().eq(w.iter().copied())
                };
                let ok = rebuilt(&a, &x) && rebuilt(&b, &y);
                let len = x.len().max(y.len()) as f64;
                Ok((ed, vec![c as f64, len, bd as f64, a.len() as f64, b.len() as f64, flag(ok)]))
            }
            Experiment::DimredLength => {
                let x = random_string(rng, cfg.n, cfg.alphabet);
                let mut y = x.clone();
                for _ in 0..cfg.k {
                    let pos = rng.random_range(0..=y.len());
                    y.insert(pos, Symbol(rng.random_range(0..cfg.alphabet.max(1))));
                }
                let ed = edit_distance_adaptive(&x, &y)?;
                let a = dimred_general(&x, cfg.c, seed)?;
                let b = dimred_general(&y, cfg.c, seed)?;
                let bd = block_distance(&a, &b)?;
                let max_block = a.ranges().map(|r| r.len()).max().unwrap_or(0);
                Ok((ed, vec![bd as f64, a.len() as f64, max_block as f64]))
            }
            Experiment::LowregimePreserve => {
                let rc = self.regime.expect("set in new");
                let n = if cfg.n == 0 { 4 * rc.w } else { cfg.n };
                let (x, y) = free_pair(rng, n, &rc)?;
                let ed = edit_distance_adaptive(&x, &y)?;
                let rnd = RegimeRandomness::new(seed, &rc, n + rc.k)?;
                let preserved = is_edit_preserving(&x, &y, &rc, &rnd)?;
                let parts_ok = [&x, &y].into_iter().all(|w| {
                    window_partition(w, &rc, &rnd).is_ok_and(|p| {
                        let lens: Vec<usize> = p.ranges().map(|r| r.len()).collect();
                        lens[..lens.len() - 1].iter().all(|&l| rc.w / 2 <= l && l < rc.w)
                    })
                });
                Ok((ed, vec![flag(preserved), flag(parts_ok)]))
            }
            Experiment::AlphaSketch => {
                let psi = self.inner.as_ref().expect("set in new");
                let x = random_string(rng, cfg.n, 2);
                let mut y = x.clone();
                let pos = rng.random_range(0..cfg.n);
                y[pos] = Symbol(1 - y[pos].0);
                let ed = edit_distance_adaptive(&x, &y)?;
                let t = ExpectationTransform::new(cfg.k, cfg.f_k, psi.scale(), seed)?;
                let (ex, ey) = (psi.embed(&x)?, psi.embed(&y)?);
                let differs = t.apply(&ex) != t.apply(&ey);
                let same = t.apply(&ex) == t.apply(&psi.embed(&x)?);
                Ok((ed, vec![flag(differs), flag(same)]))
            }
        }
    }

    fn verdicts(&self, recs: &[TrialRecord]) -> (&'static str, Vec<Verdict>) {
        let cfg = self.cfg;
        let count = |f: &dyn Fn(&TrialRecord) -> bool| recs.iter().filter(|r| !f(r)).count();
        match self.exp {
            Experiment::AlignerRatio => {
                let depth = ((cfg.n.max(2) as f64).ln() / (cfg.m as f64).ln() - 1e-9).ceil() as usize + 1;
                let v = vec![
                    verdict("script-valid", count(&|r| r.values[3] == 1.0) == 0, "every script applies and yields y".into()),
                    verdict("cost-at-least-distance", count(&|r| r.values[0] >= r.oracle as f64) == 0, String::new()),
                    verdict(
                        "cost-within-3^L",
                        count(&|r| r.values[0] <= 3f64.powf(r.values[1]) * r.oracle as f64) == 0,
                        String::new(),
                    ),
                    verdict("levels-bounded", count(&|r| r.values[1] <= depth as f64) == 0, format!("L <= {depth}")),
                ];
                ("cost", v)
            }
            Experiment::UlamDistortion => {
                let dim_cap = 8.0 * (cfg.n.max(1) as f64).powf(1.0 + 6.0 * cfg.eps);
                let v = vec![
                    verdict("hamming-at-least-distance", count(&|r| r.values[0] >= r.oracle as f64) == 0, String::new()),
                    verdict(
                        "decode-valid",
                        count(&|r| r.values[4] == 1.0 && r.values[3] == r.values[0]) == 0,
                        "decoded script applies and has length equal to the hamming distance".into(),
                    ),
                    verdict("sparsity", count(&|r| r.values[1] == cfg.n as f64) == 0, "nonzeros equal n".into()),
                    verdict("dimension", count(&|r| r.values[2] <= dim_cap) == 0, format!("dim <= {dim_cap:.0}")),
                ];
                ("hamming", v)
            }
            Experiment::DimredDistortion => {
                let v = vec![
                    verdict("reconstruction", count(&|r| r.values[5] == 1.0) == 0, String::new()),
                    verdict(
                        "contraction",
                        count(&|r| r.oracle as f64 <= 2.0 * r.values[0] * r.values[2]) == 0,
                        "ed <= 2c * block distance".into(),
                    ),
                    verdict(
                        "block-count",
                        count(&|r| {
                            let cap = (12 * (r.values[1] as usize).div_ceil(r.values[0] as usize) + 2) as f64;
                            r.values[3] <= cap && r.values[4] <= cap
                        }) == 0,
                        "blocks <= 12 ceil(n/c) + 2".into(),
                    ),
                ];
                ("block_distance", v)
            }
            Experiment::DimredLength => {
                let cap = (12 * cfg.n.div_ceil(cfg.c) + 2) as f64;
                let bds: Vec<f64> = recs.iter().map(|r| r.values[0]).collect();
                let (ok, detail) = tail_halving(&bds);
                let v = vec![
                    verdict("block-count", count(&|r| r.values[1] <= cap) == 0, format!("blocks <= {cap}")),
                    verdict("block-size", count(&|r| r.values[2] < 2.0 * cfg.c as f64) == 0, format!("blocks < {}", 2 * cfg.c)),
                    verdict("tail-halving", ok, detail),
                ];
                ("block_distance", v)
            }
            Experiment::LowregimePreserve => {
                let rc = self.regime.expect("set in new");
                let bound = rc.preservation_bound() - 0.05;
                let freq = if recs.is_empty() {
                    1.0
                } else {
                    recs.iter().map(|r| r.values[0]).sum::<f64>() / recs.len() as f64
                };
                let v = vec![
                    verdict("preservation-rate", freq >= bound, format!("{freq:.4} >= {bound:.4}")),
                    verdict("part-lengths", count(&|r| r.values[1] == 1.0) == 0, format!("[{}, {})", rc.w / 2, rc.w)),
                ];
                ("preserved", v)
            }
            Experiment::AlphaSketch => {
                let n = recs.len().max(1) as f64;
                let p = recs.iter().map(|r| r.values[0]).sum::<f64>() / n;
                let scale = 16.0 * cfg.k as f64 * cfg.f_k;
                let sigma = scale * (p * (1.0 - p) / n).sqrt();
                let ed = recs.iter().map(|r| r.oracle).max().unwrap_or(1) as f64;
                let est = scale * p;
                let v = vec![
                    verdict("lower", recs.is_empty() || ed <= est + 3.0 * sigma, format!("{ed} <= {est:.3} + 3*{sigma:.3}")),
                    verdict(
                        "upper",
                        recs.is_empty() || est <= 16.0 + 8.0 * ed * cfg.f_k + 3.0 * sigma,
                        format!("{est:.3} <= {} + 3*{sigma:.3}", 16.0 + 8.0 * ed * cfg.f_k),
                    ),
                    verdict("identity", count(&|r| r.values[1] == 1.0) == 0, "alpha(x) = alpha(x)".into()),
                ];
                ("differs", v)
            }
        }
    }
}

/// Empirical tail check on block distances: `P[X > m + 4] <= P[X > m] / 2`
/// for every `m` from the median up while at least 20 samples exceed `m`.
pub fn tail_halving(vals: &[f64]) -> (bool, String) {
    if vals.is_empty() {
        return (true, "no samples".into());
    }
    let stats = Stats::of(vals).expect("nonempty");
    let tail = |m: f64| vals.iter().filter(|&&v| v > m).count();
    let mut m = stats.median.floor();
    let mut worst: Option<(f64, usize, usize)> = None;
    while tail(m) >= 20 {
        let (a, b) = (tail(m), tail(m + 4.0));
        if 2 * b > a {
            worst.get_or_insert((m, a, b));
        }
        m += 1.0;
    }
    match worst {
        None => (true, format!("halves every +4 from m = {}", stats.median.floor())),
        Some((m, a, b)) => (false, format!("P[>{}] = {b}, P[>{m}] = {a}", m + 4.0)),
    }
}

/// A pair of strings in which every `D`-gram is distinct from the others
/// within distance `R`, at edit distance at most `K`.
fn free_pair(rng: &mut ChaCha8Rng, n: usize, rc: &RegimeConfig) -> Result<(Vec<Symbol>, Vec<Symbol>)> {
    const ALPHABET: u32 = 1 << 20;
    for _ in 0..MAX_ATTEMPTS {
        let x = random_string(rng, n, ALPHABET);
        if !distinct_grams_within(&x, rc.d, rc.r)? {
            continue;
        }
        let k = rng.random_range(1..=rc.k);
        let (y, _) = random_edits(rng, &x, k, ALPHABET);
        if distinct_grams_within(&y, rc.d, rc.r)? {
            return Ok((x, y));
        }
    }
    Err(Error::GenerationFailed { attempts: MAX_ATTEMPTS, detail: format!("no free pair of length {n}") })
}
