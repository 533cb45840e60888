use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use edkit::align::{align, AlignConfig, BandedEstimator, Estimator, ExactEstimator};
use edkit::corpus::{gen_corpus, CorpusSpec};
use edkit::dimred::{dimred_general, dimred_perm};
use edkit::experiment::{run_experiment, Experiment, ExperimentConfig};
use edkit::io::{block_file_distance, blocks_to_binary, blocks_to_tsv, format_codes, parse_str, read_block_file, InputFormat};
use edkit::lowregime::{choose_params, naive_inner, primary_embed, RegimeRandomness};
use edkit::periodic::maximal_periodic_substrings;
use edkit::ulam::{decode_alignment, hamming, ulam_embed, SparseEmbedding};
use edkit::{banded_distance, edit_distance_adaptive, Banded, Error, Str};

#[derive(Parser)]
#[command(name = "ed", version, about = "Edit distance alignment, embeddings and dimension reduction")]
struct Cli {
    /// Master seed (64-bit decimal).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// How to read input strings.
    #[arg(long, global = true, value_enum, default_value_t = Input::Auto)]
    input: Input,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Input {
    Auto,
    Text,
    Codes,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact edit distance, or banded with --band.
    Dist {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        band: Option<usize>,
    },
    /// Recover an edit script using only distance estimates.
    Align {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 8)]
        m: usize,
        /// `exact` or `banded:K`.
        #[arg(long, default_value = "exact")]
        estimator: String,
    },
    #[command(subcommand)]
    Ulam(UlamCmd),
    #[command(subcommand)]
    Periodic(PeriodicCmd),
    #[command(subcommand)]
    Lowregime(LowCmd),
    /// Cut a string into blocks, or compare two block files with `dist`.
    Dimred(DimredArgs),
    /// Generate a corpus.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        alphabet: u32,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        d: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
    },
    /// Run an experiment; exits nonzero if a verdict fails.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum UlamCmd {
    /// Embed a permutation; prints the sparse embedding as JSON.
    Embed {
        file: PathBuf,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        /// Level count; defaults to the least one valid for the input length.
        #[arg(long)]
        m: Option<u32>,
    },
    /// Hamming distance between two embeddings.
    Ham { a: PathBuf, b: PathBuf },
    /// Edit script between the permutations behind two embeddings.
    Decode { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand)]
enum PeriodicCmd {
    /// Maximal substrings of length at least 8c with period at most c.
    Scan {
        file: PathBuf,
        #[arg(long)]
        c: usize,
    },
}

#[derive(Args, Clone, Copy)]
struct RegimeArgs {
    #[arg(long = "K")]
    k: usize,
    #[arg(long = "D")]
    d: usize,
    #[arg(long = "C")]
    c: usize,
}

#[derive(Subcommand)]
enum LowCmd {
    /// Prints the embedding as hex.
    Embed {
        file: PathBuf,
        #[command(flatten)]
        params: RegimeArgs,
        /// Longest input the shared randomness covers; defaults to the input length.
        #[arg(long)]
        capacity: Option<usize>,
    },
    /// Edit-preservation trials on periodic-free pairs, as CSV.
    PreserveTest {
        #[command(flatten)]
        params: RegimeArgs,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// String length; defaults to four windows.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct DimredArgs {
    #[command(subcommand)]
    cmd: Option<DimredCmd>,
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    c: usize,
    /// Use the permutation map.
    #[arg(long)]
    perm: bool,
    /// Length-prefixed binary instead of TSV.
    #[arg(long)]
    binary: bool,
}

#[derive(Subcommand)]
enum DimredCmd {
    /// Edit distance between two block files.
    Dist { a: PathBuf, b: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    RandomString,
    RandomPermutation,
    EditedPair,
    PeriodicFree,
}

#[derive(Args)]
struct BenchArgs {
    /// aligner-ratio, ulam-distortion, dimred-distortion, dimred-length,
    /// lowregime-preserve or alpha-sketch.
    experiment: String,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    alphabet: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    /// Write the summary JSON here (stderr otherwise) when emitting CSV.
    #[arg(long)]
    summary: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Run(Error),
    Io(String),
    Verdict,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verdict) => ExitCode::from(3),
    }
}

fn read_file(path: &Path) -> Res<Vec<u8>> {
    fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_str(cli: &Cli, path: &Path) -> Res<Str> {
    let text = String::from_utf8(read_file(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let fmt = match cli.input {
        Input::Auto => InputFormat::Auto,
        Input::Text => InputFormat::Text,
        Input::Codes => InputFormat::Codes,
    };
    Ok(parse_str(&text, fmt)?)
}

fn read_embedding(path: &Path) -> Res<SparseEmbedding> {
    serde_json::from_slice(&read_file(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, bytes: &[u8]) -> Res<()> {
    match &cli.out {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

fn emit_value(cli: &Cli, key: &str, value: serde_json::Value) -> Res<()> {
    match cli.format {
        Format::Csv => match value {
            serde_json::Value::String(s) => emit(cli, format!("{s}\n").as_bytes()),
            other => emit(cli, format!("{other}\n").as_bytes()),
        },
        Format::Json => emit(cli, format!("{}\n", json!({ key: value })).as_bytes()),
    }
}

fn run(cli: &Cli) -> Res<()> {
    match &cli.cmd {
        Cmd::Dist { a, b, band } => {
            let (x, y) = (read_str(cli, a)?, read_str(cli, b)?);
            match band {
                None => emit_value(cli, "distance", edit_distance_adaptive(&x, &y)?.into()),
                Some(k) => match banded_distance(&x, &y, *k)? {
                    Banded::Within(d) => emit_value(cli, "distance", d.into()),
                    Banded::Exceeds => emit_value(cli, "distance", format!(">{k}").into()),
                },
            }
        }
        Cmd::Align { a, b, m, estimator } => {
            let (x, y) = (read_str(cli, a)?, read_str(cli, b)?);
            let est: Box<dyn Estimator> = match estimator.split_once(':') {
                None if estimator == "exact" => Box::new(ExactEstimator),
                Some(("banded", k)) => Box::new(BandedEstimator {
                    k: k.parse().map_err(|_| Failure::Usage(format!("bad band in {estimator:?}")))?,
                }),
                _ => return Err(Failure::Usage(format!("unknown estimator {estimator:?}; use exact or banded:K"))),
            };
            let rep = align(&x, &y, *m, &est, &AlignConfig { seed: cli.seed, ..AlignConfig::default() })?;
            let mut out = rep.script.to_jsonl();
            out.push_str(&json!({ "levels": rep.levels, "calls": rep.estimator_calls, "cost": rep.cost() }).to_string());
            out.push('\n');
            emit(cli, out.as_bytes())
        }
        Cmd::Ulam(UlamCmd::Embed { file, eps, m }) => {
            let w = read_str(cli, file)?;
            let e = ulam_embed(&w, *eps, cli.seed, *m)?;
            let text = serde_json::to_string(&e).expect("embedding serializes");
            emit(cli, format!("{text}\n").as_bytes())
        }
        Cmd::Ulam(UlamCmd::Ham { a, b }) => {
            let d = hamming(&read_embedding(a)?, &read_embedding(b)?)?;
            emit_value(cli, "hamming", d.into())
        }
        Cmd::Ulam(UlamCmd::Decode { a, b }) => {
            let s = decode_alignment(&read_embedding(a)?, &read_embedding(b)?)?;
            emit(cli, s.to_jsonl().as_bytes())
        }
        Cmd::Periodic(PeriodicCmd::Scan { file, c }) => {
            let spans = maximal_periodic_substrings(&read_str(cli, file)?, *c)?;
            match cli.format {
                Format::Json => emit(cli, format!("{}\n", serde_json::to_string(&spans).unwrap()).as_bytes()),
                Format::Csv => {
                    let mut s = String::from("start\tend\tperiod\n");
                    for sp in &spans {
                        s.push_str(&format!("{}\t{}\t{}\n", sp.start, sp.end, sp.period));
                    }
                    emit(cli, s.as_bytes())
                }
            }
        }
        Cmd::Lowregime(LowCmd::Embed { file, params, capacity }) => {
            let w = read_str(cli, file)?;
            let cfg = choose_params(params.k, params.d, params.c)?;
            let rnd = RegimeRandomness::new(cli.seed, &cfg, capacity.unwrap_or(w.len()))?;
            let bits = primary_embed(&w, &cfg, &rnd, &naive_inner(cfg.w)?)?;
            emit(cli, format!("{}\n", bits.to_hex()).as_bytes())
        }
        Cmd::Lowregime(LowCmd::PreserveTest { params, trials, n }) => {
            let cfg = ExperimentConfig {
                trials: *trials,
                seed: cli.seed,
                n: n.unwrap_or(0),
                k: params.k,
                d: params.d,
                conf: params.c,
                ..Experiment::LowregimePreserve.default_config()
            };
            let out = run_experiment(Experiment::LowregimePreserve, &cfg)?;
            let mut s = String::from("pair,ed,preserved\n");
            for r in &out.records {
                s.push_str(&format!("{},{},{}\n", r.pair, r.oracle, r.values[0] == 1.0));
            }
            emit(cli, s.as_bytes())
        }
        Cmd::Dimred(args) => dimred(cli, args),
        Cmd::Gen { kind, n, alphabet, k, d, r } => {
            let (n, alphabet, k, d, r, seed) = (*n, *alphabet, *k, *d, *r, cli.seed);
            let spec = match kind {
                GenKind::RandomString => CorpusSpec::RandomString { n, alphabet, seed },
                GenKind::RandomPermutation => CorpusSpec::RandomPermutation { n, seed },
                GenKind::EditedPair => CorpusSpec::EditedPair { n, alphabet, k, seed },
                GenKind::PeriodicFree => CorpusSpec::PeriodicFree { n, alphabet, d, r, seed },
            };
            let c = gen_corpus(&spec)?;
            match cli.format {
                Format::Json => {
                    let codes = |w: &[edkit::Symbol]| w.iter().map(|s| s.0).collect::<Vec<_>>();
                    let doc = json!({
                        "spec": spec,
                        "x": codes(&c.x),
                        "y": c.y.as_deref().map(codes),
                        "script": c.script.as_ref().map(|s| s.to_jsonl()),
                    });
                    emit(cli, format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()).as_bytes())
                }
                Format::Csv => match (&cli.out, &c.y, &c.script) {
                    (Some(dir), Some(y), Some(script)) => {
                        fs::create_dir_all(dir)?;
                        fs::write(dir.join("x.txt"), format_codes(&c.x))?;
                        fs::write(dir.join("y.txt"), format_codes(y))?;
                        fs::write(dir.join("script.jsonl"), script.to_jsonl())?;
                        Ok(())
                    }
                    (None, Some(y), _) => emit(cli, format!("{}{}", format_codes(&c.x), format_codes(y)).as_bytes()),
                    _ => emit(cli, format_codes(&c.x).as_bytes()),
                },
            }
        }
        Cmd::Bench(args) => bench(cli, args),
    }
}

fn dimred(cli: &Cli, args: &DimredArgs) -> Res<()> {
    if let Some(DimredCmd::Dist { a, b }) = &args.cmd {
        let fa = read_block_file(&read_file(a)?)?;
        let fb = read_block_file(&read_file(b)?)?;
        return emit_value(cli, "block_distance", block_file_distance(&fa, &fb)?.into());
    }
    let file = args.file.as_ref().ok_or_else(|| Failure::Usage("dimred needs an input file".into()))?;
    let w = read_str(cli, file)?;
    let blocks = if args.perm { dimred_perm(&w, args.c, cli.seed)? } else { dimred_general(&w, args.c, cli.seed)? };
    if args.binary {
        emit(cli, &blocks_to_binary(&blocks))
    } else {
        emit(cli, blocks_to_tsv(&blocks).as_bytes())
    }
}

fn bench(cli: &Cli, args: &BenchArgs) -> Res<()> {
    let exp: Experiment = args.experiment.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut cfg = exp.default_config();
    cfg.seed = cli.seed;
    cfg.trials = args.trials.unwrap_or(cfg.trials);
    cfg.n = args.n.unwrap_or(cfg.n);
    cfg.k = args.k.unwrap_or(cfg.k);
    cfg.alphabet = args.alphabet.unwrap_or(cfg.alphabet);
    cfg.m = args.m.unwrap_or(cfg.m);
    cfg.c = args.c.unwrap_or(cfg.c);
    cfg.eps = args.eps.unwrap_or(cfg.eps);
    let out = run_experiment(exp, &cfg)?;
    match cli.format {
        Format::Csv => {
            emit(cli, out.to_csv().as_bytes())?;
            let summary = out.summary_json() + "\n";
            match &args.summary {
                Some(p) => fs::write(p, summary)?,
                None => eprint!("{summary}"),
            }
        }
        Format::Json => {
            let doc = json!({ "summary": out.summary, "records": out.records });
            emit(cli, format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()).as_bytes())?;
        }
    }
    if out.passed() {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}
