use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use edkit::io::{parse_str, read_block_file, InputFormat};
use edkit::{apply_script, edit_distance, syms, EditScript};
use serde_json::Value;
use tempfile::TempDir;

fn ed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ed")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = ed(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dist_plain_banded_and_json() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a", "kitten\n");
    let b = write(&dir, "b", "sitting\n");
    assert_eq!(ok(&["dist", s(&a), s(&b)]).trim(), "3");
    assert_eq!(ok(&["dist", "--band", "5", s(&a), s(&b)]).trim(), "3");
    assert_eq!(ok(&["dist", "--band", "2", s(&a), s(&b)]).trim(), ">2");
    let v: Value = serde_json::from_str(&ok(&["--format", "json", "dist", s(&a), s(&b)])).unwrap();
    assert_eq!(v["distance"], 3);
}

#[test]
fn input_modes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a", "1 2 3\n");
    let b = write(&dir, "b", "1 3\n");
    assert_eq!(ok(&["dist", s(&a), s(&b)]).trim(), "1");
    // as text the files differ in "2 " plus the space
    assert_eq!(ok(&["--input", "text", "dist", s(&a), s(&b)]).trim(), "2");
    let bad = write(&dir, "bad", "1 x\n");
    let out = ed(&["--input", "codes", "dist", s(&bad), s(&b)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn align_emits_valid_script_and_stats() {
    let dir = TempDir::new().unwrap();
    let x = "the quick brown fox jumps over the lazy dog";
    let y = "the quack brown fax jumps over a lazy dog!";
    let a = write(&dir, "a", &format!("{x}\n"));
    let b = write(&dir, "b", &format!("{y}\n"));
    for est in ["exact", "banded:64"] {
        let out = ok(&["align", "--m", "4", "--estimator", est, s(&a), s(&b)]);
        let lines: Vec<&str> = out.lines().collect();
        let stats: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
        let script = EditScript::read_jsonl(lines[..lines.len() - 1].join("\n").as_bytes()).unwrap();
        assert_eq!(apply_script(&syms(x), &script).unwrap(), syms(y));
        assert_eq!(stats["cost"].as_u64().unwrap() as usize, script.len());
        assert!(script.len() >= edit_distance(&syms(x), &syms(y)).unwrap());
        assert!(stats["calls"].as_u64().unwrap() > 0);
    }
    let out = ed(&["align", "--estimator", "fuzzy", s(&a), s(&b)]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn ulam_embed_ham_decode() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x", "3 0 4 1 5 2 6 7\n");
    let y = write(&dir, "y", "3 0 1 5 2 4 6 8\n");
    let ex = dir.path().join("ex.json");
    let ey = dir.path().join("ey.json");
    ok(&["--out", s(&ex), "--seed", "5", "ulam", "embed", s(&x)]);
    ok(&["--out", s(&ey), "--seed", "5", "ulam", "embed", s(&y)]);
    let v: Value = serde_json::from_slice(&fs::read(&ex).unwrap()).unwrap();
    assert_eq!(v["seed"], 5);
    let ham: usize = ok(&["ulam", "ham", s(&ex), s(&ey)]).trim().parse().unwrap();
    let px = parse_str("3 0 4 1 5 2 6 7", InputFormat::Codes).unwrap();
    let py = parse_str("3 0 1 5 2 4 6 8", InputFormat::Codes).unwrap();
    assert!(ham >= edit_distance(&px, &py).unwrap());
    let script = EditScript::read_jsonl(ok(&["ulam", "decode", s(&ex), s(&ey)]).as_bytes()).unwrap();
    assert_eq!(script.len(), ham);
    assert_eq!(apply_script(&px, &script).unwrap(), py.into_symbols());

    let other = dir.path().join("other.json");
    ok(&["--out", s(&other), "--seed", "6", "ulam", "embed", s(&y)]);
    assert_eq!(ed(&["ulam", "ham", s(&ex), s(&other)]).status.code(), Some(1));
    let dup = write(&dir, "dup", "1 2 1\n");
    assert_eq!(ed(&["ulam", "embed", s(&dup)]).status.code(), Some(1));
}

#[test]
fn periodic_scan_tsv_and_json() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w", &format!("xy{}zq{}\n", "ab".repeat(10), "c".repeat(17)));
    let out = ok(&["periodic", "scan", "--c", "2", s(&f)]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "start\tend\tperiod");
    assert_eq!(&rows[1..], ["3\t22\t2", "25\t41\t1"]);
    let v: Value = serde_json::from_str(&ok(&["--format", "json", "periodic", "scan", "--c", "2", s(&f)])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn dimred_formats_and_dist() {
    let dir = TempDir::new().unwrap();
    let x = "abracadabra alakazam abracadabra";
    let a = write(&dir, "a", &format!("{x}\n"));
    let b = write(&dir, "b", "abracadabra alakazoo abracadabra\n");
    let tsv = dir.path().join("a.tsv");
    let bin = dir.path().join("a.bin");
    let btsv = dir.path().join("b.tsv");
    ok(&["--seed", "9", "--out", s(&tsv), "dimred", "--c", "2", s(&a)]);
    ok(&["--seed", "9", "--out", s(&bin), "dimred", "--c", "2", "--binary", s(&a)]);
    ok(&["--seed", "9", "--out", s(&btsv), "dimred", "--c", "2", s(&b)]);
    let t = read_block_file(&fs::read(&tsv).unwrap()).unwrap();
    let bb = read_block_file(&fs::read(&bin).unwrap()).unwrap();
    assert_eq!(t, bb);
    assert_eq!((t.c, t.seed), (2, 9));
    assert_eq!(t.blocks.iter().map(|b| b.1).sum::<usize>(), x.chars().count());
    assert!(fs::read_to_string(&tsv).unwrap().starts_with("#blocks\tc=2\tseed=9\n"));
    assert_eq!(ok(&["dimred", "dist", s(&tsv), s(&bin)]).trim(), "0");
    let d: usize = ok(&["dimred", "dist", s(&tsv), s(&btsv)]).trim().parse().unwrap();
    assert!(d >= 1);

    let c4 = dir.path().join("c4.tsv");
    ok(&["--seed", "9", "--out", s(&c4), "dimred", "--c", "4", s(&a)]);
    assert_eq!(ed(&["dimred", "dist", s(&tsv), s(&c4)]).status.code(), Some(1));

    let p = write(&dir, "p", "5 3 9 1 0 7 2 8 4 6\n");
    let blocks = read_block_file(ok(&["dimred", "--perm", "--c", "4", s(&p)]).as_bytes()).unwrap();
    assert!(blocks.blocks.iter().all(|b| b.1 <= 4));
}

#[test]
fn gen_writes_pairs_and_documents() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("pair");
    ok(&["--seed", "3", "--out", s(&out), "gen", "edited-pair", "--n", "50", "--k", "4"]);
    let x = parse_str(&fs::read_to_string(out.join("x.txt")).unwrap(), InputFormat::Codes).unwrap();
    let y = parse_str(&fs::read_to_string(out.join("y.txt")).unwrap(), InputFormat::Codes).unwrap();
    let script = EditScript::read_jsonl(fs::read(out.join("script.jsonl")).unwrap().as_slice()).unwrap();
    assert_eq!(x.len(), 50);
    assert!(script.len() <= 4);
    assert_eq!(apply_script(&x, &script).unwrap(), y.into_symbols());

    let perm = ok(&["gen", "random-permutation", "--n", "30"]);
    let mut codes: Vec<u32> = perm.split_whitespace().map(|t| t.parse().unwrap()).collect();
    codes.sort_unstable();
    assert_eq!(codes, (0..30).collect::<Vec<_>>());

    let doc: Value = serde_json::from_str(&ok(&["--format", "json", "gen", "random-string", "--n", "12", "--alphabet", "2"])).unwrap();
    assert!(doc.is_object());

    let free = ok(&["gen", "periodic-free", "--n", "200", "--alphabet", "64", "--d", "8", "--r", "4"]);
    assert_eq!(free.split_whitespace().count(), 200);
}

#[test]
fn lowregime_embed_and_preserve_test() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "w", &format!("{}\n", (0..300).map(|i| (i * 7919 % 1009).to_string()).collect::<Vec<_>>().join(" ")));
    let hex = ok(&["lowregime", "embed", "--K", "1", "--D", "4", "--C", "1", s(&f)]);
    let hex = hex.trim();
    assert!(!hex.is_empty() && hex.chars().all(|c| c.is_ascii_hexdigit()));
    assert_eq!(ok(&["lowregime", "embed", "--K", "1", "--D", "4", "--C", "1", s(&f)]).trim(), hex);

    let csv = ok(&["lowregime", "preserve-test", "--K", "1", "--D", "4", "--C", "1", "--trials", "5"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "pair,ed,preserved");
    assert_eq!(rows.len(), 6);
    for r in &rows[1..] {
        let cols: Vec<&str> = r.split(',').collect();
        assert!(cols[1].parse::<usize>().unwrap() <= 1);
        assert!(matches!(cols[2], "true" | "false"));
    }
}

#[test]
fn bench_outputs_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let csv = ok(&["bench", "alpha-sketch", "--trials", "0"]);
    assert_eq!(csv.lines().count(), 1);
    assert!(csv.starts_with("experiment,pair,seed,oracle,"));

    let run = |name: &str| {
        let out = dir.path().join(format!("{name}.csv"));
        let sum = dir.path().join(format!("{name}.json"));
        let args = ["--seed", "2", "--out", s(&out), "bench", "ulam-distortion", "--trials", "20", "--summary", s(&sum)];
        let status = ed(&args).status;
        (status.code(), fs::read(&out).unwrap(), fs::read(&sum).unwrap())
    };
    let (code, csv1, sum1) = run("one");
    let (_, csv2, sum2) = run("two");
    assert_eq!(code, Some(0));
    assert_eq!(csv1, csv2);
    assert_eq!(sum1, sum2);
    assert_eq!(String::from_utf8(csv1).unwrap().lines().count(), 21);
    let summary: Value = serde_json::from_slice(&sum1).unwrap();
    assert_eq!(summary["pass"], true);

    let json: Value = serde_json::from_str(&ok(&["--format", "json", "bench", "dimred-length", "--trials", "3", "--n", "200"])).unwrap();
    assert_eq!(json["records"].as_array().unwrap().len(), 3);
    assert!(json["summary"]["verdicts"].is_array());

    assert_eq!(ed(&["bench", "nope"]).status.code(), Some(2));
    assert_eq!(ed(&["dist"]).status.code(), Some(2));
    assert_eq!(ed(&["dist", "/no/such/file", "/no/such/file"]).status.code(), Some(1));
}
