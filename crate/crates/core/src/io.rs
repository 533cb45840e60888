//! Reading strings from files and reading/writing block files.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dimred::{block_digest, BlockString};
use crate::edit::{levenshtein, Str, Symbol};
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    /// Integer codes when every token parses as one, text otherwise.
    #[default]
    Auto,
    Text,
    Codes,
}

/// Parses file contents into a string. Text mode drops one trailing
/// newline; codes mode reads whitespace-separated integers.
pub fn parse_str(content: &str, format: InputFormat) -> Result<Str> {
    let codes = || -> Result<Str> {
        let parsed = content
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("bad code {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Str::from_codes(parsed)
    };
    let text = || {
        let body = content.strip_suffix('\n').unwrap_or(content);
        let body = body.strip_suffix('\r').unwrap_or(body);
        Str::from_text(body)
    };
    match format {
        InputFormat::Codes => codes(),
        InputFormat::Text => text(),
        InputFormat::Auto => {
            let numeric = content.split_whitespace().next().is_some()
                && content.split_whitespace().all(|t| t.parse::<u32>().is_ok());
            if numeric {
                codes()
            } else {
                text()
            }
        }
    }
}

/// Whitespace-separated codes, newline terminated.
pub fn format_codes(w: &[Symbol]) -> String {
    let mut s = w.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(" ");
    s.push('\n');
    s
}

const MAGIC: &[u8; 4] = b"EDBK";
const VERSION: u8 = 1;

/// A block sequence as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFile {
    pub c: usize,
    pub seed: u64,
    /// `(1-based offset, length, content digest)` per block.
    pub blocks: Vec<(usize, usize, u64)>,
}

impl BlockFile {
    pub fn from_blocks(b: &BlockString) -> Self {
        let blocks = b
            .ranges()
            .map(|r| (r.start + 1, r.len(), block_digest(&b.source()[r])))
            .collect();
        BlockFile { c: b.c(), seed: b.seed(), blocks }
    }

    pub fn digests(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.2).collect()
    }
}

/// TSV: a `#blocks` header with `c` and `seed`, then one
/// `offset<TAB>length<TAB>digest` line per block.
pub fn blocks_to_tsv(b: &BlockString) -> String {
    let f = BlockFile::from_blocks(b);
    let mut s = format!("#blocks\tc={}\tseed={}\n", f.c, f.seed);
    for (off, len, dig) in &f.blocks {
        writeln!(s, "{off}\t{len}\t{dig:016x}").unwrap();
    }
    s
}

/// Binary: `EDBK`, version byte, `c` (u32), seed (u64), block count (u64),
/// then per block its offset (u64), length (u32) and letters (u32 each).
/// Integers are little-endian.
pub fn blocks_to_binary(b: &BlockString) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&(b.c() as u32).to_le_bytes());
    out.extend_from_slice(&b.seed().to_le_bytes());
    out.extend_from_slice(&(b.len() as u64).to_le_bytes());
    for r in b.ranges() {
        out.extend_from_slice(&(r.start as u64 + 1).to_le_bytes());
        out.extend_from_slice(&(r.len() as u32).to_le_bytes());
        for s in &b.source()[r] {
            out.extend_from_slice(&s.0.to_le_bytes());
        }
    }
    out
}

/// Reads either block format.
pub fn read_block_file(bytes: &[u8]) -> Result<BlockFile> {
    if bytes.starts_with(MAGIC) {
        read_binary(bytes)
    } else {
        let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?;
        read_tsv(text)
    }
}

fn read_tsv(text: &str) -> Result<BlockFile> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty block file".into()))?;
    let mut fields = header.split('\t');
    if fields.next() != Some("#blocks") {
        return Err(Error::Parse(format!("bad block header {header:?}")));
    }
    let (mut c, mut seed) = (None, None);
    for f in fields {
        match f.split_once('=') {
            Some(("c", v)) => c = v.parse().ok(),
            Some(("seed", v)) => seed = v.parse().ok(),
            _ => return Err(Error::Parse(format!("bad header field {f:?}"))),
        }
    }
    let (Some(c), Some(seed)) = (c, seed) else {
        return Err(Error::Parse("block header needs c= and seed=".into()));
    };
    let mut blocks = Vec::new();
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let bad = || Error::Parse(format!("block line {}: {line:?}", i + 2));
        let mut cols = line.split('\t');
        let off = cols.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let len = cols.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
        let dig = cols.next().and_then(|v| u64::from_str_radix(v, 16).ok()).ok_or_else(bad)?;
        blocks.push((off, len, dig));
    }
    Ok(BlockFile { c, seed, blocks })
}

fn read_binary(bytes: &[u8]) -> Result<BlockFile> {
    let mut at = MAGIC.len();
    let mut take = |n: usize| -> Result<&[u8]> {
        let s = bytes.get(at..at + n).ok_or_else(|| Error::Parse("truncated block file".into()))?;
        at += n;
        Ok(s)
    };
    let version = take(1)?[0];
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported block file version {version}")));
    }
    let c = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    let seed = u64::from_le_bytes(take(8)?.try_into().unwrap());
    let count = u64::from_le_bytes(take(8)?.try_into().unwrap());
    let mut blocks = Vec::new();
    for _ in 0..count {
        let off = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
        let len = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
        let raw = take(len.checked_mul(4).ok_or_else(|| Error::Parse("block too long".into()))?)?;
        let letters: Vec<Symbol> =
            raw.chunks_exact(4).map(|b| Symbol(u32::from_le_bytes(b.try_into().unwrap()))).collect();
        blocks.push((off, len, block_digest(&letters)));
    }
    Ok(BlockFile { c, seed, blocks })
}

/// Block-level edit distance between two stored block sequences.
pub fn block_file_distance(a: &BlockFile, b: &BlockFile) -> Result<usize> {
    if a.c != b.c {
        return Err(invalid(format!("block files use different c: {} vs {}", a.c, b.c)));
    }
    Ok(levenshtein(&a.digests(), &b.digests()))
}
