use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::types::Symbol;
use crate::error::{Error, Result};

/// A single edit. Positions are 1-based against the string as it stands
/// when the op is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EditOp {
    /// Insert `symbol` so that it ends up at `pos`; valid for `1..=len+1`.
    Insert { pos: usize, symbol: Symbol },
    Delete { pos: usize },
    Substitute { pos: usize, symbol: Symbol },
}

impl EditOp {
    pub fn pos(&self) -> usize {
        match *self {
            EditOp::Insert { pos, .. } | EditOp::Delete { pos } | EditOp::Substitute { pos, .. } => pos,
        }
    }
}

/// Ordered edits, applied left to right to the evolving string.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
}

impl EditScript {
    pub fn new(ops: Vec<EditOp>) -> Self {
        EditScript { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Rewrites every substitution as a deletion followed by an insertion
    /// at the same position. The result uses only indels and transforms the
    /// same source into the same target.
    pub fn expand_substitutions(&self) -> EditScript {
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            match *op {
                EditOp::Substitute { pos, symbol } => {
                    ops.push(EditOp::Delete { pos });
                    ops.push(EditOp::Insert { pos, symbol });
                }
                other => ops.push(other),
            }
        }
        EditScript { ops }
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for op in &self.ops {
            serde_json::to_writer(&mut out, &OpRecord::from(*op))?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("serde_json emits UTF-8")
    }

    /// Parses one op per non-empty line. Lines that are JSON objects without
    /// an `op` field (for example trailing stats records) are skipped.
    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self> {
        let mut ops = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let value: serde_json::Value = serde_json::from_str(line)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if value.get("op").is_none() {
                continue;
            }
            let rec: OpRecord = serde_json::from_value(value)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            ops.push(rec.try_into().map_err(|e: String| Error::Parse(format!("line {}: {e}", lineno + 1)))?);
        }
        Ok(EditScript { ops })
    }
}

impl FromIterator<EditOp> for EditScript {
    fn from_iter<I: IntoIterator<Item = EditOp>>(iter: I) -> Self {
        EditScript { ops: iter.into_iter().collect() }
    }
}

/// Wire form of one op: `{"op":"I|D|S","pos":k,"sym":c}`.
#[derive(Debug, Serialize, Deserialize)]
struct OpRecord {
    op: String,
    pos: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    sym: Option<u32>,
}

impl From<EditOp> for OpRecord {
    fn from(op: EditOp) -> Self {
        match op {
            EditOp::Insert { pos, symbol } => OpRecord { op: "I".into(), pos, sym: Some(symbol.0) },
            EditOp::Delete { pos } => OpRecord { op: "D".into(), pos, sym: None },
            EditOp::Substitute { pos, symbol } => OpRecord { op: "S".into(), pos, sym: Some(symbol.0) },
        }
    }
}

impl TryFrom<OpRecord> for EditOp {
    type Error = String;

    fn try_from(rec: OpRecord) -> std::result::Result<Self, String> {
        let need_sym = || rec.sym.map(Symbol).ok_or_else(|| format!("op {} needs a sym", rec.op));
        match rec.op.as_str() {
            "I" => Ok(EditOp::Insert { pos: rec.pos, symbol: need_sym()? }),
            "D" => Ok(EditOp::Delete { pos: rec.pos }),
            "S" => Ok(EditOp::Substitute { pos: rec.pos, symbol: need_sym()? }),
            other => Err(format!("unknown op {other:?}")),
        }
    }
}

/// Applies `script` to `x` left to right.
pub fn apply_script(x: &[Symbol], script: &EditScript) -> Result<Vec<Symbol>> {
    let mut cur = x.to_vec();
    for (index, op) in script.ops.iter().enumerate() {
        let len = cur.len();
        let bad = |reason: String| Error::InvalidScript { index, reason };
        match *op {
            EditOp::Insert { pos, symbol } => {
                if pos == 0 || pos > len + 1 {
                    return Err(bad(format!("insert at {pos} outside 1..={}", len + 1)));
                }
                cur.insert(pos - 1, symbol);
            }
            EditOp::Delete { pos } => {
                if pos == 0 || pos > len {
                    return Err(bad(format!("delete at {pos} outside 1..={len}")));
                }
                cur.remove(pos - 1);
            }
            EditOp::Substitute { pos, symbol } => {
                if pos == 0 || pos > len {
                    return Err(bad(format!("substitute at {pos} outside 1..={len}")));
                }
                cur[pos - 1] = symbol;
            }
        }
    }
    Ok(cur)
}
