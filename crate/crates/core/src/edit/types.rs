use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on string length accepted by the exact algorithms.
pub const DEFAULT_MAX_LEN: usize = 1 << 20;

/// First code of the reserved dummy range. User symbols are always below it.
pub const DUMMY_BASE: u32 = 1 << 31;

/// A letter of the alphabet, identified by its code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(pub u32);

impl Symbol {
    /// The `index`-th reserved dummy letter. Dummies never compare equal to
    /// user symbols or to each other.
    pub fn dummy(index: u32) -> Self {
        Symbol(DUMMY_BASE | (index & !DUMMY_BASE))
    }

    pub fn is_dummy(self) -> bool {
        self.0 >= DUMMY_BASE
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_dummy() {
            write!(f, "#{}", self.0 & !DUMMY_BASE)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl From<u32> for Symbol {
    fn from(code: u32) -> Self {
        Symbol(code)
    }
}

/// An owned string of user symbols.
///
/// Construction through [`Str::from_codes`] or [`Str::from_text`] rejects
/// dummy symbols and strings longer than [`DEFAULT_MAX_LEN`].
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Str(Vec<Symbol>);

impl Str {
    pub fn new() -> Self {
        Str(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Result<Self> {
        Self::from_symbols_with_max(symbols, DEFAULT_MAX_LEN)
    }

    pub fn from_symbols_with_max(symbols: Vec<Symbol>, max_len: usize) -> Result<Self> {
        check_len(symbols.len(), max_len)?;
        if let Some(pos) = symbols.iter().position(|s| s.is_dummy()) {
            return Err(Error::InvalidArgument(format!(
                "symbol at position {} uses reserved code {}",
                pos + 1,
                symbols[pos].0
            )));
        }
        Ok(Str(symbols))
    }

    pub fn from_codes(codes: impl IntoIterator<Item = u32>) -> Result<Self> {
        Self::from_symbols(codes.into_iter().map(Symbol).collect())
    }

    /// One symbol per Unicode scalar value.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_codes(text.chars().map(|c| c as u32))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn codes(&self) -> Vec<u32> {
        self.0.iter().map(|s| s.0).collect()
    }

    /// Renders as text when every symbol is a printable scalar value,
    /// otherwise as whitespace-separated codes.
    pub fn to_display_string(&self) -> String {
        let printable = self
            .0
            .iter()
            .all(|s| char::from_u32(s.0).is_some_and(|c| !c.is_control() && !c.is_whitespace()));
        if printable {
            self.0.iter().filter_map(|s| char::from_u32(s.0)).collect()
        } else {
            self.0.iter().map(|s| s.0.to_string()).collect::<Vec<_>>().join(" ")
        }
    }
}

impl Deref for Str {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl AsRef<[Symbol]> for Str {
    fn as_ref(&self) -> &[Symbol] {
        &self.0
    }
}

impl fmt::Debug for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Str({:?})", self.to_display_string())
    }
}

pub(crate) fn check_len(len: usize, max: usize) -> Result<()> {
    if len > max {
        Err(Error::Capacity { len, max })
    } else {
        Ok(())
    }
}

/// Shorthand used across tests and examples: one symbol per char.
pub fn syms(text: &str) -> Vec<Symbol> {
    text.chars().map(|c| Symbol(c as u32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dummy_range_is_disjoint() {
        assert!(Symbol::dummy(0).is_dummy());
        assert!(Symbol::dummy(7) != Symbol::dummy(8));
        assert!(!Symbol(u32::from(b'a')).is_dummy());
    }

    #[test]
    fn rejects_reserved_codes() {
        assert!(matches!(
            Str::from_codes([1, DUMMY_BASE + 3]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn rejects_oversized_input() {
        let err = Str::from_symbols_with_max(vec![Symbol(1); 5], 4).unwrap_err();
        assert_eq!(err, Error::Capacity { len: 5, max: 4 });
    }

    #[test]
    fn display_falls_back_to_codes() {
        assert_eq!(Str::from_text("abc").unwrap().to_display_string(), "abc");
        assert_eq!(Str::from_codes([0, 1, 2]).unwrap().to_display_string(), "0 1 2");
    }
}
