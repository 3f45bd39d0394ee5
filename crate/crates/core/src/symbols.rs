//! Alphabets and symbol streams.
//!
//! Symbols are stored as indices into an [`Alphabet`]; the declared order of
//! the alphabet is the coordinate order of every probability vector over it.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<String>);

impl Alphabet {
    /// At least two distinct, non-empty symbol names without whitespace.
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        if symbols.len() < 2 {
            return Err(Error::DimensionTooSmall(symbols.len()));
        }
        let mut out: Vec<String> = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!("bad symbol name {s:?}")));
            }
            if out.iter().any(|o| o == s) {
                return Err(Error::InvalidArgument(format!("duplicate symbol {s:?}")));
            }
            out.push(s.to_string());
        }
        Ok(Alphabet(out))
    }

    /// The alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet(vec!["0".into(), "1".into()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// True when every symbol is a single character, so words can be written
    /// without separators.
    pub fn is_compact(&self) -> bool {
        self.0.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word written either with single-space separators or, for
    /// compact alphabets, as a run of characters. The empty string is `λ`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        if text.contains(char::is_whitespace) || !self.is_compact() {
            text.split_whitespace().map(|s| self.index_of(s)).collect()
        } else {
            text.chars()
                .map(|c| self.index_of(c.encode_utf8(&mut [0; 4])))
                .collect()
        }
    }

    /// Inverse of [`Alphabet::parse_word`]: compact when possible.
    pub fn format_word(&self, word: &[usize]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        word.iter()
            .map(|&i| self.name(i))
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self != other {
            return Err(Error::AlphabetMismatch {
                left: self.0.join(" "),
                right: other.0.join(" "),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" "))
    }
}

fn data_line(text: &str) -> &str {
    text.lines()
        .find(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .unwrap_or("")
}

/// A finite run of symbols over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    pub alphabet: Alphabet,
    pub symbols: Vec<usize>,
}

impl SymbolStream {
    pub fn new(alphabet: Alphabet, symbols: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s >= alphabet.len()) {
            return Err(Error::UnknownSymbol(bad.to_string()));
        }
        Ok(SymbolStream { alphabet, symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Reads the on-disk form: one line, either space separated symbols or a
    /// compact run of single-character symbols. Blank lines and lines
    /// starting with `#` before it are skipped.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let line = data_line(text);
        let symbols = alphabet.parse_word(line)?;
        Ok(SymbolStream { alphabet, symbols })
    }

    /// Parses a stream whose alphabet is not known in advance. The alphabet
    /// is the sorted set of distinct symbols seen.
    pub fn parse_inferred(text: &str) -> Result<Self> {
        let line = data_line(text).trim();
        let tokens: Vec<String> = if line.contains(char::is_whitespace) {
            line.split_whitespace().map(str::to_string).collect()
        } else {
            line.chars().map(|c| c.to_string()).collect()
        };
        let mut names = tokens.clone();
        names.sort();
        names.dedup();
        let alphabet = Alphabet::new(&names)?;
        let symbols = tokens
            .iter()
            .map(|t| alphabet.index_of(t))
            .collect::<Result<_>>()?;
        Ok(SymbolStream { alphabet, symbols })
    }

    /// The on-disk form, newline terminated.
    pub fn to_text(&self) -> String {
        let mut s = self.alphabet.format_word(&self.symbols);
        s.push('\n');
        s
    }
}
