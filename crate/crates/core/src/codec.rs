//! Ciphertext digit strings and their decomposition into set families.
//!
//! A block of `L` digits under keys `(n, d)` holds `n` sets of `m = L / (n·d)`
//! items each. The block is cut into `n` equal runs, and each run into
//! `d`-digit chunks read as base-10 integers.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::solver::{ItemMultiset, SetFamily};

/// Widest supported item, in digits. `10^18` still fits in a `u64`.
pub const MAX_DIGITS: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("ciphertext contains non-digit character {found:?} at offset {offset}")]
    NonDigitCiphertext { offset: usize, found: char },
    #[error("ciphertext length {len} is not a positive multiple of n*d = {unit}")]
    LengthMismatch { len: usize, unit: usize },
    #[error("item {item} does not fit in {digits} digits")]
    ItemTooWide { item: u64, digits: usize },
    #[error("family is ragged: set {set} has {found} items, expected {expected}")]
    RaggedFamily {
        set: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid keys: {0}")]
    InvalidKeys(String),
}

/// The two private keys: number of sets `n` and digits per item `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Keys {
    n: usize,
    d: usize,
}

impl Keys {
    pub fn new(n: usize, d: usize) -> Result<Self, CodecError> {
        if n == 0 {
            return Err(CodecError::InvalidKeys("n must be at least 1".into()));
        }
        if d == 0 || d > MAX_DIGITS {
            return Err(CodecError::InvalidKeys(format!(
                "d must be in 1..={MAX_DIGITS}"
            )));
        }
        Ok(Self { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Digits in one block holding `m` items per set.
    pub fn block_len(&self, m: usize) -> usize {
        self.n * m * self.d
    }

    /// Parses a keys file: `n=<int>` and `d=<int>` lines in any order.
    /// Blank lines and `#` comments are ignored.
    pub fn parse_file(text: &str) -> Result<Self, CodecError> {
        let mut n = None;
        let mut d = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let bad = || CodecError::InvalidKeys(format!("line {}: {raw:?}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(bad)?;
            let value: usize = value.trim().parse().map_err(|_| bad())?;
            let slot = match key.trim() {
                "n" => &mut n,
                "d" => &mut d,
                _ => return Err(bad()),
            };
            if slot.replace(value).is_some() {
                return Err(CodecError::InvalidKeys(format!(
                    "duplicate key {:?}",
                    key.trim()
                )));
            }
        }
        match (n, d) {
            (Some(n), Some(d)) => Self::new(n, d),
            (None, _) => Err(CodecError::InvalidKeys("missing n".into())),
            (_, None) => Err(CodecError::InvalidKeys("missing d".into())),
        }
    }

    pub fn to_file(&self) -> String {
        format!("n={}\nd={}\n", self.n, self.d)
    }
}

/// A string of ASCII decimal digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CipherBlock(String);

impl CipherBlock {
    pub fn new(digits: impl Into<String>) -> Result<Self, CodecError> {
        let digits = digits.into();
        if let Some((offset, found)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(CodecError::NonDigitCiphertext { offset, found });
        }
        Ok(Self(digits))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl FromStr for CipherBlock {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(s)
    }
}

impl fmt::Display for CipherBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Splits a block into `keys.n()` sets of `d`-digit items.
pub fn decompose(block: &CipherBlock, keys: &Keys) -> Result<SetFamily, CodecError> {
    let len = block.len();
    let unit = keys.n * keys.d;
    if len == 0 || !len.is_multiple_of(unit) {
        return Err(CodecError::LengthMismatch { len, unit });
    }
    let run_len = len / keys.n;
    let sets = block
        .as_bytes()
        .chunks(run_len)
        .map(|run| {
            ItemMultiset::new(
                run.chunks(keys.d)
                    .map(|chunk| {
                        chunk
                            .iter()
                            .fold(0u64, |acc, &b| acc * 10 + u64::from(b - b'0'))
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(SetFamily::new(sets).expect("n >= 1"))
}

/// Concatenates every item, zero-padded to `d` digits.
pub fn compose(family: &SetFamily, d: usize) -> Result<CipherBlock, CodecError> {
    if d == 0 || d > MAX_DIGITS {
        return Err(CodecError::InvalidKeys(format!(
            "d must be in 1..={MAX_DIGITS}"
        )));
    }
    let expected = family.sets()[0].len();
    let limit = 10u64.pow(d as u32);
    let mut out = String::with_capacity(family.len() * expected * d);
    for (i, set) in family.sets().iter().enumerate() {
        if set.len() != expected || expected == 0 {
            return Err(CodecError::RaggedFamily {
                set: i,
                expected,
                found: set.len(),
            });
        }
        for &item in set.items() {
            if item >= limit {
                return Err(CodecError::ItemTooWide { item, digits: d });
            }
            out.push_str(&format!("{item:0d$}"));
        }
    }
    Ok(CipherBlock(out))
}
