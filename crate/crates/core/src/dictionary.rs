//! Sign ↔ code dictionary.
//!
//! File format, one entry per line: `<sign>\t<code>`. The sign is a single
//! character or one of the escapes `\n`, `\t`, `\r`, `\\`. Blank lines are
//! skipped, as are lines starting with `#` that are not themselves a `#`
//! entry (`#\t<code>`).

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use crate::cipher::{encrypt_value, CipherParams, RandomSource};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DictionaryError {
    #[error("line {line}: sign {sign:?} defined twice")]
    DuplicateSign { line: usize, sign: char },
    #[error("line {line}: code {code} assigned twice")]
    DuplicateCode { line: usize, code: u64 },
    #[error("line {line}: expected <sign>\\t<code>")]
    MalformedLine { line: usize },
    #[error("line {line}: code must be positive")]
    NonPositiveCode { line: usize },
    #[error("plaintext range holds {available} values, {needed} needed")]
    RangeTooSmall { available: u64, needed: u64 },
    #[error("sign {0:?} not in dictionary")]
    UnknownSign(char),
    #[error("code {0} not in dictionary")]
    UnknownCode(u64),
}

/// A bijection between signs and positive codes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DictionaryMap {
    codes: BTreeMap<char, u64>,
    signs: BTreeMap<u64, char>,
}

impl DictionaryMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an entry, rejecting duplicates on either side.
    pub fn insert(&mut self, sign: char, code: u64) -> Result<(), DictionaryError> {
        if code == 0 {
            return Err(DictionaryError::NonPositiveCode { line: 0 });
        }
        if self.codes.contains_key(&sign) {
            return Err(DictionaryError::DuplicateSign { line: 0, sign });
        }
        if self.signs.contains_key(&code) {
            return Err(DictionaryError::DuplicateCode { line: 0, code });
        }
        self.codes.insert(sign, code);
        self.signs.insert(code, sign);
        Ok(())
    }

    pub fn code(&self, sign: char) -> Option<u64> {
        self.codes.get(&sign).copied()
    }

    pub fn sign(&self, code: u64) -> Option<char> {
        self.signs.get(&code).copied()
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Entries ordered by sign.
    pub fn iter(&self) -> impl Iterator<Item = (char, u64)> + '_ {
        self.codes.iter().map(|(&s, &c)| (s, c))
    }

    /// Smallest and largest code, if any.
    pub fn code_bounds(&self) -> Option<(u64, u64)> {
        Some((*self.signs.keys().next()?, *self.signs.keys().next_back()?))
    }

    /// Serializes to the dictionary file format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (sign, code) in self.iter() {
            let escaped = match sign {
                '\n' => "\\n".to_string(),
                '\t' => "\\t".to_string(),
                '\r' => "\\r".to_string(),
                '\\' => "\\\\".to_string(),
                c => c.to_string(),
            };
            writeln!(out, "{escaped}\t{code}").unwrap();
        }
        out
    }
}

fn parse_sign(field: &str) -> Option<char> {
    let mut chars = field.chars();
    let sign = match (chars.next()?, chars.next()) {
        ('\\', Some('n')) => '\n',
        ('\\', Some('t')) => '\t',
        ('\\', Some('r')) => '\r',
        ('\\', Some('\\')) => '\\',
        (c, None) => return Some(c),
        _ => return None,
    };
    chars.next().is_none().then_some(sign)
}

pub fn load_dictionary(text: &str) -> Result<DictionaryMap, DictionaryError> {
    let mut map = DictionaryMap::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if raw.trim().is_empty() || (raw.starts_with('#') && !raw.starts_with("#\t")) {
            continue;
        }
        let (sign, code) = raw
            .rsplit_once('\t')
            .ok_or(DictionaryError::MalformedLine { line })?;
        let sign = parse_sign(sign).ok_or(DictionaryError::MalformedLine { line })?;
        let code: i128 = code
            .trim()
            .parse()
            .map_err(|_| DictionaryError::MalformedLine { line })?;
        if code <= 0 {
            return Err(DictionaryError::NonPositiveCode { line });
        }
        let code = u64::try_from(code).map_err(|_| DictionaryError::MalformedLine { line })?;
        map.insert(sign, code).map_err(|e| match e {
            DictionaryError::DuplicateSign { sign, .. } => {
                DictionaryError::DuplicateSign { line, sign }
            }
            DictionaryError::DuplicateCode { code, .. } => {
                DictionaryError::DuplicateCode { line, code }
            }
            DictionaryError::NonPositiveCode { .. } => DictionaryError::NonPositiveCode { line },
            other => other,
        })?;
    }
    Ok(map)
}

/// Printable ASCII, `' '` through `'~'`.
pub fn printable_ascii() -> impl Iterator<Item = char> {
    (0x20u8..=0x7e).map(char::from)
}

/// Assigns every printable ASCII sign a distinct random code within the
/// plaintext range of `params`.
///
/// Candidate codes are drawn uniformly from the range and kept only if a
/// trial encryption under `params` succeeds; values near the top of the range
/// often admit no family with a unique common sum.
pub fn generate_default_dictionary<R: Rng + ?Sized>(
    params: &CipherParams,
    rng: &mut R,
) -> Result<DictionaryMap, DictionaryError> {
    let (lo, hi) = params.plaintext_range();
    let signs: Vec<char> = printable_ascii().collect();
    let available = hi - lo + 1;
    let needed = signs.len() as u64;
    if available < needed {
        return Err(DictionaryError::RangeTooSmall { available, needed });
    }
    let mut probe_rng = RandomSource::from_seed(rng.gen());
    let mut tried = HashSet::new();
    let mut codes = Vec::with_capacity(signs.len());
    while codes.len() < signs.len() {
        if tried.len() as u64 == available {
            return Err(DictionaryError::RangeTooSmall {
                available: codes.len() as u64,
                needed,
            });
        }
        let code = rng.gen_range(lo..=hi);
        if tried.insert(code) && encrypt_value(code, params, &mut probe_rng).is_ok() {
            codes.push(code);
        }
    }
    let mut map = DictionaryMap::new();
    for (sign, code) in signs.into_iter().zip(codes) {
        map.insert(sign, code)?;
    }
    Ok(map)
}

pub fn encode_text(text: &str, map: &DictionaryMap) -> Result<Vec<u64>, DictionaryError> {
    text.chars()
        .map(|c| map.code(c).ok_or(DictionaryError::UnknownSign(c)))
        .collect()
}

pub fn decode_codes(codes: &[u64], map: &DictionaryMap) -> Result<String, DictionaryError> {
    codes
        .iter()
        .map(|&c| map.sign(c).ok_or(DictionaryError::UnknownCode(c)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> DictionaryMap {
        load_dictionary("A\t101\nB\t102\n").unwrap()
    }

    #[test]
    fn parse_and_lookup() {
        let map = ab();
        assert_eq!(map.len(), 2);
        assert_eq!(map.code('A'), Some(101));
        assert_eq!(map.sign(102), Some('B'));
    }

    #[test]
    fn duplicates() {
        assert_eq!(
            load_dictionary("A\t101\nA\t102\n"),
            Err(DictionaryError::DuplicateSign { line: 2, sign: 'A' })
        );
        assert_eq!(
            load_dictionary("A\t101\nB\t101\n"),
            Err(DictionaryError::DuplicateCode { line: 2, code: 101 })
        );
    }

    #[test]
    fn malformed_and_non_positive() {
        assert_eq!(
            load_dictionary("A 101\n"),
            Err(DictionaryError::MalformedLine { line: 1 })
        );
        assert_eq!(
            load_dictionary("AB\t101\n"),
            Err(DictionaryError::MalformedLine { line: 1 })
        );
        assert_eq!(
            load_dictionary("A\tx\n"),
            Err(DictionaryError::MalformedLine { line: 1 })
        );
        assert_eq!(
            load_dictionary("A\t0\n"),
            Err(DictionaryError::NonPositiveCode { line: 1 })
        );
        assert_eq!(
            load_dictionary("A\t-5\n"),
            Err(DictionaryError::NonPositiveCode { line: 1 })
        );
    }

    #[test]
    fn comments_blanks_and_special_signs() {
        let text = "# header\n\n#\t35\n \t32\n\\n\t10\n\\\\\t92\n\t\t9\r\n";
        let map = load_dictionary(text).unwrap();
        assert_eq!(map.code('#'), Some(35));
        assert_eq!(map.code(' '), Some(32));
        assert_eq!(map.code('\n'), Some(10));
        assert_eq!(map.code('\\'), Some(92));
        assert_eq!(map.code('\t'), Some(9));
        assert_eq!(load_dictionary(&map.render()).unwrap(), map);
    }

    #[test]
    fn encode_decode() {
        let map = ab();
        assert_eq!(encode_text("AB", &map), Ok(vec![101, 102]));
        assert_eq!(decode_codes(&[102, 101], &map), Ok("BA".to_string()));
        assert_eq!(
            encode_text("C", &map),
            Err(DictionaryError::UnknownSign('C'))
        );
        assert_eq!(
            decode_codes(&[7], &map),
            Err(DictionaryError::UnknownCode(7))
        );
    }

    #[test]
    fn default_dictionary() {
        let params = CipherParams::new(4, 4, 2).unwrap();
        let a = generate_default_dictionary(&params, &mut RandomSource::from_seed(7)).unwrap();
        let b = generate_default_dictionary(&params, &mut RandomSource::from_seed(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 95);
        let (lo, hi) = a.code_bounds().unwrap();
        assert!(lo >= 10 && hi <= 396);
        for (_, code) in a.iter() {
            encrypt_value(code, &params, &mut RandomSource::from_seed(code)).unwrap();
        }
        assert_eq!(load_dictionary(&a.render()).unwrap(), a);
    }

    #[test]
    fn default_dictionary_needs_room() {
        let params = CipherParams::new(2, 2, 1).unwrap();
        assert_eq!(
            generate_default_dictionary(&params, &mut RandomSource::from_seed(0)),
            Err(DictionaryError::RangeTooSmall {
                available: 18,
                needed: 95
            })
        );
    }
}
