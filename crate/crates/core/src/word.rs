//! The path semigroup on words.
//!
//! A word `w_1 ... w_n` over a totally ordered alphabet is a path visiting the
//! vertices `w_1, ..., w_n` of a complete graph with loops. Composing two paths
//! glues them when the first ends where the second starts:
//!
//! ```text
//! ua # bv = uav   if a = b
//!         = 0     otherwise
//! ```
//!
//! The zero of the semigroup is represented by `None` throughout the crate, so a
//! vanishing product simply drops out of any linear combination.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Letters are ranks in the alphabet, starting at 1.
pub type Letter = u32;

/// A nonempty word with positive letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Result of a semigroup operation: a word, or `None` for the annihilator.
pub type SemiResult = Option<Word>;

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("word", "", "words are nonempty"));
        }
        if letters.contains(&0) {
            return Err(Error::invalid("word", render_letters(&letters), "letters must be >= 1"));
        }
        Ok(Word(letters))
    }

    pub(crate) fn from_vec(letters: Vec<Letter>) -> Self {
        debug_assert!(!letters.is_empty() && !letters.contains(&0));
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> Letter {
        self.0[0]
    }

    pub fn last(&self) -> Letter {
        self.0[self.0.len() - 1]
    }

    /// Juxtaposition `uv`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Path composition. The result has length `|u| + |v| - 1` when nonzero.
    pub fn sharp(&self, other: &Word) -> SemiResult {
        if self.last() != other.first() {
            return None;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len() - 1);
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0[1..]);
        Some(Word(letters))
    }

    /// `d_k`: if `w_k = w_{k+1}`, delete position `k + 1`; otherwise zero.
    pub fn d(&self, k: usize) -> Result<SemiResult> {
        Error::check_index(k, 1, self.len() - 1)?;
        if self.0[k - 1] != self.0[k] {
            return Ok(None);
        }
        let mut letters = self.0.clone();
        letters.remove(k);
        Ok(Some(Word(letters)))
    }
}

/// Free-standing form of [`Word::sharp`].
pub fn sharp(u: &Word, v: &Word) -> SemiResult {
    u.sharp(v)
}

/// Free-standing form of [`Word::concat`].
pub fn concat(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

/// Free-standing form of [`Word::d`].
pub fn d_k(w: &Word, k: usize) -> Result<SemiResult> {
    w.d(k)
}

/// Plain digit string when every letter is below 10, comma separated otherwise.
pub(crate) fn render_letters(letters: &[Letter]) -> String {
    if letters.iter().all(|&a| a < 10) {
        letters.iter().map(|a| a.to_string()).collect()
    } else {
        letters.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Parses `"1213"`, `"1,12,3"` or `"[1,12,3]"` into letters (no validation).
pub(crate) fn parse_letters(text: &str) -> Option<Vec<Letter>> {
    let trimmed = text.trim();
    let inner = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(trimmed).trim();
    if inner.is_empty() {
        return Some(Vec::new());
    }
    if inner.contains(',') {
        inner.split(',').map(|p| p.trim().parse().ok()).collect()
    } else if inner.chars().all(|c| c.is_ascii_digit()) {
        Some(inner.chars().map(|c| c.to_digit(10).unwrap()).collect())
    } else {
        None
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_letters(&self.0))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = parse_letters(s).ok_or_else(|| Error::invalid("word", s, "expected digits or a comma list"))?;
        Word::new(letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    // a=1, b=2, c=3, d=4
    #[test]
    fn sharp_glues_matching_endpoints() {
        assert_eq!(w("21131").sharp(&w("141")), Some(w("2113141")));
        assert_eq!(w("12").sharp(&w("34")), None);
        assert_eq!(w("1").sharp(&w("1")), Some(w("1")));
    }

    #[test]
    fn d_k_deletes_repeated_letter() {
        assert_eq!(w("21131").d(2).unwrap(), Some(w("2131")));
        assert_eq!(w("123").d(1).unwrap(), None);
        assert_eq!(w("11").d(1).unwrap(), Some(w("1")));
        assert!(w("11").d(2).is_err());
        assert!(w("1").d(1).is_err());
        assert!(w("123").d(0).is_err());
    }

    #[test]
    fn concat_juxtaposes() {
        assert_eq!(w("12").concat(&w("3")), w("123"));
        assert_eq!(w("1").concat(&w("1")), w("11"));
        assert_eq!(w("211").concat(&w("31")), w("21131"));
    }

    #[test]
    fn text_form() {
        assert_eq!(w("1,12,3").to_string(), "1,12,3");
        assert_eq!(w("[1,2]").to_string(), "12");
        assert!("".parse::<Word>().is_err());
        assert!("102".parse::<Word>().is_err());
    }

    fn words_up_to(max_len: usize, alphabet: Letter) -> Vec<Word> {
        (1..=max_len)
            .flat_map(|n| {
                (0..n).map(|_| 1..=alphabet).multi_cartesian_product().map(Word::from_vec).collect::<Vec<_>>()
            })
            .collect()
    }

    #[test]
    fn sharp_is_d_of_concat() {
        let words = words_up_to(7, 4);
        for u in &words {
            for v in words.iter().filter(|v| u.len() + v.len() <= 8) {
                let via_d = u.concat(v).d(u.len()).unwrap();
                assert_eq!(u.sharp(v), via_d, "{u} # {v}");
                if let Some(r) = u.sharp(v) {
                    assert_eq!(r.len(), u.len() + v.len() - 1);
                }
            }
        }
    }

    #[test]
    fn sharp_is_associative_and_compatible_with_concat() {
        let words = words_up_to(6, 4);
        for u in &words {
            for v in words.iter().filter(|v| u.len() + v.len() <= 7) {
                for x in words.iter().filter(|x| u.len() + v.len() + x.len() <= 8) {
                    let left = u.sharp(v).and_then(|uv| uv.sharp(x));
                    let right = v.sharp(x).and_then(|vx| u.sharp(&vx));
                    assert_eq!(left, right);
                    // (uv) # x = u . (v # x)
                    assert_eq!(u.concat(v).sharp(x), v.sharp(x).map(|vx| u.concat(&vx)));
                    // (u # v) . x = u # (v x)
                    assert_eq!(u.sharp(v).map(|uv| uv.concat(x)), u.sharp(&v.concat(x)));
                }
            }
        }
    }
}
