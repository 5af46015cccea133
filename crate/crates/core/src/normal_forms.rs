//! Normalization maps from words to labels (`std`, `pack`, `park`) and the
//! label types they produce.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::word::{parse_letters, render_letters, Letter};

fn render_list(letters: &[Letter]) -> String {
    format!("[{}]", letters.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<Letter>);

impl Permutation {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("permutation", "[]", "permutations are nonempty"));
        }
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for &a in &letters {
            let a = a as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::invalid(
                    "permutation",
                    render_list(&letters),
                    format!("letters must be exactly 1..{n}, each once"),
                ));
            }
            seen[a] = true;
        }
        Ok(Permutation(letters))
    }

    pub(crate) fn from_vec(letters: Vec<Letter>) -> Self {
        debug_assert!(Permutation::new(letters.clone()).is_ok(), "{letters:?}");
        Permutation(letters)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as Letter).collect())
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            inv[a as usize - 1] = i as Letter + 1;
        }
        Permutation(inv)
    }

    /// Number of inversions (length in the weak order).
    pub fn inversions(&self) -> usize {
        let s = &self.0;
        (0..s.len()).map(|i| s[i + 1..].iter().filter(|&&b| b < s[i]).count()).sum()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_list(&self.0))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters =
            parse_letters(s).ok_or_else(|| Error::invalid("permutation", s, "expected a list of integers"))?;
        Permutation::new(letters)
    }
}

/// A word whose set of letters is exactly `{1..max}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedWord(Vec<Letter>);

impl PackedWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("packed word", "[]", "packed words are nonempty"));
        }
        if pack(&letters).0 != letters {
            return Err(Error::invalid("packed word", render_list(&letters), "the letters must be exactly 1..max"));
        }
        Ok(PackedWord(letters))
    }

    pub(crate) fn from_vec(letters: Vec<Letter>) -> Self {
        debug_assert_eq!(pack(&letters).0, letters);
        PackedWord(letters)
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Number of distinct letters.
    pub fn max(&self) -> Letter {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_permutation(&self) -> bool {
        self.max() as usize == self.0.len()
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() > 9 || self.0.iter().any(|&a| a > 9) {
            f.write_str(&render_list(&self.0))
        } else {
            f.write_str(&render_letters(&self.0))
        }
    }
}

impl FromStr for PackedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters =
            parse_letters(s).ok_or_else(|| Error::invalid("packed word", s, "expected a list of integers"))?;
        PackedWord::new(letters)
    }
}

/// A word `a_1..a_n` over `{1..n}` whose sorted rearrangement satisfies `a'_i <= i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParkingFunction(Vec<Letter>);

impl ParkingFunction {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::invalid("parking function", "[]", "parking functions are nonempty"));
        }
        if !is_parking_function(&letters) {
            return Err(Error::invalid(
                "parking function",
                render_list(&letters),
                "the sorted rearrangement must satisfy a'_i <= i",
            ));
        }
        Ok(ParkingFunction(letters))
    }

    pub(crate) fn from_vec(letters: Vec<Letter>) -> Self {
        debug_assert!(is_parking_function(&letters));
        ParkingFunction(letters)
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_list(&self.0))
    }
}

impl FromStr for ParkingFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters =
            parse_letters(s).ok_or_else(|| Error::invalid("parking function", s, "expected a list of integers"))?;
        ParkingFunction::new(letters)
    }
}

/// Sorted-prefix criterion.
pub fn is_parking_function(w: &[Letter]) -> bool {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &a)| a >= 1 && a as usize <= i + 1)
}

/// Standardization: occurrences of the smallest letter are numbered first, left to
/// right, then those of the next letter, and so on.
pub fn std(w: &[Letter]) -> Permutation {
    let mut positions: Vec<usize> = (0..w.len()).collect();
    positions.sort_by_key(|&i| (w[i], i));
    let mut out = vec![0; w.len()];
    for (rank, &i) in positions.iter().enumerate() {
        out[i] = rank as Letter + 1;
    }
    Permutation(out)
}

/// Relabels the letters of `w` by their rank among the distinct letters of `w`.
pub fn pack(w: &[Letter]) -> PackedWord {
    let mut distinct = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    PackedWord(w.iter().map(|a| distinct.binary_search(a).unwrap() as Letter + 1).collect())
}

/// `min{ i : #{ j : w_j <= i } < i }`, or `n + 1` for a parking function.
fn park_defect(w: &[Letter]) -> usize {
    let n = w.len();
    let mut counts = vec![0usize; n + 2];
    for &a in w {
        if (a as usize) <= n + 1 {
            counts[a as usize] += 1;
        }
    }
    let mut below = 0;
    for (i, c) in counts.iter().enumerate().take(n + 1).skip(1) {
        below += c;
        if below < i {
            return i;
        }
    }
    n + 1
}

/// Parkization: while `d(w) <= n`, decrement every letter greater than `d(w)`.
///
/// Runs of decrements that cannot change `d(w)` are applied in one step, so the
/// cost does not depend on the size of the letters.
pub fn park(w: &[Letter]) -> ParkingFunction {
    let n = w.len();
    let mut cur = w.to_vec();
    loop {
        let d = park_defect(&cur);
        if d == n + 1 {
            return ParkingFunction(cur);
        }
        let d = d as Letter;
        // No letter lands at or below d before the smallest letter above d reaches d + 1,
        // so d is unchanged for those steps.
        let lowest_above = cur.iter().copied().filter(|&a| a > d).min().expect("a defect implies a letter above it");
        let step = lowest_above - d;
        let step = if step > 1 { step - 1 } else { 1 };
        for a in cur.iter_mut().filter(|a| **a > d) {
            *a -= step;
        }
    }
}

/// Which normalization map a restriction check applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Std,
    Pack,
    Park,
}

impl NormalForm {
    pub fn apply(self, w: &[Letter]) -> Vec<Letter> {
        match self {
            NormalForm::Std => std(w).0,
            NormalForm::Pack => pack(w).0,
            NormalForm::Park => park(w).0,
        }
    }
}

/// A set of 1-based positions of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// Strictly increasing positions; only meaningful for [`NormalForm::Std`].
    Positions(Vec<usize>),
    /// The contiguous factor `start..=end`.
    Factor { start: usize, end: usize },
}

impl Window {
    fn positions(&self, len: usize) -> Result<Vec<usize>> {
        let positions: Vec<usize> = match self {
            Window::Positions(p) => p.clone(),
            Window::Factor { start, end } => {
                if start > end {
                    return Err(Error::Domain(format!("empty factor {start}..={end}")));
                }
                (*start..=*end).collect()
            }
        };
        if positions.is_empty() {
            return Err(Error::Domain("empty window".into()));
        }
        for &p in &positions {
            Error::check_index(p, 1, len)?;
        }
        if positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::Domain("window positions must increase".into()));
        }
        Ok(positions)
    }
}

/// Checks that normalizing a restriction of `u` agrees with restricting the
/// normal form of `u`. Standardization accepts any subsequence of positions,
/// packing and parkization only contiguous factors.
pub fn restriction_check(map: NormalForm, u: &[Letter], window: &Window) -> Result<bool> {
    let positions = window.positions(u.len())?;
    if map != NormalForm::Std && positions.windows(2).any(|p| p[1] != p[0] + 1) {
        return Err(Error::Domain(format!("{map:?} restriction needs a contiguous factor")));
    }
    let normal = map.apply(u);
    let restrict = |w: &[Letter]| positions.iter().map(|&p| w[p - 1]).collect::<Vec<_>>();
    Ok(map.apply(&restrict(u)) == map.apply(&restrict(&normal)))
}

/// Whether some subsequence of `w` packs to `pattern`.
pub fn contains_pattern(w: &[Letter], pattern: &[Letter]) -> bool {
    use itertools::Itertools;
    if pattern.len() > w.len() {
        return false;
    }
    (0..w.len())
        .combinations(pattern.len())
        .any(|idx| pack(&idx.iter().map(|&i| w[i]).collect::<Vec<_>>()).0 == pattern)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_words;

    #[test]
    fn std_example() {
        assert_eq!(std(&[3, 6, 5, 1, 8, 2, 1, 2, 2]).as_slice(), &[6, 8, 7, 1, 9, 3, 2, 4, 5]);
        assert_eq!(std(&[1, 1]).as_slice(), &[1, 2]);
        assert_eq!(std(&[2, 4, 1, 3]).as_slice(), &[2, 4, 1, 3]);
    }

    #[test]
    fn pack_example() {
        assert_eq!(pack(&[4, 1, 5, 1]).as_slice(), &[2, 1, 3, 1]);
        assert_eq!(pack(&[9, 9, 9]).as_slice(), &[1, 1, 1]);
        assert_eq!(pack(&[1, 2, 1]).as_slice(), &[1, 2, 1]);
    }

    #[test]
    fn park_example() {
        assert_eq!(park(&[3, 5, 1, 1, 11, 8, 8, 2]).as_slice(), &[3, 5, 1, 1, 8, 6, 6, 2]);
        assert_eq!(park(&[1, 4, 1, 1]).as_slice(), &[1, 4, 1, 1]);
        assert_eq!(park(&[7, 2, 40]).as_slice(), std(&[7, 2, 40]).as_slice());
        assert_eq!(park(&[2, 2, 3]).as_slice(), &[1, 1, 2]);
        assert_eq!(park(&[1_000_000_000, 1_000_000_000]).as_slice(), &[1, 1]);
    }

    // Literal transcription of the recursive definition, one decrement per step.
    fn park_naive(w: &[Letter]) -> Vec<Letter> {
        let mut cur = w.to_vec();
        loop {
            let d = park_defect(&cur);
            if d == cur.len() + 1 {
                return cur;
            }
            for a in cur.iter_mut().filter(|a| **a as usize > d) {
                *a -= 1;
            }
        }
    }

    #[test]
    fn park_matches_naive_recursion() {
        for n in 1..=5 {
            for w in all_words(n, 8) {
                assert_eq!(park(&w).0, park_naive(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn labels_validate() {
        assert!(Permutation::new(vec![1, 2, 1]).is_err());
        assert!(PackedWord::new(vec![1, 3]).is_err());
        assert!(ParkingFunction::new(vec![2, 2]).is_err());
        assert!(ParkingFunction::new(vec![1, 4, 1, 1]).is_ok());
        assert_eq!("[3,4,1,2]".parse::<Permutation>().unwrap().to_string(), "[3,4,1,2]");
        assert_eq!("1212".parse::<PackedWord>().unwrap().to_string(), "1212");
    }

    #[test]
    fn restriction_examples() {
        let u = [3, 6, 5, 1, 8, 2, 1, 2, 2];
        assert!(restriction_check(NormalForm::Std, &u, &Window::Positions(vec![1, 3, 5])).unwrap());
        assert!(restriction_check(NormalForm::Pack, &[4, 1, 5, 1], &Window::Factor { start: 2, end: 4 }).unwrap());
        let w = [3, 5, 1, 1, 11, 8, 8, 2];
        assert!(restriction_check(NormalForm::Park, &w, &Window::Factor { start: 1, end: 4 }).unwrap());
        assert!(restriction_check(NormalForm::Pack, &[1, 2, 3], &Window::Positions(vec![1, 3])).is_err());
        assert!(restriction_check(NormalForm::Std, &[1, 2, 3], &Window::Positions(vec![2, 1])).is_err());
        assert!(restriction_check(NormalForm::Std, &[1, 2, 3], &Window::Factor { start: 2, end: 4 }).is_err());
    }

    #[test]
    fn normal_forms_are_idempotent_and_restrict() {
        use itertools::Itertools;
        for n in 1..=6 {
            for w in all_words(n, 6) {
                for map in [NormalForm::Std, NormalForm::Pack, NormalForm::Park] {
                    let once = map.apply(&w);
                    assert_eq!(map.apply(&once), once);
                }
                for start in 1..=n {
                    for end in start..=n {
                        let window = Window::Factor { start, end };
                        for map in [NormalForm::Std, NormalForm::Pack, NormalForm::Park] {
                            assert!(restriction_check(map, &w, &window).unwrap(), "{map:?} {w:?} {window:?}");
                        }
                    }
                }
                if n <= 5 {
                    for size in 1..=n {
                        for positions in (1..=n).combinations(size) {
                            assert!(restriction_check(NormalForm::Std, &w, &Window::Positions(positions)).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn park_reduces_to_std_without_repetition() {
        use itertools::Itertools;
        for w in (1..=7).permutations(4) {
            assert_eq!(park(&w).0, std(&w).0);
        }
    }

    #[test]
    fn patterns() {
        assert!(contains_pattern(&[1, 3, 2], &[1, 3, 2]));
        assert!(contains_pattern(&[2, 1, 4, 3], &[1, 3, 2]));
        assert!(!contains_pattern(&[3, 2, 1], &[1, 3, 2]));
        assert!(contains_pattern(&[1, 2, 1], &[1, 2, 1]));
    }
}
