//! Polynomial realizations as an executable oracle.
//!
//! Every basis element of the algebras in this crate is, by definition, the sum
//! of the words in some fiber of a classifying map (`std`, `pack`, `park`, the
//! RSK `Q`-symbol, ...). Truncating the alphabet to `{1..N}` turns an element
//! into a finite [`Expansion`]; products and `d_k` can then be computed on words
//! and the result mapped back to labels with [`regroup`], which refuses inputs
//! that are not unions of complete fibers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::enumerate::all_words;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::word::{Letter, Word};

/// An algebra given by a classifying map on words.
pub trait Realization {
    type Label: Ord + Clone + fmt::Display + fmt::Debug;

    const NAME: &'static str;

    /// The label whose fiber contains `w`.
    fn classify(w: &[Letter]) -> Self::Label;

    fn degree(label: &Self::Label) -> usize;

    /// All labels of degree `n`.
    fn labels(n: usize) -> Vec<Self::Label>;

    /// Words of length `degree(label)` over `{1..alphabet}` in the fiber of `label`.
    fn fiber(label: &Self::Label, alphabet: Letter) -> Vec<Word> {
        all_words(Self::degree(label), alphabet)
            .into_iter()
            .filter(|w| Self::classify(w) == *label)
            .map(Word::from_vec)
            .collect()
    }

    fn fiber_size(label: &Self::Label, alphabet: Letter) -> usize {
        Self::fiber(label, alphabet).len()
    }
}

/// A finite sum of words over the alphabet `{1..alphabet}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub alphabet: Letter,
    pub terms: LinComb<Word>,
}

impl Expansion {
    pub fn new(alphabet: Letter, terms: LinComb<Word>) -> Self {
        Expansion { alphabet, terms }
    }

    pub fn empty(alphabet: Letter) -> Self {
        Expansion { alphabet, terms: LinComb::zero() }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Word-level product: all concatenations `uv`.
    pub fn concat(&self, other: &Expansion) -> Expansion {
        Expansion {
            alphabet: self.alphabet.max(other.alphabet),
            terms: self.terms.bilinear_extend(&other.terms, |u, v| LinComb::term(u.concat(v))),
        }
    }

    /// Word-level `#`: only pairs whose endpoints match survive.
    pub fn sharp(&self, other: &Expansion) -> Expansion {
        let mut by_first: BTreeMap<Letter, Vec<(&Word, &BigInt)>> = BTreeMap::new();
        for (v, c) in other.terms.iter() {
            by_first.entry(v.first()).or_default().push((v, c));
        }
        let mut terms = LinComb::zero();
        for (u, cu) in self.terms.iter() {
            for (v, cv) in by_first.get(&u.last()).into_iter().flatten() {
                terms.add_term(u.sharp(v).expect("endpoints match"), cu * *cv);
            }
        }
        Expansion { alphabet: self.alphabet.max(other.alphabet), terms }
    }

    /// Applies `d_k` to every word; words too short for `k` are an error.
    pub fn d(&self, k: usize) -> Result<Expansion> {
        let mut terms = LinComb::zero();
        for (w, c) in self.terms.iter() {
            if let Some(image) = w.d(k)? {
                terms.add_term(image, c.clone());
            }
        }
        Ok(Expansion { alphabet: self.alphabet, terms })
    }
}

fn check_alphabet(alphabet: Letter) -> Result<()> {
    if alphabet < 1 {
        return Err(Error::OutOfRange { index: alphabet as usize, min: 1, max: usize::MAX });
    }
    Ok(())
}

/// Sum of the fibers of the labels of `element`, over `{1..alphabet}`.
pub fn expand<A: Realization>(element: &LinComb<A::Label>, alphabet: Letter) -> Result<Expansion> {
    check_alphabet(alphabet)?;
    let terms = element.linear_extend(|label| A::fiber(label, alphabet).into_iter().collect());
    Ok(Expansion { alphabet, terms })
}

/// Expansion of a single basis element.
pub fn expand_label<A: Realization>(label: &A::Label, alphabet: Letter) -> Result<Expansion> {
    expand::<A>(&LinComb::term(label.clone()), alphabet)
}

/// Inverse of [`expand`]: fails with `NotInAlgebra` unless every class of words
/// is a complete fiber carrying a single coefficient.
pub fn regroup<A: Realization>(e: &Expansion) -> Result<LinComb<A::Label>> {
    let mut groups: BTreeMap<A::Label, (BigInt, usize, Word)> = BTreeMap::new();
    for (w, c) in e.terms.iter() {
        if w.letters().iter().any(|&a| a > e.alphabet) {
            return Err(Error::Domain(format!("word {w} uses letters beyond {}", e.alphabet)));
        }
        let label = A::classify(w.letters());
        match groups.get_mut(&label) {
            None => {
                groups.insert(label, (c.clone(), 1, w.clone()));
            }
            Some((coefficient, count, witness)) => {
                if coefficient != c {
                    return Err(Error::NotInAlgebra {
                        algebra: A::NAME,
                        reason: format!(
                            "words {witness} and {w} share the class {label} but carry coefficients {coefficient} and {c}"
                        ),
                    });
                }
                *count += 1;
            }
        }
    }
    let mut out = LinComb::zero();
    for (label, (coefficient, count, witness)) in groups {
        let full = A::fiber_size(&label, e.alphabet);
        if count != full {
            return Err(Error::NotInAlgebra {
                algebra: A::NAME,
                reason: format!(
                    "class {label} (containing {witness}) has {count} of its {full} words over an alphabet of size {}",
                    e.alphabet
                ),
            });
        }
        out.add_term(label, coefficient);
    }
    Ok(out)
}

/// `a # b` computed on words at the alphabet size `deg(a) + deg(b) - 1`.
pub fn oracle_sharp<A: Realization>(a: &A::Label, b: &A::Label) -> Result<LinComb<A::Label>> {
    let n = (A::degree(a) + A::degree(b) - 1) as Letter;
    let product = expand_label::<A>(a, n)?.sharp(&expand_label::<A>(b, n)?);
    regroup::<A>(&product)
}

/// Linear extension of [`oracle_sharp`] through `d_k` of the concatenation, kept
/// literal: expand, concatenate, apply `d_{deg(a)}`, regroup.
pub fn oracle_sharp_via_d<A: Realization>(a: &A::Label, b: &A::Label) -> Result<LinComb<A::Label>> {
    let k = A::degree(a);
    let n = (k + A::degree(b) - 1) as Letter;
    let product = expand_label::<A>(a, n)?.concat(&expand_label::<A>(b, n)?);
    regroup::<A>(&product.d(k)?)
}

/// The ordinary product `ab` computed on words at alphabet size `deg(a) + deg(b)`.
pub fn oracle_product<A: Realization>(a: &A::Label, b: &A::Label) -> Result<LinComb<A::Label>> {
    let n = (A::degree(a) + A::degree(b)) as Letter;
    let product = expand_label::<A>(a, n)?.concat(&expand_label::<A>(b, n)?);
    regroup::<A>(&product)
}

/// `d_k` of a basis element, computed on words at alphabet size `deg(label)`.
pub fn oracle_d<A: Realization>(label: &A::Label, k: usize) -> Result<LinComb<A::Label>> {
    let n = A::degree(label) as Letter;
    regroup::<A>(&expand_label::<A>(label, n)?.d(k)?)
}

/// Words `x_1 <= x_2 <= ... <= x_n` over `{1..alphabet}` with `x_i < x_{i+1}`
/// wherever `strict[i]` holds (`strict` has length `n - 1`).
pub(crate) fn monotone_fillings(n: usize, strict: &[bool], alphabet: Letter) -> Vec<Vec<Letter>> {
    words_with_steps(n, alphabet, |i, prev, next| if strict[i] { next > prev } else { next >= prev })
}

/// Words of length `n` over `{1..alphabet}` such that `allowed(i, w_i, w_{i+1})`
/// holds for every `i` (0-based), built by depth-first search.
pub(crate) fn words_with_steps(
    n: usize,
    alphabet: Letter,
    allowed: impl Fn(usize, Letter, Letter) -> bool,
) -> Vec<Vec<Letter>> {
    fn go(
        current: &mut Vec<Letter>,
        n: usize,
        alphabet: Letter,
        allowed: &dyn Fn(usize, Letter, Letter) -> bool,
        out: &mut Vec<Vec<Letter>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for a in 1..=alphabet {
            if let Some(&prev) = current.last() {
                if !allowed(current.len() - 1, prev, a) {
                    continue;
                }
            }
            current.push(a);
            go(current, n, alphabet, allowed, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut Vec::with_capacity(n), n, alphabet, &allowed, &mut out);
    }
    out
}

/// All words whose packing is `u`: choose which `max(u)` letters of the alphabet
/// are used, in increasing order.
pub(crate) fn inflate(u: &[Letter], alphabet: Letter) -> Vec<Vec<Letter>> {
    use itertools::Itertools;
    let m = u.iter().copied().max().unwrap_or(0) as usize;
    (1..=alphabet).combinations(m).map(|chosen| u.iter().map(|&a| chosen[a as usize - 1]).collect()).collect()
}

/// Number of words with a given packing of maximum `m`: `C(alphabet, m)`.
pub(crate) fn inflate_count(m: usize, alphabet: Letter) -> usize {
    binomial(alphabet as usize, m)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
