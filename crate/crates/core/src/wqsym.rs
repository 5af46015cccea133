//! Word quasi-symmetric functions.
//!
//! `M_u` is the sum of the words packing to `u`. The `#` product of two `M`'s is
//! an interval for the pseudo-permutohedron order, whose comparison counts ties
//! as half-inversions; the `S` and `E` bases are multiplicative through the same
//! `∨` and `∧` relabelings as for permutations.

use crate::enumerate::packed_words;
use crate::error::{Error, Result};
use crate::fqsym::{secable_at, vee_words, wedge_words};
use crate::lincomb::LinComb;
use crate::normal_forms::{pack, PackedWord};
use crate::realization::{inflate, inflate_count, Realization};
use crate::word::{Letter, Word};

/// Generalized inversions of a packed word, stored doubled: `2` for
/// `w_i > w_j`, `1` for `w_i = w_j`, `0` otherwise (`i < j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfInversionTable {
    n: usize,
    at_least_half: u64,
    full: u64,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

impl HalfInversionTable {
    /// Supports words of length at most 8.
    pub fn of(w: &[Letter]) -> Self {
        let n = w.len();
        assert!(n <= 8, "half-inversion tables are stored in 64 bits");
        let (mut at_least_half, mut full) = (0u64, 0u64);
        for i in 0..n {
            for j in i + 1..n {
                let bit = 1u64 << pair_index(n, i, j);
                if w[i] >= w[j] {
                    at_least_half |= bit;
                }
                if w[i] > w[j] {
                    full |= bit;
                }
            }
        }
        HalfInversionTable { n, at_least_half, full }
    }

    /// Doubled coefficient of the pair `(i, j)`, 1-based positions.
    pub fn value(&self, i: usize, j: usize) -> u8 {
        if i == 0 || i >= j || j > self.n {
            return 0;
        }
        let bit = 1u64 << pair_index(self.n, i - 1, j - 1);
        (self.at_least_half & bit != 0) as u8 + (self.full & bit != 0) as u8
    }

    /// Pointwise comparison of coefficients.
    pub fn le(&self, other: &HalfInversionTable) -> bool {
        self.n == other.n && self.at_least_half & !other.at_least_half == 0 && self.full & !other.full == 0
    }
}

/// Pseudo-permutohedron order.
pub fn pseudo_le(u: &PackedWord, v: &PackedWord) -> bool {
    HalfInversionTable::of(u.as_slice()).le(&HalfInversionTable::of(v.as_slice()))
}

/// `d_k(M_u)`: deletes position `k + 1` when `u_k = u_{k+1}`.
pub fn dk_m(u: &PackedWord, k: usize) -> Result<Option<PackedWord>> {
    Error::check_index(k, 1, u.len().saturating_sub(1))?;
    let s = u.as_slice();
    if s[k - 1] != s[k] {
        return Ok(None);
    }
    let mut rest = s.to_vec();
    rest.remove(k);
    Ok(Some(PackedWord::from_vec(rest)))
}

/// Order-preserving merges of two chains `a_1 < ... < a_p` and `b_1 < ... < b_q`
/// in which an `a` and a `b` may share a level. Each merge is returned as the
/// level of every `a`, the level of every `b`, and the number of levels.
pub(crate) fn quasi_shuffles(p: usize, q: usize) -> Vec<(Vec<Letter>, Vec<Letter>, Letter)> {
    fn go(
        i: usize,
        j: usize,
        p: usize,
        q: usize,
        a: &mut Vec<Letter>,
        b: &mut Vec<Letter>,
        level: Letter,
        out: &mut Vec<(Vec<Letter>, Vec<Letter>, Letter)>,
    ) {
        if i == p && j == q {
            out.push((a.clone(), b.clone(), level));
            return;
        }
        let next = level + 1;
        if i < p {
            a.push(next);
            go(i + 1, j, p, q, a, b, next, out);
            a.pop();
        }
        if j < q {
            b.push(next);
            go(i, j + 1, p, q, a, b, next, out);
            b.pop();
        }
        if i < p && j < q {
            a.push(next);
            b.push(next);
            go(i + 1, j + 1, p, q, a, b, next, out);
            a.pop();
            b.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, p, q, &mut Vec::new(), &mut Vec::new(), 0, &mut out);
    out
}

/// The set `u # v` of packed words `w` of length `k + l - 1` with
/// `pack(w_1..w_k) = u` and `pack(w_k..w_{k+l-1}) = v`.
///
/// The values of `w` below the shared letter are a quasi-shuffle of the values of
/// `u` below `u_k` and those of `v` below `v_1`; likewise above.
pub fn sharp_set_pw(u: &PackedWord, v: &PackedWord) -> Vec<PackedWord> {
    let (a, b) = (u.as_slice(), v.as_slice());
    let (pu, pv) = (a[a.len() - 1], b[0]);
    let (mu, mv) = (u.max(), v.max());
    let mut out = Vec::new();
    for (low_a, low_b, low_levels) in quasi_shuffles(pu as usize - 1, pv as usize - 1) {
        let pivot = low_levels + 1;
        for (high_a, high_b, _) in quasi_shuffles((mu - pu) as usize, (mv - pv) as usize) {
            let value_a = |x: Letter| match x.cmp(&pu) {
                std::cmp::Ordering::Less => low_a[x as usize - 1],
                std::cmp::Ordering::Equal => pivot,
                std::cmp::Ordering::Greater => pivot + high_a[(x - pu) as usize - 1],
            };
            let value_b = |y: Letter| match y.cmp(&pv) {
                std::cmp::Ordering::Less => low_b[y as usize - 1],
                std::cmp::Ordering::Equal => pivot,
                std::cmp::Ordering::Greater => pivot + high_b[(y - pv) as usize - 1],
            };
            let w: Vec<Letter> = a.iter().map(|&x| value_a(x)).chain(b[1..].iter().map(|&y| value_b(y))).collect();
            out.push(PackedWord::from_vec(w));
        }
    }
    out.sort();
    out
}

/// `M_u # M_v`, multiplicity free.
pub fn sharp_m(u: &PackedWord, v: &PackedWord) -> LinComb<PackedWord> {
    sharp_set_pw(u, v).into_iter().collect()
}

/// Ordinary product `M_u M_v`: packed words `w = u'v'` with `pack(u') = u` and
/// `pack(v') = v`.
pub fn product_m(u: &PackedWord, v: &PackedWord) -> LinComb<PackedWord> {
    let (a, b) = (u.as_slice(), v.as_slice());
    quasi_shuffles(u.max() as usize, v.max() as usize)
        .into_iter()
        .map(|(la, lb, _)| {
            let w = a.iter().map(|&x| la[x as usize - 1]).chain(b.iter().map(|&y| lb[y as usize - 1]));
            PackedWord::from_vec(w.collect())
        })
        .collect()
}

pub fn vee_pw(u: &PackedWord, v: &PackedWord) -> PackedWord {
    PackedWord::from_vec(vee_words(u.as_slice(), v.as_slice()))
}

pub fn wedge_pw(u: &PackedWord, v: &PackedWord) -> PackedWord {
    PackedWord::from_vec(wedge_words(u.as_slice(), v.as_slice()))
}

/// `S^u # S^v = S^{u ∨ v}`.
pub fn sharp_s_pw(u: &PackedWord, v: &PackedWord) -> PackedWord {
    vee_pw(u, v)
}

/// `E^u # E^v = E^{u ∧ v}`.
pub fn sharp_e_pw(u: &PackedWord, v: &PackedWord) -> PackedWord {
    wedge_pw(u, v)
}

/// All packed words `w` with `lo <= w <= hi`.
pub fn pseudo_interval(lo: &PackedWord, hi: &PackedWord) -> Vec<PackedWord> {
    let (tl, th) = (HalfInversionTable::of(lo.as_slice()), HalfInversionTable::of(hi.as_slice()));
    packed_words(lo.len())
        .into_iter()
        .filter(|w| {
            let t = HalfInversionTable::of(w.as_slice());
            tl.le(&t) && t.le(&th)
        })
        .collect()
}

/// `S^u = sum_{v <= u} M_v`.
pub fn s_basis_pw(u: &PackedWord) -> LinComb<PackedWord> {
    let t = HalfInversionTable::of(u.as_slice());
    packed_words(u.len()).into_iter().filter(|v| HalfInversionTable::of(v.as_slice()).le(&t)).collect()
}

/// `E^u = sum_{v >= u} M_v`.
pub fn e_basis_pw(u: &PackedWord) -> LinComb<PackedWord> {
    let t = HalfInversionTable::of(u.as_slice());
    packed_words(u.len()).into_iter().filter(|v| t.le(&HalfInversionTable::of(v.as_slice()))).collect()
}

/// No prefix of size `2 <= k < n` splits `u` as a nontrivial `∨` product.
pub fn is_nonsecable_pw(u: &PackedWord) -> Result<bool> {
    if u.len() < 2 {
        return Err(Error::Domain("generator predicates need size >= 2".into()));
    }
    let s = u.as_slice();
    Ok(!(2..s.len()).any(|k| secable_at(s, k)))
}

/// Maximal `∨` decomposition into non-secable packed words.
pub fn vee_factorize_pw(u: &PackedWord) -> Vec<PackedWord> {
    let s = u.as_slice();
    let n = s.len();
    if n < 2 {
        return vec![u.clone()];
    }
    let mut cuts = vec![1];
    cuts.extend((2..n).filter(|&k| secable_at(s, k)));
    cuts.push(n);
    cuts.windows(2).map(|w| pack(&s[w[0] - 1..w[1]])).collect()
}

/// `WQSym` realized by packing.
pub struct WQSym;

impl Realization for WQSym {
    type Label = PackedWord;

    const NAME: &'static str = "WQSym";

    fn classify(w: &[Letter]) -> PackedWord {
        pack(w)
    }

    fn degree(label: &PackedWord) -> usize {
        label.len()
    }

    fn labels(n: usize) -> Vec<PackedWord> {
        packed_words(n)
    }

    fn fiber(label: &PackedWord, alphabet: Letter) -> Vec<Word> {
        inflate(label.as_slice(), alphabet).into_iter().map(Word::from_vec).collect()
    }

    fn fiber_size(label: &PackedWord, alphabet: Letter) -> usize {
        inflate_count(label.max() as usize, alphabet)
    }
}

/// Packed words of length `n` split by non-secability, for counting.
pub fn count_nonsecable_pw(n: usize) -> usize {
    packed_words(n).iter().filter(|u| is_nonsecable_pw(u).unwrap_or(false)).count()
}
