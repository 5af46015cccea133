//! Free quasi-symmetric functions.
//!
//! `G_σ` is the sum of all words standardizing to `σ`, and `F_σ = G_{σ⁻¹}`.
//! Under `#` the `G` basis multiplies into intervals of the left weak order
//! (inversion-set containment), which makes the `S` and `E` bases multiplicative
//! through the `∨` and `∧` constructions.

use crate::enumerate::permutations;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::normal_forms::{std, Permutation};
use crate::realization::{binomial, monotone_fillings, Realization};
use crate::word::{Letter, Word};
use itertools::Itertools;

/// `FQSym` in the `G` basis: `G_σ` is the sum of the words standardizing to `σ`.
pub struct FQSym;

fn descents_of_inverse(sigma: &Permutation) -> Vec<bool> {
    let inv = sigma.inverse();
    inv.as_slice().windows(2).map(|p| p[0] > p[1]).collect()
}

impl Realization for FQSym {
    type Label = Permutation;

    const NAME: &'static str = "FQSym";

    fn classify(w: &[Letter]) -> Permutation {
        std(w)
    }

    fn degree(label: &Permutation) -> usize {
        label.len()
    }

    fn labels(n: usize) -> Vec<Permutation> {
        permutations(n)
    }

    /// The letters read in the order of `σ⁻¹` are weakly increasing, strictly at
    /// the descents of `σ⁻¹`.
    fn fiber(label: &Permutation, alphabet: Letter) -> Vec<Word> {
        let n = label.len();
        let positions = label.inverse();
        monotone_fillings(n, &descents_of_inverse(label), alphabet)
            .into_iter()
            .map(|values| {
                let mut w = vec![0; n];
                for (&p, &x) in positions.as_slice().iter().zip(&values) {
                    w[p as usize - 1] = x;
                }
                Word::from_vec(w)
            })
            .collect()
    }

    fn fiber_size(label: &Permutation, alphabet: Letter) -> usize {
        let n = label.len();
        let d = descents_of_inverse(label).iter().filter(|&&b| b).count();
        (alphabet as usize + n).checked_sub(d + 1).map_or(0, |top| binomial(top, n))
    }
}

/// The inversion set `{(i, j) : i < j, σ_i > σ_j}` as a bitset over position pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InversionSet {
    n: usize,
    bits: Vec<u64>,
}

impl InversionSet {
    pub fn of(sigma: &Permutation) -> Self {
        let s = sigma.as_slice();
        let n = s.len();
        let mut bits = vec![0u64; (n * n).div_ceil(64).max(1)];
        for i in 0..n {
            for j in i + 1..n {
                if s[i] > s[j] {
                    let idx = i * n + j;
                    bits[idx / 64] |= 1 << (idx % 64);
                }
            }
        }
        InversionSet { n, bits }
    }

    /// 1-based positions.
    pub fn contains(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 || i >= j || j > self.n {
            return false;
        }
        let idx = (i - 1) * self.n + (j - 1);
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Left weak order: `a <= b` iff `Inv(a) ⊆ Inv(b)`.
pub fn weak_le(a: &Permutation, b: &Permutation) -> bool {
    InversionSet::of(a).is_subset(&InversionSet::of(b))
}

fn check_k(len: usize, k: usize) -> Result<()> {
    Error::check_index(k, 1, len.saturating_sub(1))
}

/// `d_k(G_σ)`: nonzero iff `σ_{k+1} = σ_k + 1`, giving `std(σ` without position `k+1)`.
pub fn dk_g(sigma: &Permutation, k: usize) -> Result<Option<Permutation>> {
    check_k(sigma.len(), k)?;
    let s = sigma.as_slice();
    if s[k] != s[k - 1] + 1 {
        return Ok(None);
    }
    let mut rest = s.to_vec();
    rest.remove(k);
    Ok(Some(std(&rest)))
}

/// Inverse of the bijection `{σ ∈ S_n : σ_{k+1} = σ_k + 1} → S_{n-1}` given by `d_k`.
pub fn dk_g_inverse(tau: &Permutation, k: usize) -> Result<Permutation> {
    Error::check_index(k, 1, tau.len())?;
    let t = tau.as_slice();
    let pivot = t[k - 1];
    let mut out: Vec<Letter> = t.iter().map(|&a| if a > pivot { a + 1 } else { a }).collect();
    out.insert(k, pivot + 1);
    Ok(Permutation::from_vec(out))
}

/// `d_k(F_σ)`: nonzero iff `k` is immediately followed by `k + 1` in `σ`; the
/// letter `k + 1` is erased and the rest standardized.
pub fn dk_f(sigma: &Permutation, k: usize) -> Result<Option<Permutation>> {
    check_k(sigma.len(), k)?;
    let s = sigma.as_slice();
    let k = k as Letter;
    let Some(pos) = s.iter().position(|&a| a == k) else { unreachable!() };
    if pos + 1 >= s.len() || s[pos + 1] != k + 1 {
        return Ok(None);
    }
    let mut rest = s.to_vec();
    rest.remove(pos + 1);
    Ok(Some(std(&rest)))
}

/// The convolution `α ∗ β`: permutations whose prefix of size `|α|` standardizes
/// to `α` and whose remaining suffix standardizes to `β`.
pub fn convolution(alpha: &Permutation, beta: &Permutation) -> Vec<Permutation> {
    let (k, l) = (alpha.len(), beta.len());
    let n = k + l;
    let mut out = Vec::new();
    for prefix_values in (1..=n as Letter).combinations(k) {
        let suffix_values: Vec<Letter> = (1..=n as Letter).filter(|v| !prefix_values.contains(v)).collect();
        let mut gamma = Vec::with_capacity(n);
        gamma.extend(alpha.as_slice().iter().map(|&a| prefix_values[a as usize - 1]));
        gamma.extend(beta.as_slice().iter().map(|&b| suffix_values[b as usize - 1]));
        out.push(Permutation::from_vec(gamma));
    }
    out
}

/// Ordinary product `G_α G_β`.
pub fn product_g(alpha: &Permutation, beta: &Permutation) -> LinComb<Permutation> {
    convolution(alpha, beta).into_iter().collect()
}

/// The set `α # β`: permutations `ν` of size `k + l - 1` with `std(ν_1..ν_k) = α`
/// and `std(ν_k..ν_{k+l-1}) = β`.
///
/// The shared letter is forced to `α_k + β_1 - 1`; the remaining values split into
/// those below and above it, and each side picks which of them it receives.
pub fn sharp_set(alpha: &Permutation, beta: &Permutation) -> Vec<Permutation> {
    let (a, b) = (alpha.as_slice(), beta.as_slice());
    let (k, l) = (a.len(), b.len());
    let n = k + l - 1;
    let a_low = a[k - 1] as usize - 1;
    let a_high = k - 1 - a_low;
    let b_low = b[0] as usize - 1;
    let pivot = (a_low + b_low + 1) as Letter;
    let lows: Vec<Letter> = (1..pivot).collect();
    let highs: Vec<Letter> = (pivot + 1..=n as Letter).collect();
    let mut out = Vec::new();
    for low_pick in lows.iter().copied().combinations(a_low) {
        for high_pick in highs.iter().copied().combinations(a_high) {
            let mut prefix_values: Vec<Letter> = low_pick.iter().chain(&high_pick).copied().collect();
            prefix_values.push(pivot);
            prefix_values.sort_unstable();
            let mut suffix_values: Vec<Letter> = lows
                .iter()
                .chain(&highs)
                .copied()
                .filter(|v| !low_pick.contains(v) && !high_pick.contains(v))
                .collect();
            suffix_values.push(pivot);
            suffix_values.sort_unstable();
            let mut nu = Vec::with_capacity(n);
            nu.extend(a.iter().map(|&x| prefix_values[x as usize - 1]));
            nu.extend(b[1..].iter().map(|&y| suffix_values[y as usize - 1]));
            out.push(Permutation::from_vec(nu));
        }
    }
    out.sort();
    out
}

/// `G_α # G_β`, multiplicity free.
pub fn sharp_g(alpha: &Permutation, beta: &Permutation) -> LinComb<Permutation> {
    sharp_set(alpha, beta).into_iter().collect()
}

/// `F_α # F_β`, obtained from the `G` basis through `F_σ = G_{σ⁻¹}`.
pub fn sharp_f(alpha: &Permutation, beta: &Permutation) -> LinComb<Permutation> {
    sharp_set(&alpha.inverse(), &beta.inverse()).into_iter().map(|g| g.inverse()).collect()
}

/// `α ∨ β` on words (permutations or packed words).
pub fn vee_words(alpha: &[Letter], beta: &[Letter]) -> Vec<Letter> {
    let last = *alpha.last().expect("nonempty");
    let first = beta[0];
    let beta_max = *beta.iter().max().unwrap();
    let mut out = Vec::with_capacity(alpha.len() + beta.len() - 1);
    out.extend(alpha.iter().map(|&x| if x <= last { x + first - 1 } else { x + beta_max - 1 }));
    out.extend(beta[1..].iter().map(|&y| if y < first { y } else { y + last - 1 }));
    out
}

/// `α ∧ β` on words (permutations or packed words).
pub fn wedge_words(alpha: &[Letter], beta: &[Letter]) -> Vec<Letter> {
    let last = *alpha.last().expect("nonempty");
    let first = beta[0];
    let alpha_max = *alpha.iter().max().unwrap();
    let mut out = Vec::with_capacity(alpha.len() + beta.len() - 1);
    out.extend(alpha.iter().map(|&x| if x < last { x } else { x + first - 1 }));
    out.extend(beta[1..].iter().map(|&y| if y <= first { y + last - 1 } else { y + alpha_max - 1 }));
    out
}

pub fn vee(alpha: &Permutation, beta: &Permutation) -> Permutation {
    Permutation::from_vec(vee_words(alpha.as_slice(), beta.as_slice()))
}

pub fn wedge(alpha: &Permutation, beta: &Permutation) -> Permutation {
    Permutation::from_vec(wedge_words(alpha.as_slice(), beta.as_slice()))
}

/// The weak-order interval `[lo, hi]` and its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakInterval {
    pub lo: Permutation,
    pub hi: Permutation,
    pub members: Vec<Permutation>,
}

/// All permutations `γ` with `lo <= γ <= hi`, by filtering the symmetric group.
pub fn weak_interval(lo: &Permutation, hi: &Permutation) -> Vec<Permutation> {
    let (lo_inv, hi_inv) = (InversionSet::of(lo), InversionSet::of(hi));
    permutations(lo.len())
        .into_iter()
        .filter(|g| {
            let inv = InversionSet::of(g);
            lo_inv.is_subset(&inv) && inv.is_subset(&hi_inv)
        })
        .collect()
}

/// The interval `[α ∧ β, α ∨ β]` that supports `G_α # G_β`.
pub fn sharp_interval(alpha: &Permutation, beta: &Permutation) -> WeakInterval {
    let lo = wedge(alpha, beta);
    let hi = vee(alpha, beta);
    let members = weak_interval(&lo, &hi);
    WeakInterval { lo, hi, members }
}

/// `S^α # S^β = S^{α ∨ β}`.
pub fn sharp_s(alpha: &Permutation, beta: &Permutation) -> Permutation {
    vee(alpha, beta)
}

/// `E^α # E^β = E^{α ∧ β}`.
pub fn sharp_e(alpha: &Permutation, beta: &Permutation) -> Permutation {
    wedge(alpha, beta)
}

/// `S^σ = sum_{τ <= σ} G_τ`.
pub fn s_basis(sigma: &Permutation) -> LinComb<Permutation> {
    let inv = InversionSet::of(sigma);
    permutations(sigma.len()).into_iter().filter(|t| InversionSet::of(t).is_subset(&inv)).collect()
}

/// `E^σ = sum_{τ >= σ} G_τ`.
pub fn e_basis(sigma: &Permutation) -> LinComb<Permutation> {
    let inv = InversionSet::of(sigma);
    permutations(sigma.len()).into_iter().filter(|t| inv.is_subset(&InversionSet::of(t))).collect()
}

/// Rewrites a `G`-basis element in the `S` basis (unitriangular, peeling maximal terms).
pub fn g_to_s(element: &LinComb<Permutation>) -> LinComb<Permutation> {
    triangular_change(element, s_basis, |s| s.inversions() as isize)
}

/// Rewrites a `G`-basis element in the `E` basis.
pub fn g_to_e(element: &LinComb<Permutation>) -> LinComb<Permutation> {
    triangular_change(element, e_basis, |s| -(s.inversions() as isize))
}

pub(crate) fn triangular_change<L: Ord + Clone>(
    element: &LinComb<L>,
    expand: impl Fn(&L) -> LinComb<L>,
    rank: impl Fn(&L) -> isize,
) -> LinComb<L> {
    let mut rest = element.clone();
    let mut out = LinComb::zero();
    while let Some(top) = rest.support().max_by_key(|l| rank(l)).cloned() {
        let c = rest.coefficient(&top);
        rest -= expand(&top).scale(&c);
        out.add_term(top, c);
    }
    out
}

/// Whether the value set `values` of a prefix ending in `last` splits as an interval
/// with maximum `last` and an interval that is empty or has maximum `max`.
fn splits_at_prefix(values: &[Letter], last: Letter, max: Letter) -> bool {
    let mut set: Vec<Letter> = values.to_vec();
    set.sort_unstable();
    set.dedup();
    let (low, high): (Vec<Letter>, Vec<Letter>) = set.iter().partition(|&&v| v <= last);
    let is_run_ending =
        |run: &[Letter], end: Letter| run.last() == Some(&end) && run.windows(2).all(|w| w[1] == w[0] + 1);
    is_run_ending(&low, last) && (high.is_empty() || is_run_ending(&high, max))
}

/// A breakpoint `k` (`2 <= k < n`) where the word is a nontrivial `∨` product.
///
/// The second condition (shared value set reduced to `u_k`) always holds for
/// permutations and matters only for packed words.
pub(crate) fn secable_at(u: &[Letter], k: usize) -> bool {
    let max = *u.iter().max().unwrap();
    let last = u[k - 1];
    if !splits_at_prefix(&u[..k], last, max) {
        return false;
    }
    let prefix: Vec<Letter> = u[..k].to_vec();
    u[k - 1..].iter().all(|v| *v == last || !prefix.contains(v))
}

fn check_generator_size(len: usize) -> Result<()> {
    if len < 2 {
        return Err(Error::Domain("generator predicates need size >= 2".into()));
    }
    Ok(())
}

/// No prefix of size `2 <= k < n` is, up to order, an interval with maximum `α_k`
/// together with an interval that is empty or ends at `n`.
pub fn is_nonsecable(alpha: &Permutation) -> Result<bool> {
    check_generator_size(alpha.len())?;
    let u = alpha.as_slice();
    Ok(!(2..u.len()).any(|k| secable_at(u, k)))
}

fn prefix_is_interval(values: &[Letter]) -> bool {
    let lo = *values.iter().min().unwrap();
    let hi = *values.iter().max().unwrap();
    (hi - lo + 1) as usize == values.len()
}

/// No prefix of size `2 <= i < n` has an integer interval as value set.
pub fn is_noninterval(alpha: &Permutation) -> Result<bool> {
    check_generator_size(alpha.len())?;
    let u = alpha.as_slice();
    Ok(!(2..u.len()).any(|i| prefix_is_interval(&u[..i])))
}

/// No factor of length `2 <= r < n` has value set `{1..r}`.
pub fn is_non_internal_interval(alpha: &Permutation) -> Result<bool> {
    check_generator_size(alpha.len())?;
    let u = alpha.as_slice();
    let n = u.len();
    Ok(!(2..n).any(|r| u.windows(r).any(|f| f.iter().all(|&v| v as usize <= r))))
}

/// The unique element of `σ # τ` whose first `|σ|` values form an interval.
pub fn bullet(sigma: &Permutation, tau: &Permutation) -> Permutation {
    let (s, t) = (sigma.as_slice(), tau.as_slice());
    let shift = t[0] - 1;
    let mut out: Vec<Letter> = s.iter().map(|&x| x + shift).collect();
    let used: Vec<Letter> = out.clone();
    let free: Vec<Letter> = (1..=(s.len() + t.len() - 1) as Letter).filter(|v| !used.contains(v)).collect();
    // the remaining letters of τ are ranked among themselves
    let rest = std(&t[1..]);
    out.extend(rest.as_slice().iter().map(|&r| free[r as usize - 1]));
    Permutation::from_vec(out)
}

/// Splits `α` at every interval prefix; the factors are non-interval permutations
/// (or `α` itself) and recombine to `α` under `•`.
pub fn bullet_factorize(alpha: &Permutation) -> Vec<Permutation> {
    let u = alpha.as_slice();
    let n = u.len();
    if n < 2 {
        return vec![alpha.clone()];
    }
    let mut cuts = vec![1];
    cuts.extend((2..n).filter(|&p| prefix_is_interval(&u[..p])));
    cuts.push(n);
    cuts.windows(2).map(|w| std(&u[w[0] - 1..w[1]])).collect()
}

/// `I(α)`: number of factors in the maximal `•` decomposition (0 for the unit).
pub fn interval_factor_count(alpha: &Permutation) -> usize {
    if alpha.len() < 2 {
        0
    } else {
        bullet_factorize(alpha).len()
    }
}

/// Maximal `∨` decomposition into non-secable factors.
pub fn vee_factorize(alpha: &Permutation) -> Vec<Permutation> {
    let u = alpha.as_slice();
    let n = u.len();
    if n < 2 {
        return vec![alpha.clone()];
    }
    let mut cuts = vec![1];
    cuts.extend((2..n).filter(|&k| secable_at(u, k)));
    cuts.push(n);
    cuts.windows(2).map(|w| std(&u[w[0] - 1..w[1]])).collect()
}

/// Linear extension of `#` in the `G` basis.
pub fn sharp_g_lin(a: &LinComb<Permutation>, b: &LinComb<Permutation>) -> LinComb<Permutation> {
    a.bilinear_extend(b, sharp_g)
}
