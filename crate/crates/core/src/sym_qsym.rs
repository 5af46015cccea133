//! Noncommutative symmetric functions under `#`, and their dual.
//!
//! Under `#`, `Sym` is the free algebra on `x = S_2 = R_2` and `y = Λ_2 = R_11`:
//! a composition `I` of `n` is coded by a binary word `b(I)` of length `n - 1`
//! (a `1` at each part boundary), and `R_I` is the `#`-product of the letters of
//! `b(I)` read with `0 -> x`, `1 -> y`. Elements are stored in the `R` basis.
//! Declaring `x` and `y` primitive gives a coproduct whose graded dual is the
//! shuffle algebra on two letters: this is `QSym` under `#`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::enumerate::compositions;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::realization::{words_with_steps, Realization};
use crate::word::{parse_letters, Letter, Word};

/// A composition `(i_1, ..., i_r)` with positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<Letter>);

impl Composition {
    pub fn new(parts: Vec<Letter>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            let text = format!("{parts:?}");
            return Err(Error::invalid("composition", text, "parts must be positive and nonempty"));
        }
        Ok(Composition(parts))
    }

    pub(crate) fn from_vec(parts: Vec<Letter>) -> Self {
        debug_assert!(!parts.is_empty() && !parts.contains(&0));
        Composition(parts)
    }

    pub fn parts(&self) -> &[Letter] {
        &self.0
    }

    /// Number of parts, `l(I)`.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// The neutral composition `(1)`.
    pub fn unit() -> Self {
        Composition(vec![1])
    }

    pub fn all(n: usize) -> Vec<Composition> {
        compositions(n).into_iter().map(Composition).collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().map(|p| p.to_string()).join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_letters(s)
            .ok_or_else(|| Error::invalid("composition", s, "expected positive parts such as [1,5,1,2]"))?;
        Composition::new(parts)
    }
}

/// `b(I)`: a word over `{0, 1}` of length `n - 1`, with `1` at each part boundary.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryCode(Vec<bool>);

impl BinaryCode {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BinaryCode(bits)
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

pub fn binary_code(i: &Composition) -> BinaryCode {
    let mut bits = Vec::with_capacity(i.degree() - 1);
    for (j, &part) in i.parts().iter().enumerate() {
        if j > 0 {
            bits.push(true);
        }
        bits.extend(std::iter::repeat_n(false, part as usize - 1));
    }
    BinaryCode(bits)
}

pub fn composition_of_code(code: &BinaryCode) -> Composition {
    let mut parts = vec![1];
    for &b in code.bits() {
        if b {
            parts.push(1);
        } else {
            *parts.last_mut().unwrap() += 1;
        }
    }
    Composition(parts)
}

/// `R_I # R_J = R_{I' (i_r + j_1 - 1) J''}`; the same rule holds in the `S` and `Λ` bases.
pub fn sharp_r(i: &Composition, j: &Composition) -> Composition {
    let mut parts = i.parts().to_vec();
    let (first, rest) = j.parts().split_first().unwrap();
    *parts.last_mut().unwrap() += first - 1;
    parts.extend_from_slice(rest);
    Composition(parts)
}

/// `S^I # S^J` in the `S` basis.
pub fn sharp_s_i(i: &Composition, j: &Composition) -> Composition {
    sharp_r(i, j)
}

/// Linear extension of `#` in the `R` basis.
pub fn sharp_r_lin(a: &LinComb<Composition>, b: &LinComb<Composition>) -> LinComb<Composition> {
    a.bilinear_extend(b, |i, j| LinComb::term(sharp_r(i, j)))
}

/// The three bases of `Sym` read off binary codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymBasis {
    R,
    S,
    Lambda,
}

/// Expands the `#`-product `prod_i subst(code_i)` where each letter of the code
/// is replaced by a signed sum of generators, returning `R`-basis labels.
fn substitute(code: &BinaryCode, subst: impl Fn(bool) -> Vec<(bool, i64)>) -> LinComb<Composition> {
    let choices: Vec<Vec<(bool, i64)>> = code.bits().iter().map(|&b| subst(b)).collect();
    let mut out = LinComb::zero();
    for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let bits: Vec<bool> = pick.iter().map(|&&(b, _)| b).collect();
        let sign: i64 = pick.iter().map(|&&(_, s)| s).product();
        out.add_term(composition_of_code(&BinaryCode(bits)), sign);
    }
    out
}

/// `R_I`, `S^I` or `Λ^I` written in the `R` basis, by substituting into `b(I)`:
/// `0 -> x, x, y` and `1 -> y, x + y, x + y` respectively.
pub fn word_in_generators(i: &Composition, basis: SymBasis) -> LinComb<Composition> {
    let code = binary_code(i);
    match basis {
        SymBasis::R => substitute(&code, |b| vec![(b, 1)]),
        SymBasis::S => substitute(&code, |b| if b { vec![(false, 1), (true, 1)] } else { vec![(false, 1)] }),
        SymBasis::Lambda => substitute(&code, |b| if b { vec![(false, 1), (true, 1)] } else { vec![(true, 1)] }),
    }
}

/// Rewrites an `R`-basis element in the requested basis. With `a = x`, `b = x + y`
/// the `S` basis reads `x = a`, `y = b - a`; with `c = y`, `d = x + y` the `Λ`
/// basis reads `x = d - c`, `y = c`.
pub fn from_r(element: &LinComb<Composition>, basis: SymBasis) -> LinComb<Composition> {
    element.linear_extend(|i| {
        let code = binary_code(i);
        match basis {
            SymBasis::R => LinComb::term(i.clone()),
            SymBasis::S => substitute(&code, |b| if b { vec![(true, 1), (false, -1)] } else { vec![(false, 1)] }),
            SymBasis::Lambda => substitute(&code, |b| if b { vec![(false, 1)] } else { vec![(true, 1), (false, -1)] }),
        }
    })
}

/// Rewrites an element given in `basis` into the `R` basis.
pub fn to_r(element: &LinComb<Composition>, basis: SymBasis) -> LinComb<Composition> {
    element.linear_extend(|i| word_in_generators(i, basis))
}

/// A combination of tensors `A ⊗ B`.
pub type TensorComb = LinComb<(Composition, Composition)>;

/// Renders a tensor combination with a basis prefix on both legs.
pub fn render_tensor(t: &TensorComb, prefix: &str) -> String {
    t.render_with(|(a, b)| format!("{prefix}{a}⊗{prefix}{b}"))
}

/// `∇R_I`: every letter of `b(I)` goes left or right (both generators are
/// primitive), giving `2^{n-1}` terms before collection.
pub fn coproduct_r(i: &Composition) -> TensorComb {
    let bits = binary_code(i).0;
    let mut out = LinComb::zero();
    for mask in 0u64..(1 << bits.len()) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (pos, &b) in bits.iter().enumerate() {
            if mask >> pos & 1 == 1 {
                right.push(b)
            } else {
                left.push(b)
            }
        }
        out.add_term((composition_of_code(&BinaryCode(left)), composition_of_code(&BinaryCode(right))), 1);
    }
    out
}

pub fn coproduct_r_lin(element: &LinComb<Composition>) -> TensorComb {
    element.linear_extend(coproduct_r)
}

/// `∇S_n = sum_i C(n-1, i-1) S_i ⊗ S_{n+1-i}`, in the `S` basis.
pub fn coproduct_s_n(n: usize) -> Result<TensorComb> {
    if n < 1 {
        return Err(Error::Domain("S_n needs n >= 1".into()));
    }
    let mut out = LinComb::zero();
    let mut binom = BigInt::from(1);
    for i in 1..=n {
        let left = Composition::from_vec(vec![i as Letter]);
        let right = Composition::from_vec(vec![(n + 1 - i) as Letter]);
        out.add_term((left, right), binom.clone());
        binom = binom * (n - i) / i;
    }
    Ok(out)
}

/// Applies a linear map to both legs of a tensor.
pub fn map_tensor(t: &TensorComb, f: impl Fn(&LinComb<Composition>) -> LinComb<Composition>) -> TensorComb {
    t.linear_extend(|(a, b)| {
        let fa = f(&LinComb::term(a.clone()));
        let fb = f(&LinComb::term(b.clone()));
        fa.bilinear_extend(&fb, |x, y| LinComb::term((x.clone(), y.clone())))
    })
}

/// Counit: `1` on `R_1`, `0` elsewhere.
pub fn counit(i: &Composition) -> BigInt {
    BigInt::from((i == &Composition::unit()) as i32)
}

/// `F_I # F_J = sum over w in b(I) ⧢ b(J)` of `F_K` with `b(K) = w`, with multiplicities.
pub fn qsym_sharp_f(i: &Composition, j: &Composition) -> LinComb<Composition> {
    let (u, v) = (binary_code(i).0, binary_code(j).0);
    let n = u.len() + v.len();
    let mut out = LinComb::zero();
    for slots in (0..n).combinations(u.len()) {
        let (mut ui, mut vi) = (u.iter(), v.iter());
        let w: Vec<bool> =
            (0..n).map(|p| if slots.contains(&p) { *ui.next().unwrap() } else { *vi.next().unwrap() }).collect();
        out.add_term(composition_of_code(&BinaryCode(w)), 1);
    }
    out
}

/// `F_I # F_J` computed through duality with `Sym`: the coefficient of `F_K` is
/// the coefficient of `R_I ⊗ R_J` in `∇R_K`.
pub fn qsym_sharp_f_by_duality(i: &Composition, j: &Composition) -> LinComb<Composition> {
    let n = i.degree() + j.degree() - 1;
    let pair = (i.clone(), j.clone());
    Composition::all(n)
        .into_iter()
        .map(|k| {
            let c = coproduct_r(&k).coefficient(&pair);
            (k, c)
        })
        .collect()
}

/// `Sym` realized by descent compositions: `R_I` is the sum of words whose strict
/// descents sit exactly at the part boundaries of `I`.
pub struct Sym;

pub fn descent_composition(w: &[Letter]) -> Composition {
    composition_of_code(&BinaryCode(w.windows(2).map(|p| p[0] > p[1]).collect()))
}

impl Realization for Sym {
    type Label = Composition;

    const NAME: &'static str = "Sym";

    fn classify(w: &[Letter]) -> Composition {
        descent_composition(w)
    }

    fn degree(label: &Composition) -> usize {
        label.degree()
    }

    fn labels(n: usize) -> Vec<Composition> {
        Composition::all(n)
    }

    fn fiber(label: &Composition, alphabet: Letter) -> Vec<Word> {
        let code = binary_code(label).0;
        words_with_steps(label.degree(), alphabet, |i, a, b| if code[i] { a > b } else { a <= b })
            .into_iter()
            .map(Word::from_vec)
            .collect()
    }
}
