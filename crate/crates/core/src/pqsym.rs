//! Parking quasi-symmetric functions.
//!
//! `G_a` is the sum of the words whose parkized word is `a`. Parkization is
//! compatible with taking factors, so `G_a # G_b` is the sum of the `G_c` whose
//! prefix of length `|a|` parks to `a` and whose suffix starting at that same
//! position parks to `b`. The word-level `d_k` does not preserve `PQSym`; the
//! corrected operator `d'_k` does, and `#` is `d'_k` applied to the product.

use crate::enumerate::parking_functions;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::normal_forms::{is_parking_function, pack, park, ParkingFunction};
use crate::realization::{inflate, Realization};
use crate::word::{Letter, Word};

/// Parking functions `c` of length `n` with `park(c_1..c_k) = a` and
/// `park(c_{s+1}..c_n) = b`. Parkization commutes with taking factors, so every
/// prefix of either window must already park like the matching prefix of `a`
/// or `b`, which prunes the search letter by letter.
fn split_search(n: usize, a: &ParkingFunction, b: &ParkingFunction, suffix_start: usize) -> LinComb<ParkingFunction> {
    struct Search<'a> {
        n: usize,
        suffix_start: usize,
        a_prefixes: Vec<ParkingFunction>,
        b_prefixes: Vec<ParkingFunction>,
        c: Vec<Letter>,
        out: &'a mut LinComb<ParkingFunction>,
    }

    impl Search<'_> {
        fn go(&mut self) {
            let i = self.c.len();
            if i == self.n {
                if is_parking_function(&self.c) {
                    self.out.add_term(ParkingFunction::from_vec(self.c.clone()), 1);
                }
                return;
            }
            for letter in 1..=self.n as Letter {
                self.c.push(letter);
                let prefix_ok = i >= self.a_prefixes.len() || park(&self.c) == self.a_prefixes[i];
                let suffix_ok = i < self.suffix_start
                    || park(&self.c[self.suffix_start..]) == self.b_prefixes[i - self.suffix_start];
                if prefix_ok && suffix_ok {
                    self.go();
                }
                self.c.pop();
            }
        }
    }

    let prefixes = |x: &ParkingFunction| (1..=x.len()).map(|i| park(&x.as_slice()[..i])).collect();
    let mut out = LinComb::zero();
    Search {
        n,
        suffix_start,
        a_prefixes: prefixes(a),
        b_prefixes: prefixes(b),
        c: Vec::with_capacity(n),
        out: &mut out,
    }
    .go();
    out
}

/// `G_a # G_b`, summed over parking functions of length `|a| + |b| - 1`.
pub fn sharp_pf(a: &ParkingFunction, b: &ParkingFunction) -> LinComb<ParkingFunction> {
    split_search(a.len() + b.len() - 1, a, b, a.len() - 1)
}

/// The ordinary product `G_a G_b`.
pub fn product_pf(a: &ParkingFunction, b: &ParkingFunction) -> LinComb<ParkingFunction> {
    split_search(a.len() + b.len(), a, b, a.len())
}

/// `d'_k(G_c)`: deletes `c_k` when `c_k = c_{k+1}` and what remains is still a
/// parking function.
pub fn dprime_k(c: &ParkingFunction, k: usize) -> Result<Option<ParkingFunction>> {
    Error::check_index(k, 1, c.len().saturating_sub(1))?;
    let s = c.as_slice();
    if s[k - 1] != s[k] {
        return Ok(None);
    }
    let mut rest = s.to_vec();
    rest.remove(k - 1);
    Ok(is_parking_function(&rest).then(|| ParkingFunction::from_vec(rest)))
}

/// Inverse of `d'_k` on its support: doubles the `k`-th letter. Always a
/// parking function.
pub fn dprime_k_inverse(c: &ParkingFunction, k: usize) -> Result<ParkingFunction> {
    Error::check_index(k, 1, c.len())?;
    let mut letters = c.as_slice().to_vec();
    letters.insert(k - 1, letters[k - 1]);
    Ok(ParkingFunction::from_vec(letters))
}

/// `d'_k` extended linearly.
pub fn dprime_k_lin(x: &LinComb<ParkingFunction>, k: usize) -> Result<LinComb<ParkingFunction>> {
    x.try_linear_extend(|c| Ok(dprime_k(c, k)?.into_iter().collect()))
}

/// `PQSym` realized by parkization.
pub struct PQSym;

impl Realization for PQSym {
    type Label = ParkingFunction;

    const NAME: &'static str = "PQSym";

    fn classify(w: &[Letter]) -> ParkingFunction {
        park(w)
    }

    fn degree(label: &ParkingFunction) -> usize {
        label.len()
    }

    fn labels(n: usize) -> Vec<ParkingFunction> {
        parking_functions(n)
    }

    /// Parkization never merges two distinct letters, so the fiber only holds
    /// words with the same packing as the label.
    fn fiber(label: &ParkingFunction, alphabet: Letter) -> Vec<Word> {
        inflate(pack(label.as_slice()).as_slice(), alphabet)
            .into_iter()
            .filter(|w| park(w) == *label)
            .map(Word::from_vec)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::permutations;
    use crate::fqsym::sharp_g;
    use crate::normal_forms::Permutation;
    use crate::realization::{expand_label, oracle_product, oracle_sharp, regroup};

    fn pf(s: &str) -> ParkingFunction {
        s.parse().unwrap()
    }

    fn render(x: &LinComb<ParkingFunction>) -> String {
        x.render_with(|c| format!("G{c}"))
    }

    #[test]
    fn fiber_matches_filtering() {
        use crate::enumerate::all_words;
        for n in 1..=4 {
            for label in parking_functions(n) {
                for alphabet in [n as Letter, n as Letter + 2] {
                    let filtered: Vec<Word> =
                        all_words(n, alphabet).into_iter().filter(|w| park(w) == label).map(Word::from_vec).collect();
                    let mut direct = PQSym::fiber(&label, alphabet);
                    direct.sort();
                    assert_eq!(direct, filtered, "{label} over {alphabet}");
                }
            }
        }
    }

    #[test]
    fn goldens() {
        let three: LinComb<ParkingFunction> =
            ["[1,2,1,1,6,1]", "[1,2,1,1,5,1]", "[1,2,1,1,4,1]"].into_iter().map(pf).collect();
        assert_eq!(sharp_pf(&pf("[1,2,1]"), &pf("[1,1,4,1]")), three);
        let eleven = [
            "2722126", "2722125", "2722124", "2622127", "2622126", "2622125", "2622124", "2522127", "2522126",
            "2522125", "2522124",
        ];
        let expected: LinComb<ParkingFunction> = eleven
            .iter()
            .map(|s| ParkingFunction::new(s.bytes().map(|b| (b - b'0') as Letter).collect()).unwrap())
            .collect();
        let got = sharp_pf(&pf("[1,4,1,1]"), &pf("[2,1,2,4]"));
        assert_eq!(got.len(), 11);
        assert_eq!(got, expected);
        let b = pf("[2,1,3,1]");
        assert_eq!(sharp_pf(&pf("[1]"), &b), LinComb::term(b.clone()));
        assert_eq!(render(&product_pf(&pf("[1]"), &pf("[1]"))), "G[1,1] + G[1,2] + G[2,1]");
    }

    #[test]
    fn three_reads_as_shifted_words() {
        let got = sharp_pf(&pf("[1,2,1]"), &pf("[1,1,4,1]"));
        let support: Vec<String> = got.support().map(|c| c.to_string()).collect();
        assert_eq!(support, vec!["[1,2,1,1,4,1]", "[1,2,1,1,5,1]", "[1,2,1,1,6,1]"]);
    }

    #[test]
    fn dprime() {
        assert_eq!(dprime_k(&pf("[1,1,2]"), 1).unwrap(), Some(pf("[1,2]")));
        assert_eq!(dprime_k(&pf("[1,1]"), 1).unwrap(), Some(pf("[1]")));
        assert_eq!(dprime_k(&pf("[1,2,1]"), 1).unwrap(), None);
        assert!(dprime_k(&pf("[1,2,1]"), 3).is_err());
        for n in 2..=6 {
            for k in 1..n {
                let with_pair: Vec<ParkingFunction> =
                    parking_functions(n).into_iter().filter(|c| c.as_slice()[k - 1] == c.as_slice()[k]).collect();
                let mut images: Vec<ParkingFunction> =
                    with_pair.iter().filter_map(|c| dprime_k(c, k).unwrap()).collect();
                images.sort();
                images.dedup();
                assert_eq!(images, parking_functions(n - 1), "n={n} k={k}");
                for c in parking_functions(n - 1) {
                    let up = dprime_k_inverse(&c, k).unwrap();
                    assert_eq!(dprime_k(&up, k).unwrap(), Some(c));
                }
            }
        }
    }

    #[test]
    fn sharp_is_dprime_of_product() {
        for n in 2..=6 {
            for k in 1..n {
                for a in parking_functions(k) {
                    for b in parking_functions(n - k) {
                        let lhs = sharp_pf(&a, &b);
                        assert!(lhs.iter().all(|(_, c)| *c == 1.into()));
                        assert_eq!(dprime_k_lin(&product_pf(&a, &b), k).unwrap(), lhs, "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_agreement() {
        for n in 2..=4 {
            for k in 1..n {
                for a in parking_functions(k) {
                    for b in parking_functions(n + 1 - k) {
                        assert_eq!(oracle_sharp::<PQSym>(&a, &b).unwrap(), sharp_pf(&a, &b));
                    }
                }
            }
        }
        for a in parking_functions(2) {
            for b in parking_functions(2) {
                assert_eq!(oracle_product::<PQSym>(&a, &b).unwrap(), product_pf(&a, &b));
            }
        }
    }

    #[test]
    fn not_stable_under_d() {
        let expansion = expand_label::<PQSym>(&pf("[1,1,2]"), 4).unwrap();
        let err = regroup::<PQSym>(&expansion.d(1).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotInAlgebra { .. }));
    }

    /// `G_σ` of `FQSym` is the sum of the `G_a` with `std(a) = σ`.
    #[test]
    fn fqsym_embeds() {
        let embed = |x: &LinComb<Permutation>, n: usize| -> LinComb<ParkingFunction> {
            let classes = parking_functions(n);
            x.linear_extend(|p| {
                classes.iter().filter(|c| crate::normal_forms::std(c.as_slice()) == *p).cloned().collect()
            })
        };
        for n in 2..=5 {
            for k in 1..n {
                for a in permutations(k) {
                    for b in permutations(n + 1 - k) {
                        let lhs = embed(&LinComb::term(a.clone()), k)
                            .bilinear_extend(&embed(&LinComb::term(b.clone()), n + 1 - k), sharp_pf);
                        assert_eq!(lhs, embed(&sharp_g(&a, &b), n), "{a} {b}");
                    }
                }
            }
        }
    }
}
