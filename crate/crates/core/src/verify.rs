//! Exhaustive verification suites, one per property checked at desk scale.
//!
//! Every suite returns a [`Report`] on success and the first counterexample it
//! meets otherwise. Pairs of labels are visited in a fixed order, so the
//! counterexample reported is reproducible even though work is spread over
//! threads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::enumerate::{all_words, packed_words, permutations};
use crate::expr::Algebra;
use crate::fqsym::{
    is_non_internal_interval, is_noninterval, is_nonsecable, sharp_g, sharp_set, vee, wedge, FQSym, InversionSet,
};
use crate::fsym::{sharp_s_t, sharp_s_t_via_fqsym, FSym, StandardTableau};
use crate::lincomb::{LinComb, Series};
use crate::normal_forms::{contains_pattern, PackedWord, ParkingFunction, Permutation};
use crate::pbt::{
    class_minimum, decreasing_tree_shape, dk_p, h_basis_label, sharp_p, tamari_interval, BinaryTree, PBT,
};
use crate::pqsym::{dprime_k_lin, product_pf, sharp_pf, PQSym};
use crate::realization::{expand_label, oracle_d, oracle_sharp_via_d, regroup, Realization};
use crate::sym_qsym::{
    coproduct_r, coproduct_r_lin, coproduct_s_n, counit, from_r, map_tensor, qsym_sharp_f, qsym_sharp_f_by_duality,
    sharp_r, sharp_r_lin, to_r, Composition, Sym, SymBasis,
};
use crate::trialg::{sharp_tc, sharp_td, tc_generators_check, SegmentedComposition, TC, TD};
use crate::word::{Letter, Word};
use crate::wqsym::{count_nonsecable_pw, sharp_m, sharp_set_pw, vee_pw, wedge_pw, HalfInversionTable, WQSym};
use crate::Result;

/// Non-secable permutations of sizes `2, 3, ...` (OEIS A077607).
pub const A077607: [u64; 6] = [2, 2, 8, 44, 296, 2312];

/// Packed words of sizes `1, 2, ...` (OEIS A000670).
pub const A000670: [u64; 7] = [1, 3, 13, 75, 541, 4683, 47293];

/// Non-secable packed words of sizes `2, 3, ...`.
pub const NSPW: [u64; 6] = [3, 4, 24, 192, 1872, 21168];

/// A passing suite: how many cases were checked, plus any table it produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub lines: Vec<String>,
}

impl Report {
    fn new(suite: impl Into<String>, cases: usize) -> Self {
        Report { suite: suite.into(), cases, lines: Vec::new() }
    }

    fn merge(mut self, other: Report) -> Self {
        self.cases += other.cases;
        self.lines.extend(other.lines);
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        write!(f, "{}: {} cases passed", self.suite, self.cases)
    }
}

/// The first failure of a suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub suite: String,
    pub message: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: counterexample: {}", self.suite, self.message)
    }
}

pub type Outcome = std::result::Result<Report, Counterexample>;

fn fail(suite: &str, message: impl Into<String>) -> Counterexample {
    Counterexample { suite: suite.to_string(), message: message.into() }
}

/// Runs `check` on every item in parallel, reporting the earliest failure.
fn check_all<T: Sync>(suite: &str, items: &[T], check: impl Fn(&T) -> Option<String> + Sync + Send) -> Outcome {
    match items.par_iter().find_map_first(check) {
        Some(message) => Err(fail(suite, message)),
        None => Ok(Report::new(suite, items.len())),
    }
}

fn expect(suite: &str, ok: bool, message: impl FnOnce() -> String) -> std::result::Result<(), Counterexample> {
    if ok {
        Ok(())
    } else {
        Err(fail(suite, message()))
    }
}

/// Label pairs `(a, b)` whose `#` product has degree `n`, for `n` in `1..=max_deg`.
pub fn label_pairs<A: Realization>(max_deg: usize) -> Vec<(A::Label, A::Label)> {
    let mut pairs = Vec::new();
    for n in 1..=max_deg {
        for k in 1..=n {
            let right = A::labels(n + 1 - k);
            for a in A::labels(k) {
                for b in &right {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    pairs
}

/// The support of `G_α # G_β` is the weak-order interval
/// `[α ∧ β, α ∨ β]`, for every product of degree at most `max_deg`.
pub fn interval_fqsym(max_deg: usize) -> Outcome {
    let suite = "interval fqsym";
    let mut report = Report::new(suite, 0);
    for n in 1..=max_deg {
        let perms = permutations(n);
        let tables: Vec<InversionSet> = perms.iter().map(InversionSet::of).collect();
        let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let pairs: Vec<(Permutation, Permutation)> = (1..=n)
            .flat_map(|k| {
                let right = permutations(n + 1 - k);
                permutations(k).into_iter().flat_map(move |a| right.clone().into_iter().map(move |b| (a.clone(), b)))
            })
            .collect();
        report = report.merge(check_all(suite, &pairs, |(a, b)| {
            let (lo, hi) = (InversionSet::of(&wedge(a, b)), InversionSet::of(&vee(a, b)));
            let interval: Vec<usize> =
                (0..perms.len()).filter(|&i| lo.is_subset(&tables[i]) && tables[i].is_subset(&hi)).collect();
            let mut support: Vec<usize> = sharp_set(a, b).iter().map(|p| index[p]).collect();
            support.sort_unstable();
            (support != interval)
                .then(|| format!("G{a} # G{b} has {} terms, the interval has {}", support.len(), interval.len()))
        })?);
    }
    Ok(report)
}

/// The support of `M_u # M_v` is the pseudo-permutohedron interval
/// `[u ∧ v, u ∨ v]`, for every product of degree at most `max_deg`.
pub fn interval_wqsym(max_deg: usize) -> Outcome {
    let suite = "interval wqsym";
    let mut report = Report::new(suite, 0);
    for n in 1..=max_deg {
        let words = packed_words(n);
        let tables: Vec<HalfInversionTable> = words.iter().map(|u| HalfInversionTable::of(u.as_slice())).collect();
        let index: HashMap<&PackedWord, usize> = words.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let pairs: Vec<(PackedWord, PackedWord)> = (1..=n)
            .flat_map(|k| {
                let right = packed_words(n + 1 - k);
                packed_words(k).into_iter().flat_map(move |a| right.clone().into_iter().map(move |b| (a.clone(), b)))
            })
            .collect();
        report = report.merge(check_all(suite, &pairs, |(u, v)| {
            let lo = HalfInversionTable::of(wedge_pw(u, v).as_slice());
            let hi = HalfInversionTable::of(vee_pw(u, v).as_slice());
            let interval: Vec<usize> = (0..words.len()).filter(|&i| lo.le(&tables[i]) && tables[i].le(&hi)).collect();
            let mut support: Vec<usize> = sharp_set_pw(u, v).iter().map(|w| index[w]).collect();
            support.sort_unstable();
            (support != interval)
                .then(|| format!("M{u} # M{v} has {} terms, the interval has {}", support.len(), interval.len()))
        })?);
    }
    Ok(report)
}

/// Compares a combinatorial `#` rule with expand, concatenate, `d_k`, regroup.
fn oracle_suite<A: Realization>(
    max_deg: usize,
    rule: impl Fn(&A::Label, &A::Label) -> Result<LinComb<A::Label>> + Sync + Send,
) -> Outcome
where
    A::Label: Send + Sync,
{
    let suite = format!("oracle {}", A::NAME);
    check_all(&suite, &label_pairs::<A>(max_deg), |(a, b)| {
        let expected = match oracle_sharp_via_d::<A>(a, b) {
            Ok(x) => x,
            Err(e) => return Some(format!("{a} # {b}: oracle failed: {e}")),
        };
        match rule(a, b) {
            Ok(got) if got == expected => None,
            Ok(got) => Some(format!(
                "{a} # {b}: rule gives {}, oracle gives {}",
                got.render_with(|l| l.to_string()),
                expected.render_with(|l| l.to_string())
            )),
            Err(e) => Some(format!("{a} # {b}: rule failed: {e}")),
        }
    })
}

/// QSym has no word realization here; its `#` is checked against duality with
/// the coproduct of `Sym`.
fn qsym_duality_suite(max_deg: usize) -> Outcome {
    check_all("oracle QSym (duality)", &label_pairs::<Sym>(max_deg), |(i, j)| {
        let (got, dual) = (qsym_sharp_f(i, j), qsym_sharp_f_by_duality(i, j));
        (got != dual).then(|| format!("F{i} # F{j}: shuffle and duality disagree"))
    })
}

/// `G_a # G_b = d'_k(G_a G_b)`, both multiplicity free, for
/// `|a| + |b| <= max_deg + 1`.
pub fn pqsym_dprime_rule(max_deg: usize) -> Outcome {
    let pairs: Vec<(ParkingFunction, ParkingFunction)> = label_pairs::<PQSym>(max_deg);
    check_all("PQSym d'_k of product", &pairs, |(a, b)| {
        let lhs = sharp_pf(a, b);
        if lhs.iter().any(|(_, c)| *c != BigInt::from(1)) {
            return Some(format!("G{a} # G{b} has multiplicities"));
        }
        match dprime_k_lin(&product_pf(a, b), a.len()) {
            Ok(rhs) if rhs == lhs => None,
            Ok(_) => Some(format!("G{a} # G{b} differs from d'_{}(G{a} G{b})", a.len())),
            Err(e) => Some(e.to_string()),
        }
    })
}

/// The master oracle for one algebra: every label pair whose product has degree
/// at most `max_deg`.
pub fn oracle(algebra: Algebra, max_deg: usize) -> Outcome {
    match algebra {
        Algebra::FQSym => oracle_suite::<FQSym>(max_deg, |a, b| Ok(sharp_g(a, b))),
        Algebra::WQSym => oracle_suite::<WQSym>(max_deg, |a, b| Ok(sharp_m(a, b))),
        Algebra::Sym => oracle_suite::<Sym>(max_deg, |a, b| Ok(LinComb::term(sharp_r(a, b)))),
        Algebra::QSym => qsym_duality_suite(max_deg),
        Algebra::FSym => oracle_suite::<FSym>(max_deg, |a, b| Ok(sharp_s_t(a, b))),
        Algebra::PBT => oracle_suite::<PBT>(max_deg, |a, b| Ok(sharp_p(a, b))),
        Algebra::TD => oracle_suite::<TD>(max_deg, sharp_td),
        Algebra::TC => oracle_suite::<TC>(max_deg, |a, b| Ok(LinComb::term(sharp_tc(a, b)))),
        Algebra::PQSym => {
            let direct = oracle_suite::<PQSym>(max_deg, |a, b| Ok(sharp_pf(a, b)))?;
            Ok(direct.merge(pqsym_dprime_rule(max_deg)?))
        }
    }
}

fn nonsecable_table(max_n: usize) -> Vec<[usize; 3]> {
    (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let perms = permutations(n);
            let count = |f: fn(&Permutation) -> Result<bool>| perms.iter().filter(|p| f(p).unwrap()).count();
            [count(is_nonsecable), count(is_noninterval), count(is_non_internal_interval)]
        })
        .collect()
}

/// Counts of non-secable, non-interval and non-internal-interval permutations
/// for `n = 2..=max_n` against A077607, plus `1/(1 - NI(t)) = sum n! t^{n-1}`.
pub fn count_nonsecable_perms(max_n: usize) -> Outcome {
    let suite = "count nonsecable-perms";
    let table = nonsecable_table(max_n);
    let mut report = Report::new(suite, table.len());
    report.lines.push("n  nonsecable  noninterval  non-internal-interval  A077607".to_string());
    for (i, row) in table.iter().enumerate() {
        let n = i + 2;
        let reference = A077607.get(i).map_or("-".to_string(), |x| x.to_string());
        report.lines.push(format!("{n}  {}  {}  {}  {reference}", row[0], row[1], row[2]));
        expect(suite, row[1] == row[0] && row[2] == row[0], || {
            format!("n = {n}: the three generator counts differ: {row:?}")
        })?;
        if let Some(&x) = A077607.get(i) {
            expect(suite, row[0] as u64 == x, || {
                format!("n = {n}: {} non-secable permutations, expected {x}", row[0])
            })?;
        }
    }
    report.lines.push(format!("nonsecable: {}", table.iter().map(|r| r[0].to_string()).collect::<Vec<_>>().join(" ")));
    let order = max_n - 1;
    let ni = Series::new(std::iter::once(0).chain(table.iter().map(|r| r[0] as u64)), order);
    let factorials = Series::new(
        (1..=max_n as u64).scan(1u64, |f, n| {
            *f *= n;
            Some(*f)
        }),
        order,
    );
    let inverse = ni.geom_inverse().map_err(|e| fail(suite, e.to_string()))?;
    expect(suite, inverse == factorials, || format!("1/(1 - NI(t)) != sum n! t^(n-1) mod t^{}", order + 1))?;
    report.lines.push(format!("1/(1 - NI(t)) = sum n! t^(n-1) holds mod t^{}", order + 1));
    Ok(report)
}

/// Packed-word and non-secable packed-word counts for `n <= max_n`, plus
/// `PW(t) = 1/(1 - NSPW(t))`.
pub fn count_nonsecable_packed(max_n: usize) -> Outcome {
    let suite = "count nonsecable-packed";
    let rows: Vec<(usize, usize)> = (1..=max_n)
        .into_par_iter()
        .map(|n| (packed_words(n).len(), if n >= 2 { count_nonsecable_pw(n) } else { 0 }))
        .collect();
    let mut report = Report::new(suite, rows.len());
    report.lines.push("n  packed  A000670  nonsecable  NSPW".to_string());
    for (i, &(pw, ns)) in rows.iter().enumerate() {
        let n = i + 1;
        let show = |x: Option<&u64>| x.map_or("-".to_string(), |x| x.to_string());
        report.lines.push(format!(
            "{n}  {pw}  {}  {}  {}",
            show(A000670.get(i)),
            if n >= 2 { ns.to_string() } else { "-".to_string() },
            if n >= 2 { show(NSPW.get(i - 1)) } else { "-".to_string() }
        ));
        if let Some(&x) = A000670.get(i) {
            expect(suite, pw as u64 == x, || format!("n = {n}: {pw} packed words, expected {x}"))?;
        }
        if n >= 2 {
            if let Some(&x) = NSPW.get(i - 1) {
                expect(suite, ns as u64 == x, || format!("n = {n}: {ns} non-secable packed words, expected {x}"))?;
            }
        }
    }
    let join = |xs: Vec<usize>| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    report.lines.push(format!("packed: {}", join(rows.iter().map(|r| r.0).collect())));
    report.lines.push(format!("nonsecable: {}", join(rows.iter().skip(1).map(|r| r.1).collect())));
    let order = max_n - 1;
    let pw = Series::new(rows.iter().map(|r| r.0 as u64), order);
    let nspw = Series::new(std::iter::once(0).chain(rows.iter().skip(1).map(|r| r.1 as u64)), order);
    let inverse = nspw.geom_inverse().map_err(|e| fail(suite, e.to_string()))?;
    expect(suite, inverse == pw, || format!("PW(t) != 1/(1 - NSPW(t)) mod t^{}", order + 1))?;
    report.lines.push(format!("PW(t) = 1/(1 - NSPW(t)) holds mod t^{}", order + 1));
    Ok(report)
}

/// `FSym` is closed under `#`: for every pair of tableaux whose product has
/// degree at most `max_deg`, the `FQSym` product regroups into `FSym`.
pub fn fsym_stability(max_deg: usize) -> Outcome {
    let pairs: Vec<(StandardTableau, StandardTableau)> = label_pairs::<FSym>(max_deg);
    check_all("FSym stability", &pairs, |(a, b)| match sharp_s_t_via_fqsym(a, b) {
        Ok(x) if x == sharp_s_t(a, b) => None,
        Ok(_) => Some(format!("S{a} # S{b}: regrouped product differs from the tableau rule")),
        Err(e) => Some(format!("S{a} # S{b}: {e}")),
    })
}

/// The two non-stability witnesses: `d_1` of the square tableau in `FSym` and
/// `d_1(G_112)` in `PQSym` do not regroup.
pub fn negative_controls() -> Outcome {
    let suite = "negative controls";
    let square: StandardTableau = "[[1,2],[3,4]]".parse().expect("valid tableau");
    let e = expand_label::<FSym>(&square, 4).and_then(|x| x.d(1)).map_err(|e| fail(suite, e.to_string()))?;
    expect(suite, regroup::<FSym>(&e).is_err(), || "d_1(S_[[1,2],[3,4]]) regrouped in FSym".to_string())?;
    let g112: ParkingFunction = "[1,1,2]".parse().expect("valid parking function");
    let e = expand_label::<PQSym>(&g112, 4).and_then(|x| x.d(1)).map_err(|e| fail(suite, e.to_string()))?;
    expect(suite, regroup::<PQSym>(&e).is_err(), || "d_1(G_112) regrouped in PQSym".to_string())?;
    Ok(Report::new(suite, 2))
}

fn words_up_to(max_len: usize, alphabet: Letter) -> Vec<Word> {
    (1..=max_len).flat_map(|n| all_words(n, alphabet)).map(Word::from_vec).collect()
}

/// `(u # v) # w = u # (v # w)` on words over `{1..alphabet}` with total length
/// at most `max_len`.
pub fn word_associativity(max_len: usize, alphabet: Letter) -> Outcome {
    let suite = "word associativity";
    let by_len: Vec<Vec<Word>> = (0..=max_len)
        .map(|n| if n == 0 { Vec::new() } else { all_words(n, alphabet).into_iter().map(Word::from_vec).collect() })
        .collect();
    let words = words_up_to(max_len.saturating_sub(2), alphabet);
    let pairs: Vec<(&Word, &Word)> = words
        .iter()
        .flat_map(|u| words.iter().filter(move |v| u.len() + v.len() < max_len).map(move |v| (u, v)))
        .collect();
    let third = |u: &Word, v: &Word| (1..=max_len - u.len() - v.len()).flat_map(|n| by_len[n].iter());
    check_all(suite, &pairs, |(u, v)| {
        let uv = u.sharp(v);
        third(u, v).find_map(|w| {
            let left = uv.as_ref().and_then(|x| x.sharp(w));
            let right = v.sharp(w).and_then(|x| u.sharp(&x));
            (left != right).then(|| format!("({u} # {v}) # {w} != {u} # ({v} # {w})"))
        })
    })?;
    Ok(Report::new(suite, pairs.iter().map(|(u, v)| third(u, v).count()).sum()))
}

/// `u # v = d_{|u|}(uv)` for words over `{1..alphabet}` with `|u| + |v| <= max_len`.
pub fn sharp_is_d_of_concat(max_len: usize, alphabet: Letter) -> Outcome {
    let words = words_up_to(max_len.saturating_sub(1), alphabet);
    let pairs: Vec<(&Word, &Word)> = words
        .iter()
        .flat_map(|u| words.iter().filter(move |v| u.len() + v.len() <= max_len).map(move |v| (u, v)))
        .collect();
    check_all("u # v = d_k(uv)", &pairs, |(u, v)| match u.concat(v).d(u.len()) {
        Ok(d) if d == u.sharp(v) => None,
        Ok(_) => Some(format!("{u} # {v} differs from d_{}({u}{v})", u.len())),
        Err(e) => Some(e.to_string()),
    })
}

/// The degree-one unit is neutral and every nonzero product has degree
/// `n + m - 1`, using the combinatorial rule of one algebra.
fn unit_and_grading<A: Realization>(
    unit: A::Label,
    max_deg: usize,
    rule: impl Fn(&A::Label, &A::Label) -> Result<LinComb<A::Label>> + Sync + Send,
) -> Outcome
where
    A::Label: Send + Sync,
{
    let suite = format!("units and grading {}", A::NAME);
    let labels: Vec<A::Label> = (1..=max_deg).flat_map(A::labels).collect();
    let units = check_all(&suite, &labels, |x| {
        let single = LinComb::term(x.clone());
        let left = rule(&unit, x).ok()?;
        let right = rule(x, &unit).ok()?;
        (left != single || right != single).then(|| format!("{unit} is not neutral on {x}"))
    })?;
    let grading = check_all(&suite, &label_pairs::<A>(max_deg), |(a, b)| {
        let degree = A::degree(a) + A::degree(b) - 1;
        match rule(a, b) {
            Ok(x) => x.support().find(|c| A::degree(c) != degree).map(|c| format!("{a} # {b} contains {c}")),
            Err(e) => Some(e.to_string()),
        }
    })?;
    Ok(units.merge(grading))
}

/// Unit and grading checks in every algebra, products of degree at most `max_deg`.
pub fn units_and_grading(max_deg: usize) -> Outcome {
    let reports = [
        unit_and_grading::<FQSym>(Permutation::identity(1), max_deg, |a, b| Ok(sharp_g(a, b)))?,
        unit_and_grading::<WQSym>(packed_words(1).remove(0), max_deg, |a, b| Ok(sharp_m(a, b)))?,
        unit_and_grading::<Sym>(Composition::unit(), max_deg, |a, b| Ok(LinComb::term(sharp_r(a, b))))?,
        unit_and_grading::<Sym>(Composition::unit(), max_deg, |a, b| Ok(qsym_sharp_f(a, b)))?,
        unit_and_grading::<FSym>(FSym::labels(1).remove(0), max_deg, |a, b| Ok(sharp_s_t(a, b)))?,
        unit_and_grading::<PBT>(PBT::labels(1).remove(0), max_deg, |a, b| Ok(sharp_p(a, b)))?,
        unit_and_grading::<TD>(TD::labels(1).remove(0), max_deg, sharp_td)?,
        unit_and_grading::<TC>(TC::labels(1).remove(0), max_deg, |a, b| Ok(LinComb::term(sharp_tc(a, b))))?,
        unit_and_grading::<PQSym>(PQSym::labels(1).remove(0), max_deg, |a, b| Ok(sharp_pf(a, b)))?,
    ];
    Ok(reports.into_iter().fold(Report::new("units and grading", 0), Report::merge))
}

/// Single-tree `d_k` against the oracle, Tamari-interval supports, and
/// 132-avoidance closed under `∨`.
pub fn pbt_suite(max_d: usize, max_interval: usize, max_avoid: usize) -> Outcome {
    let suite = "PBT";
    let singles: Vec<(BinaryTree, usize)> = (2..=max_d)
        .flat_map(|n| BinaryTree::all(n).into_iter().flat_map(move |t| (1..n).map(move |k| (t.clone(), k))))
        .collect();
    let d = check_all(suite, &singles, |(t, k)| {
        let rule: LinComb<BinaryTree> = dk_p(t, *k).ok()?.into_iter().collect();
        match oracle_d::<PBT>(t, *k) {
            Ok(x) if x == rule => None,
            Ok(_) => Some(format!("d_{k}(P_{t}) differs from the oracle")),
            Err(e) => Some(e.to_string()),
        }
    })?;
    let pairs: Vec<(BinaryTree, BinaryTree)> = (1..=max_interval)
        .flat_map(|k| (1..=max_interval).map(move |l| (k, l)))
        .flat_map(|(k, l)| {
            let right = BinaryTree::all(l);
            BinaryTree::all(k).into_iter().flat_map(move |a| right.clone().into_iter().map(move |b| (a.clone(), b)))
        })
        .collect();
    let intervals = check_all(suite, &pairs, |(a, b)| {
        let support: BTreeSet<BinaryTree> = sharp_p(a, b).support().cloned().collect();
        let lo = decreasing_tree_shape(wedge(&class_minimum(a), &class_minimum(b)).as_slice());
        let hi = decreasing_tree_shape(vee(&h_basis_label(a), &h_basis_label(b)).as_slice());
        (support != tamari_interval(&lo, &hi)).then(|| format!("P_{a} # P_{b} is not the Tamari interval [{lo}, {hi}]"))
    })?;
    let avoiders: Vec<Permutation> =
        (1..=max_avoid).flat_map(permutations).filter(|p| !contains_pattern(p.as_slice(), &[1, 3, 2])).collect();
    let avoid_pairs: Vec<(&Permutation, &Permutation)> = avoiders
        .iter()
        .flat_map(|a| avoiders.iter().filter(move |b| a.len() + b.len() - 1 <= max_avoid).map(move |b| (a, b)))
        .collect();
    let closure = check_all(suite, &avoid_pairs, |(a, b)| {
        let joined = vee(a, b);
        contains_pattern(joined.as_slice(), &[1, 3, 2]).then(|| format!("{a} ∨ {b} = {joined} contains 132"))
    })?;
    Ok(d.merge(intervals).merge(closure))
}

type Triple = LinComb<(Composition, Composition, Composition)>;

fn coassociativity_sides(i: &Composition) -> (Triple, Triple) {
    let delta = coproduct_r(i);
    let left = delta.linear_extend(|(a, b)| {
        coproduct_r(a).linear_extend(|(x, y)| LinComb::term((x.clone(), y.clone(), b.clone())))
    });
    let right = delta.linear_extend(|(a, b)| {
        coproduct_r(b).linear_extend(|(x, y)| LinComb::term((a.clone(), x.clone(), y.clone())))
    });
    (left, right)
}

/// `S^I ↦ R_I` or `S^I ↦ Λ^I`, on elements written in the `R` basis.
fn automorphism(x: &LinComb<Composition>, target: SymBasis) -> LinComb<Composition> {
    to_r(&from_r(x, SymBasis::S), target)
}

/// Binomial coefficients in `∇S_n`, co-associativity and counit of `∇`, and the two automorphisms
/// commuting with `#` and `∇`.
pub fn sym_coproduct_suite(max_binomial: usize, max_deg: usize) -> Outcome {
    let suite = "Sym coproduct";
    let mut cases = 0;
    for n in 1..=max_binomial {
        let s_n = Composition::from_vec(vec![n as Letter]);
        let via_r = map_tensor(&coproduct_r_lin(&to_r(&LinComb::term(s_n), SymBasis::S)), |x| from_r(x, SymBasis::S));
        let formula = coproduct_s_n(n).map_err(|e| fail(suite, e.to_string()))?;
        expect(suite, via_r == formula, || format!("∇S_{n} does not match the binomial formula"))?;
        cases += 1;
    }
    let comps: Vec<Composition> = (1..=max_deg).flat_map(Composition::all).collect();
    let laws = check_all(suite, &comps, |i| {
        let (left, right) = coassociativity_sides(i);
        if left != right {
            return Some(format!("∇ is not co-associative on R{i}"));
        }
        let delta = coproduct_r(i);
        let counit_left: LinComb<Composition> = delta.iter().map(|((a, b), c)| (b.clone(), c * counit(a))).collect();
        let counit_right: LinComb<Composition> = delta.iter().map(|((a, b), c)| (a.clone(), c * counit(b))).collect();
        let single = LinComb::term(i.clone());
        if counit_left != single || counit_right != single {
            return Some(format!("counit law fails on R{i}"));
        }
        for target in [SymBasis::R, SymBasis::Lambda] {
            let image = automorphism(&single, target);
            let lhs = map_tensor(&coproduct_r(i), |x| automorphism(x, target));
            if lhs != coproduct_r_lin(&image) {
                return Some(format!("S ↦ {target:?} does not commute with ∇ on R{i}"));
            }
        }
        None
    })?;
    let pairs: Vec<(Composition, Composition)> = label_pairs::<Sym>(max_deg);
    let products = check_all(suite, &pairs, |(i, j)| {
        let (x, y) = (LinComb::term(i.clone()), LinComb::term(j.clone()));
        [SymBasis::R, SymBasis::Lambda].into_iter().find_map(|target| {
            let lhs = automorphism(&sharp_r_lin(&x, &y), target);
            let rhs = sharp_r_lin(&automorphism(&x, target), &automorphism(&y, target));
            (lhs != rhs).then(|| format!("S ↦ {target:?} does not commute with # on R{i}, R{j}"))
        })
    })?;
    Ok(Report::new(suite, cases).merge(laws).merge(products))
}

/// Freeness of `(TC, #)` on its three degree-two generators, sizes up to `max_n`.
pub fn tc_freeness(max_n: usize) -> Outcome {
    let suite = "TC freeness";
    expect(suite, tc_generators_check(max_n), || format!("unique factorization fails below size {max_n}"))?;
    let counts: Vec<String> = (1..=max_n).map(|n| SegmentedComposition::all(n).len().to_string()).collect();
    let mut report = Report::new(suite, max_n);
    report.lines.push(format!("labels by size: {}", counts.join(" ")));
    Ok(report)
}
