//! The Loday–Ronco algebra of planar binary trees.
//!
//! `P_T` is the sum of `G_σ` over the sylvester class of `T`: the permutations
//! whose decreasing tree has shape `T`. In the `F` basis the same element is the
//! sum over the linear extensions of the binary search tree of shape `T`, read
//! as a poset with the root on top.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fqsym::FQSym;
use crate::lincomb::LinComb;
use crate::normal_forms::{std, Permutation};
use crate::realization::Realization;
use crate::word::{Letter, Word};

/// A planar binary tree; `Leaf` is the empty tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

use BinaryTree::{Leaf, Node};

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        Node(Box::new(left), Box::new(right))
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// The tree whose root has only left descendants, `n` nodes.
    pub fn left_comb(n: usize) -> Self {
        (0..n).fold(Leaf, |acc, _| BinaryTree::node(acc, Leaf))
    }

    pub fn right_comb(n: usize) -> Self {
        (0..n).fold(Leaf, |acc, _| BinaryTree::node(Leaf, acc))
    }

    /// All trees with `n` nodes.
    pub fn all(n: usize) -> Vec<BinaryTree> {
        if n == 0 {
            return vec![Leaf];
        }
        let mut out = Vec::new();
        for left in 0..n {
            for l in BinaryTree::all(left) {
                for r in BinaryTree::all(n - 1 - left) {
                    out.push(BinaryTree::node(l.clone(), r));
                }
            }
        }
        out.sort();
        out
    }

    /// Every tree obtained by one right rotation `(A x B) y C -> A x (B y C)`.
    pub fn right_rotations(&self) -> Vec<BinaryTree> {
        let Node(l, r) = self else { return Vec::new() };
        let mut out = Vec::new();
        if let Node(a, b) = l.as_ref() {
            out.push(BinaryTree::node((**a).clone(), BinaryTree::node((**b).clone(), (**r).clone())));
        }
        for l2 in l.right_rotations() {
            out.push(BinaryTree::node(l2, (**r).clone()));
        }
        for r2 in r.right_rotations() {
            out.push(BinaryTree::node((**l).clone(), r2));
        }
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Leaf => out.push('·'),
            Node(l, r) => {
                out.push('(');
                l.write(out);
                out.push_str(")(");
                r.write(out);
                out.push(')');
            }
        }
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

fn parse_tree(chars: &[char], pos: &mut usize) -> Option<BinaryTree> {
    match chars.get(*pos)? {
        '·' | '.' => {
            *pos += 1;
            Some(Leaf)
        }
        '(' => {
            *pos += 1;
            let l = parse_tree(chars, pos)?;
            (chars.get(*pos)? == &')').then_some(())?;
            (chars.get(*pos + 1)? == &'(').then_some(())?;
            *pos += 2;
            let r = parse_tree(chars, pos)?;
            (chars.get(*pos)? == &')').then_some(())?;
            *pos += 1;
            Some(BinaryTree::node(l, r))
        }
        _ => None,
    }
}

impl FromStr for BinaryTree {
    type Err = Error;

    /// Parses `(L)(R)` with `·` or `.` for the empty tree; the empty tree itself is
    /// not a label.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        match parse_tree(&chars, &mut pos) {
            Some(t) if pos == chars.len() && t.size() > 0 => Ok(t),
            _ => Err(Error::invalid("binary tree", s, "expected a nonempty tree written (L)(R) with · for empty")),
        }
    }
}

/// Shape of the decreasing tree of a word with distinct letters: the maximum at
/// the root, the factors on each side as subtrees.
pub fn decreasing_tree_shape(w: &[Letter]) -> BinaryTree {
    match w.iter().enumerate().max_by_key(|&(_, a)| a) {
        None => Leaf,
        Some((i, _)) => BinaryTree::node(decreasing_tree_shape(&w[..i]), decreasing_tree_shape(&w[i + 1..])),
    }
}

/// The binary search tree of a shape: vertices labeled `1..n` in infix order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTree {
    /// `left[v]`, `right[v]`, `parent[v]` for labels `v` in `1..=n` (index 0 unused).
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
    pub parent: Vec<Option<usize>>,
    pub root: usize,
}

impl SearchTree {
    pub fn size(&self) -> usize {
        self.left.len() - 1
    }

    /// Vertex labels read in infix order, which is always `1..n`.
    pub fn infix(&self) -> Vec<usize> {
        fn go(t: &SearchTree, v: Option<usize>, out: &mut Vec<usize>) {
            if let Some(v) = v {
                go(t, t.left[v], out);
                out.push(v);
                go(t, t.right[v], out);
            }
        }
        let mut out = Vec::new();
        go(self, Some(self.root), &mut out);
        out
    }

    fn subtree_size(&self, v: Option<usize>) -> usize {
        v.map_or(0, |v| 1 + self.subtree_size(self.left[v]) + self.subtree_size(self.right[v]))
    }
}

/// The unique standard binary search tree of shape `t`.
pub fn bst_labeling(t: &BinaryTree) -> SearchTree {
    fn go(t: &BinaryTree, next: &mut usize, st: &mut SearchTree) -> Option<usize> {
        let Node(l, r) = t else { return None };
        let lv = go(l, next, st);
        *next += 1;
        let v = *next;
        let rv = go(r, next, st);
        st.left[v] = lv;
        st.right[v] = rv;
        for child in [lv, rv].into_iter().flatten() {
            st.parent[child] = Some(v);
        }
        Some(v)
    }
    let n = t.size();
    let mut st = SearchTree { left: vec![None; n + 1], right: vec![None; n + 1], parent: vec![None; n + 1], root: 0 };
    let mut next = 0;
    st.root = go(t, &mut next, &mut st).unwrap_or(0);
    st
}

/// Linear extensions of the poset on `1..=n` generated by `below[v] < v`
/// relations, listed as words (smaller elements first).
pub fn linear_extensions(n: usize, covers: &[(usize, usize)]) -> Vec<Permutation> {
    let mut preds = vec![0usize; n + 1];
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(lo, hi) in covers {
        preds[hi] += 1;
        succs[lo].push(hi);
    }
    fn go(
        current: &mut Vec<Letter>,
        preds: &mut Vec<usize>,
        succs: &[Vec<usize>],
        used: &mut Vec<bool>,
        n: usize,
        out: &mut Vec<Permutation>,
    ) {
        if current.len() == n {
            out.push(Permutation::from_vec(current.clone()));
            return;
        }
        for v in 1..=n {
            if used[v] || preds[v] > 0 {
                continue;
            }
            used[v] = true;
            succs[v].iter().for_each(|&s| preds[s] -= 1);
            current.push(v as Letter);
            go(current, preds, succs, used, n, out);
            current.pop();
            succs[v].iter().for_each(|&s| preds[s] += 1);
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut preds, &succs, &mut vec![false; n + 1], n, &mut out);
    out
}

fn bst_covers(st: &SearchTree, shift: usize) -> Vec<(usize, usize)> {
    (1..=st.size()).filter_map(|v| st.parent[v].map(|p| (v + shift, p + shift))).collect()
}

/// `P_T = sum of F_σ` over the linear extensions `σ` of the search tree.
pub fn to_f(t: &BinaryTree) -> Vec<Permutation> {
    let st = bst_labeling(t);
    linear_extensions(st.size(), &bst_covers(&st, 0))
}

/// The sylvester class of `T`: permutations whose decreasing tree has shape `T`.
pub fn sylvester_class(t: &BinaryTree) -> Vec<Permutation> {
    let mut class: Vec<Permutation> = to_f(t).iter().map(Permutation::inverse).collect();
    class.sort();
    class
}

/// Size of a sylvester class, by the hook length formula for trees.
pub fn class_size(t: &BinaryTree) -> usize {
    let st = bst_labeling(t);
    let n = st.size();
    let hooks: usize = (1..=n).map(|v| st.subtree_size(Some(v))).product();
    (1..=n).product::<usize>() / hooks
}

/// `d_k(P_T)`: nonzero iff `k` is the left child of `k + 1` in the search tree,
/// in which case the edge between them is contracted.
pub fn dk_p(t: &BinaryTree, k: usize) -> Result<Option<BinaryTree>> {
    let n = t.size();
    Error::check_index(k, 1, n.saturating_sub(1))?;
    let st = bst_labeling(t);
    if st.left[k + 1] != Some(k) {
        return Ok(None);
    }
    fn drop_vertex(t: &BinaryTree, target: usize, next: &mut usize) -> BinaryTree {
        let Node(l, r) = t else { return Leaf };
        let l2 = drop_vertex(l, target, next);
        *next += 1;
        let here = *next;
        let r2 = drop_vertex(r, target, next);
        if here == target {
            l2
        } else {
            BinaryTree::node(l2, r2)
        }
    }
    Ok(Some(drop_vertex(t, k, &mut 0)))
}

/// Regroups a `G`-basis element by decreasing-tree shape, failing unless every
/// sylvester class present is complete with a single coefficient.
pub fn from_g(element: &LinComb<Permutation>) -> Result<LinComb<BinaryTree>> {
    let mut groups: BTreeMap<BinaryTree, Vec<&Permutation>> = BTreeMap::new();
    for sigma in element.support() {
        groups.entry(decreasing_tree_shape(sigma.as_slice())).or_default().push(sigma);
    }
    let mut out = LinComb::zero();
    for (shape, members) in groups {
        let c = element.coefficient(members[0]);
        if members.len() != class_size(&shape) || members.iter().any(|m| element.coefficient(m) != c) {
            return Err(Error::NotInAlgebra {
                algebra: PBT::NAME,
                reason: format!("the sylvester class of {shape} is not uniformly present"),
            });
        }
        out.add_term(shape, c);
    }
    Ok(out)
}

/// `P_{T1} # P_{T2}`: linear extensions of the poset obtained by identifying the
/// rightmost vertex of the first search tree with the leftmost vertex of the
/// second, regrouped by shape.
pub fn sharp_p(t1: &BinaryTree, t2: &BinaryTree) -> LinComb<BinaryTree> {
    let (s1, s2) = (bst_labeling(t1), bst_labeling(t2));
    let k = s1.size();
    let n = k + s2.size() - 1;
    let mut covers = bst_covers(&s1, 0);
    covers.extend(bst_covers(&s2, k - 1));
    let g_side: LinComb<Permutation> = linear_extensions(n, &covers).iter().map(Permutation::inverse).collect();
    from_g(&g_side).expect("the Aval-Viennot poset is a union of sylvester classes")
}

/// Tamari order `a <= b`: `b` is reachable from `a` by right rotations.
pub fn tamari_le(a: &BinaryTree, b: &BinaryTree) -> bool {
    tamari_up_set(a).contains(b)
}

/// All trees above `a` in the Tamari order, `a` included.
pub fn tamari_up_set(a: &BinaryTree) -> BTreeSet<BinaryTree> {
    let mut seen = BTreeSet::from([a.clone()]);
    let mut stack = vec![a.clone()];
    while let Some(t) = stack.pop() {
        for up in t.right_rotations() {
            if seen.insert(up.clone()) {
                stack.push(up);
            }
        }
    }
    seen
}

/// The Tamari interval `[lo, hi]`.
pub fn tamari_interval(lo: &BinaryTree, hi: &BinaryTree) -> BTreeSet<BinaryTree> {
    tamari_up_set(lo).into_iter().filter(|t| tamari_le(t, hi)).collect()
}

fn class_extreme(t: &BinaryTree, maximal: bool) -> Permutation {
    let class = sylvester_class(t);
    let key = |s: &&Permutation| s.inversions();
    let found = if maximal { class.iter().max_by_key(key) } else { class.iter().min_by_key(key) };
    found.expect("classes are nonempty").clone()
}

/// The maximal element of the sylvester class; `H_T = S^{that permutation}`.
pub fn h_basis_label(t: &BinaryTree) -> Permutation {
    class_extreme(t, true)
}

/// The minimal element of the sylvester class.
pub fn class_minimum(t: &BinaryTree) -> Permutation {
    class_extreme(t, false)
}

/// `PBT` realized by the decreasing-tree shape of the standardized word.
pub struct PBT;

impl Realization for PBT {
    type Label = BinaryTree;

    const NAME: &'static str = "PBT";

    fn classify(w: &[Letter]) -> BinaryTree {
        decreasing_tree_shape(std(w).as_slice())
    }

    fn degree(label: &BinaryTree) -> usize {
        label.size()
    }

    fn labels(n: usize) -> Vec<BinaryTree> {
        BinaryTree::all(n)
    }

    fn fiber(label: &BinaryTree, alphabet: Letter) -> Vec<Word> {
        sylvester_class(label).iter().flat_map(|s| FQSym::fiber(s, alphabet)).collect()
    }

    fn fiber_size(label: &BinaryTree, alphabet: Letter) -> usize {
        sylvester_class(label).iter().map(|s| FQSym::fiber_size(s, alphabet)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::permutations;
    use crate::fqsym::{sharp_g, vee, wedge};
    use crate::normal_forms::contains_pattern;
    use crate::realization::{oracle_d, oracle_sharp};

    fn tree(s: &str) -> BinaryTree {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        assert_eq!(BinaryTree::left_comb(1).to_string(), "(·)(·)");
        assert_eq!(tree("((.)(.))(.)"), BinaryTree::left_comb(2));
        assert_eq!(BinaryTree::right_comb(2).to_string(), "(·)((·)(·))");
        assert!("·".parse::<BinaryTree>().is_err());
        assert!("(·)".parse::<BinaryTree>().is_err());
        for t in BinaryTree::all(4) {
            assert_eq!(tree(&t.to_string()), t);
        }
    }

    #[test]
    fn shapes_and_classes() {
        let p = |s: &str| s.parse::<Permutation>().unwrap();
        assert_eq!(decreasing_tree_shape(p("1234").as_slice()), BinaryTree::left_comb(4));
        assert_eq!(decreasing_tree_shape(p("4321").as_slice()), BinaryTree::right_comb(4));
        let shapes: BTreeSet<BinaryTree> =
            permutations(4).iter().map(|s| decreasing_tree_shape(s.as_slice())).collect();
        assert_eq!(shapes.len(), 14);
        let counts: Vec<usize> = (1..=6).map(|n| BinaryTree::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42, 132]);
        for n in 1..=5 {
            let mut by_shape: BTreeMap<BinaryTree, Vec<Permutation>> = BTreeMap::new();
            for s in permutations(n) {
                by_shape.entry(decreasing_tree_shape(s.as_slice())).or_default().push(s);
            }
            for (shape, members) in by_shape {
                assert_eq!(sylvester_class(&shape), members);
                assert_eq!(class_size(&shape), members.len());
            }
        }
    }

    #[test]
    fn search_trees() {
        let single = bst_labeling(&BinaryTree::left_comb(1));
        assert_eq!(single.root, 1);
        let comb = bst_labeling(&BinaryTree::left_comb(3));
        assert_eq!((comb.root, comb.left[3], comb.left[2]), (3, Some(2), Some(1)));
        for n in 1..=5 {
            for t in BinaryTree::all(n) {
                let st = bst_labeling(&t);
                assert_eq!(st.infix(), (1..=n).collect::<Vec<_>>());
                for ext in to_f(&t) {
                    assert_eq!(decreasing_tree_shape(ext.inverse().as_slice()), t);
                }
            }
        }
    }

    #[test]
    fn d_k_on_trees() {
        assert_eq!(dk_p(&BinaryTree::left_comb(3), 1).unwrap(), Some(BinaryTree::left_comb(2)));
        for k in 1..=2 {
            assert_eq!(dk_p(&BinaryTree::right_comb(3), k).unwrap(), None);
        }
        assert!(dk_p(&BinaryTree::left_comb(1), 1).is_err());
        // vertex 2 has no right child but hangs to the right of 1
        let zigzag = tree("((·)((·)(·)))(·)");
        assert_eq!(bst_labeling(&zigzag).right[2], None);
        assert_eq!(dk_p(&zigzag, 2).unwrap(), None);
        for n in 2..=5 {
            for t in BinaryTree::all(n) {
                for k in 1..n {
                    let expected: LinComb<BinaryTree> = dk_p(&t, k).unwrap().into_iter().collect();
                    assert_eq!(oracle_d::<PBT>(&t, k).unwrap(), expected, "d_{k} P_{t}");
                }
            }
        }
    }

    #[test]
    fn products_match_fqsym_and_words() {
        for n in 2..=5 {
            for k in 1..n {
                for t1 in BinaryTree::all(k) {
                    for t2 in BinaryTree::all(n + 1 - k) {
                        let rule = sharp_p(&t1, &t2);
                        let c1: LinComb<Permutation> = sylvester_class(&t1).into_iter().collect();
                        let c2: LinComb<Permutation> = sylvester_class(&t2).into_iter().collect();
                        assert_eq!(from_g(&c1.bilinear_extend(&c2, sharp_g)).unwrap(), rule);
                        if n <= 4 {
                            assert_eq!(oracle_sharp::<PBT>(&t1, &t2).unwrap(), rule);
                        }
                    }
                }
            }
        }
        let unit = BinaryTree::left_comb(1);
        for t in BinaryTree::all(4) {
            assert_eq!(sharp_p(&unit, &t), LinComb::term(t.clone()));
        }
    }

    #[test]
    fn supports_are_tamari_intervals() {
        for n in 2..=7 {
            for k in 1..n {
                let l = n + 1 - k;
                if k > 4 || l > 4 {
                    continue;
                }
                for t1 in BinaryTree::all(k) {
                    for t2 in BinaryTree::all(l) {
                        let support: BTreeSet<BinaryTree> = sharp_p(&t1, &t2).support().cloned().collect();
                        let lo = decreasing_tree_shape(wedge(&class_minimum(&t1), &class_minimum(&t2)).as_slice());
                        let hi = decreasing_tree_shape(vee(&h_basis_label(&t1), &h_basis_label(&t2)).as_slice());
                        assert_eq!(support, tamari_interval(&lo, &hi), "{t1} # {t2}");
                    }
                }
            }
        }
    }

    #[test]
    fn tamari_is_monotone_from_weak_order() {
        use crate::fqsym::weak_le;
        let perms = permutations(4);
        for a in &perms {
            for b in &perms {
                if weak_le(a, b) {
                    assert!(tamari_le(&decreasing_tree_shape(a.as_slice()), &decreasing_tree_shape(b.as_slice())));
                }
            }
        }
    }

    #[test]
    fn h_basis() {
        assert_eq!(h_basis_label(&BinaryTree::left_comb(3)), Permutation::identity(3));
        for n in 1..=5 {
            for t in BinaryTree::all(n) {
                let top = h_basis_label(&t);
                assert!(!contains_pattern(top.as_slice(), &[1, 3, 2]));
                let avoiders: Vec<Permutation> =
                    sylvester_class(&t).into_iter().filter(|s| !contains_pattern(s.as_slice(), &[1, 3, 2])).collect();
                assert_eq!(avoiders, vec![top]);
            }
        }
        for k in 1..=4 {
            for l in 1..=4 {
                for t1 in BinaryTree::all(k) {
                    for t2 in BinaryTree::all(l) {
                        let joined = vee(&h_basis_label(&t1), &h_basis_label(&t2));
                        assert_eq!(h_basis_label(&decreasing_tree_shape(joined.as_slice())), joined);
                    }
                }
            }
        }
    }
}
