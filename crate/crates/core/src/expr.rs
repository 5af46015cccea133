//! A small expression language over all the bases:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('#' | '*' | '·') factor)*
//! factor := '-' factor | INT | atom | '(' expr ')'
//! atom   := BASIS '[' payload ']'
//! ```
//!
//! The algebra is taken from the first atom unless one is forced; every later
//! atom is read in that algebra. An integer next to `*` or `#` scales.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fqsym::{self, triangular_change, FQSym};
use crate::fsym::{sharp_s_t, FSym, StandardTableau};
use crate::lincomb::LinComb;
use crate::normal_forms::{PackedWord, ParkingFunction, Permutation};
use crate::pbt::{sharp_p, BinaryTree, PBT};
use crate::pqsym::{product_pf, sharp_pf, PQSym};
use crate::realization::{self, Expansion};
use crate::sym_qsym::{from_r, qsym_sharp_f, sharp_r, to_r, Composition, Sym, SymBasis};
use crate::trialg::{product_tc, sharp_tc, sharp_td, PlaneTree, SegmentedComposition, TC, TD};
use crate::word::Letter;
use crate::wqsym::{self, HalfInversionTable, WQSym};

/// Quasi-symmetric functions in the fundamental basis, the dual of `Sym`.
pub struct QSym;

/// The surface syntax of one algebra together with its products.
///
/// `basis` always indexes into [`Surface::BASES`]; the first entry is the
/// basis used when two different bases meet.
pub trait Surface {
    type Label: Ord + Clone + fmt::Display;

    const NAME: &'static str;
    const BASES: &'static [&'static str];

    /// Reads a label from its bracketed payload, e.g. `[1,3,2]`.
    fn parse_label(payload: &str) -> Result<Self::Label>;

    fn render_label(basis: usize, label: &Self::Label) -> String {
        format!("{}{}", Self::BASES[basis], label)
    }

    fn sharp(basis: usize, a: &Self::Label, b: &Self::Label) -> Result<LinComb<Self::Label>>;

    /// The ordinary product, where it is part of the language.
    fn product(_basis: usize, _a: &Self::Label, _b: &Self::Label) -> Option<Result<LinComb<Self::Label>>> {
        None
    }

    fn to_canonical(_basis: usize, x: &LinComb<Self::Label>) -> LinComb<Self::Label> {
        x.clone()
    }

    /// Word expansion of a canonical-basis element over `{1..alphabet}`.
    fn expand(_x: &LinComb<Self::Label>, _alphabet: Letter) -> Result<Expansion> {
        Err(Error::Domain(format!("{} has no word realization", Self::NAME)))
    }

    fn from_canonical(_basis: usize, x: &LinComb<Self::Label>) -> LinComb<Self::Label> {
        x.clone()
    }
}

fn bracketed_tree<T: FromStr<Err = Error>>(payload: &str) -> Result<T> {
    let inner = payload.strip_prefix('[').and_then(|p| p.strip_suffix(']')).unwrap_or(payload);
    inner.parse()
}

/// Runs a canonical-basis rule on labels given in `basis`, returning to `basis`.
fn through_canonical<A: Surface>(
    basis: usize,
    a: &A::Label,
    b: &A::Label,
    op: impl Fn(&A::Label, &A::Label) -> LinComb<A::Label>,
) -> LinComb<A::Label> {
    let x = A::to_canonical(basis, &LinComb::term(a.clone()));
    let y = A::to_canonical(basis, &LinComb::term(b.clone()));
    A::from_canonical(basis, &x.bilinear_extend(&y, op))
}

impl Surface for FQSym {
    type Label = Permutation;

    const NAME: &'static str = "FQSym";
    const BASES: &'static [&'static str] = &["G", "F", "S", "E"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<Permutation> {
        payload.parse()
    }

    fn sharp(basis: usize, a: &Permutation, b: &Permutation) -> Result<LinComb<Permutation>> {
        Ok(match basis {
            0 => fqsym::sharp_g(a, b),
            1 => fqsym::sharp_f(a, b),
            2 => LinComb::term(fqsym::sharp_s(a, b)),
            _ => LinComb::term(fqsym::sharp_e(a, b)),
        })
    }

    fn product(basis: usize, a: &Permutation, b: &Permutation) -> Option<Result<LinComb<Permutation>>> {
        Some(Ok(through_canonical::<Self>(basis, a, b, fqsym::product_g)))
    }

    fn to_canonical(basis: usize, x: &LinComb<Permutation>) -> LinComb<Permutation> {
        match basis {
            0 => x.clone(),
            1 => x.map_labels(|p| Some(p.inverse())),
            2 => x.linear_extend(fqsym::s_basis),
            _ => x.linear_extend(fqsym::e_basis),
        }
    }

    fn from_canonical(basis: usize, x: &LinComb<Permutation>) -> LinComb<Permutation> {
        match basis {
            0 => x.clone(),
            1 => x.map_labels(|p| Some(p.inverse())),
            2 => fqsym::g_to_s(x),
            _ => fqsym::g_to_e(x),
        }
    }
}

fn half_inversions(u: &PackedWord) -> isize {
    let t = HalfInversionTable::of(u.as_slice());
    let n = u.len();
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).map(|(i, j)| t.value(i, j) as isize).sum()
}

impl Surface for WQSym {
    type Label = PackedWord;

    const NAME: &'static str = "WQSym";
    const BASES: &'static [&'static str] = &["M", "S", "E"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<PackedWord> {
        payload.parse()
    }

    fn render_label(basis: usize, label: &PackedWord) -> String {
        let letters: Vec<String> = label.as_slice().iter().map(|a| a.to_string()).collect();
        format!("{}[{}]", Self::BASES[basis], letters.join(","))
    }

    fn sharp(basis: usize, a: &PackedWord, b: &PackedWord) -> Result<LinComb<PackedWord>> {
        Ok(match basis {
            0 => wqsym::sharp_m(a, b),
            1 => LinComb::term(wqsym::sharp_s_pw(a, b)),
            _ => LinComb::term(wqsym::sharp_e_pw(a, b)),
        })
    }

    fn product(basis: usize, a: &PackedWord, b: &PackedWord) -> Option<Result<LinComb<PackedWord>>> {
        Some(Ok(through_canonical::<Self>(basis, a, b, wqsym::product_m)))
    }

    fn to_canonical(basis: usize, x: &LinComb<PackedWord>) -> LinComb<PackedWord> {
        match basis {
            0 => x.clone(),
            1 => x.linear_extend(wqsym::s_basis_pw),
            _ => x.linear_extend(wqsym::e_basis_pw),
        }
    }

    fn from_canonical(basis: usize, x: &LinComb<PackedWord>) -> LinComb<PackedWord> {
        match basis {
            0 => x.clone(),
            1 => triangular_change(x, wqsym::s_basis_pw, half_inversions),
            _ => triangular_change(x, wqsym::e_basis_pw, |u| -half_inversions(u)),
        }
    }
}

const SYM_BASES: [SymBasis; 3] = [SymBasis::R, SymBasis::S, SymBasis::Lambda];

impl Surface for Sym {
    type Label = Composition;

    const NAME: &'static str = "Sym";
    const BASES: &'static [&'static str] = &["R", "S", "Λ"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<Composition> {
        payload.parse()
    }

    fn sharp(_basis: usize, a: &Composition, b: &Composition) -> Result<LinComb<Composition>> {
        Ok(LinComb::term(sharp_r(a, b)))
    }

    fn to_canonical(basis: usize, x: &LinComb<Composition>) -> LinComb<Composition> {
        to_r(x, SYM_BASES[basis])
    }

    fn from_canonical(basis: usize, x: &LinComb<Composition>) -> LinComb<Composition> {
        from_r(x, SYM_BASES[basis])
    }
}

impl Surface for QSym {
    type Label = Composition;

    const NAME: &'static str = "QSym";
    const BASES: &'static [&'static str] = &["F"];

    fn parse_label(payload: &str) -> Result<Composition> {
        payload.parse()
    }

    fn sharp(_basis: usize, a: &Composition, b: &Composition) -> Result<LinComb<Composition>> {
        Ok(qsym_sharp_f(a, b))
    }
}

impl Surface for FSym {
    type Label = StandardTableau;

    const NAME: &'static str = "FSym";
    const BASES: &'static [&'static str] = &["S"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<StandardTableau> {
        payload.parse()
    }

    fn sharp(_basis: usize, a: &StandardTableau, b: &StandardTableau) -> Result<LinComb<StandardTableau>> {
        Ok(sharp_s_t(a, b))
    }
}

impl Surface for PBT {
    type Label = BinaryTree;

    const NAME: &'static str = "PBT";
    const BASES: &'static [&'static str] = &["P"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<BinaryTree> {
        bracketed_tree(payload)
    }

    fn render_label(_basis: usize, label: &BinaryTree) -> String {
        format!("P[{label}]")
    }

    fn sharp(_basis: usize, a: &BinaryTree, b: &BinaryTree) -> Result<LinComb<BinaryTree>> {
        Ok(sharp_p(a, b))
    }
}

impl Surface for TD {
    type Label = PlaneTree;

    const NAME: &'static str = "TD";
    const BASES: &'static [&'static str] = &["M"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<PlaneTree> {
        bracketed_tree(payload)
    }

    fn render_label(_basis: usize, label: &PlaneTree) -> String {
        format!("M[{label}]")
    }

    fn sharp(_basis: usize, a: &PlaneTree, b: &PlaneTree) -> Result<LinComb<PlaneTree>> {
        sharp_td(a, b)
    }
}

impl Surface for TC {
    type Label = SegmentedComposition;

    const NAME: &'static str = "TC";
    const BASES: &'static [&'static str] = &["M"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<SegmentedComposition> {
        bracketed_tree(payload)
    }

    fn render_label(_basis: usize, label: &SegmentedComposition) -> String {
        format!("M[{label}]")
    }

    fn sharp(
        _basis: usize,
        a: &SegmentedComposition,
        b: &SegmentedComposition,
    ) -> Result<LinComb<SegmentedComposition>> {
        Ok(LinComb::term(sharp_tc(a, b)))
    }

    fn product(
        _basis: usize,
        a: &SegmentedComposition,
        b: &SegmentedComposition,
    ) -> Option<Result<LinComb<SegmentedComposition>>> {
        Some(Ok(product_tc(a, b)))
    }
}

impl Surface for PQSym {
    type Label = ParkingFunction;

    const NAME: &'static str = "PQSym";
    const BASES: &'static [&'static str] = &["G"];

    fn expand(x: &LinComb<Self::Label>, alphabet: Letter) -> Result<Expansion> {
        realization::expand::<Self>(x, alphabet)
    }

    fn parse_label(payload: &str) -> Result<ParkingFunction> {
        payload.parse()
    }

    fn sharp(_basis: usize, a: &ParkingFunction, b: &ParkingFunction) -> Result<LinComb<ParkingFunction>> {
        Ok(sharp_pf(a, b))
    }

    fn product(_basis: usize, a: &ParkingFunction, b: &ParkingFunction) -> Option<Result<LinComb<ParkingFunction>>> {
        Some(Ok(product_pf(a, b)))
    }
}

/// An element of one algebra written in one of its bases.
pub struct Elem<A: Surface> {
    basis: usize,
    terms: LinComb<A::Label>,
}

impl<A: Surface> Clone for Elem<A> {
    fn clone(&self) -> Self {
        Elem { basis: self.basis, terms: self.terms.clone() }
    }
}

impl<A: Surface> PartialEq for Elem<A> {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.terms == other.terms
    }
}

impl<A: Surface> Eq for Elem<A> {}

impl<A: Surface> fmt::Debug for Elem<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<A: Surface> Elem<A> {
    fn atom(basis: usize, label: A::Label) -> Self {
        Elem { basis, terms: LinComb::term(label) }
    }

    /// Both operands in a common basis.
    fn align(self, other: Self) -> (usize, LinComb<A::Label>, LinComb<A::Label>) {
        if self.basis == other.basis {
            (self.basis, self.terms, other.terms)
        } else {
            (0, A::to_canonical(self.basis, &self.terms), A::to_canonical(other.basis, &other.terms))
        }
    }

    fn add(self, other: Self, negate: bool) -> Self {
        let (basis, mut x, y) = self.align(other);
        if negate {
            x -= y;
        } else {
            x += y;
        }
        Elem { basis, terms: x }
    }

    fn sharp(self, other: Self) -> Result<Self> {
        let (basis, x, y) = self.align(other);
        Ok(Elem { basis, terms: x.try_bilinear_extend(&y, |a, b| A::sharp(basis, a, b))? })
    }

    fn product(self, other: Self) -> Result<Self> {
        let (basis, x, y) = self.align(other);
        let terms = x.try_bilinear_extend(&y, |a, b| {
            A::product(basis, a, b).unwrap_or_else(|| {
                Err(Error::Domain(format!("the ordinary product `*` is not available in {}", A::NAME)))
            })
        })?;
        Ok(Elem { basis, terms })
    }

    fn scale(self, c: &BigInt) -> Self {
        Elem { basis: self.basis, terms: self.terms.scale(c) }
    }

    pub fn basis(&self) -> &'static str {
        A::BASES[self.basis]
    }

    pub fn terms(&self) -> &LinComb<A::Label> {
        &self.terms
    }

    fn render(&self) -> String {
        self.terms.render_with(|l| A::render_label(self.basis, l))
    }

    fn expand(&self, alphabet: Letter) -> Result<Expansion> {
        A::expand(&A::to_canonical(self.basis, &self.terms), alphabet)
    }

    fn term_list(&self) -> Vec<Term> {
        self.terms
            .sorted_terms(|l| A::render_label(self.basis, l))
            .into_iter()
            .map(|(label, coefficient)| Term { label, coefficient })
            .collect()
    }
}

macro_rules! algebras {
    ($($variant:ident => $surface:ty),* $(,)?) => {
        /// The algebras the language knows, in inference order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum Algebra {
            $($variant),*
        }

        impl Algebra {
            pub const ALL: &'static [Algebra] = &[$(Algebra::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Algebra::$variant => <$surface as Surface>::NAME),*
                }
            }

            pub fn bases(self) -> &'static [&'static str] {
                match self {
                    $(Algebra::$variant => <$surface as Surface>::BASES),*
                }
            }

            fn atom(self, basis: usize, payload: &str) -> Result<Element> {
                Ok(match self {
                    $(Algebra::$variant => {
                        Element::$variant(Elem::atom(basis, <$surface as Surface>::parse_label(payload)?))
                    })*
                })
            }
        }

        /// A value of some algebra.
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub enum Element {
            $($variant(Elem<$surface>)),*
        }

        impl Element {
            pub fn algebra(&self) -> Algebra {
                match self {
                    $(Element::$variant(_) => Algebra::$variant),*
                }
            }

            pub fn basis(&self) -> &'static str {
                match self {
                    $(Element::$variant(e) => e.basis()),*
                }
            }

            fn binary(self, other: Element, op: BinOp) -> Result<Element> {
                match (self, other) {
                    $((Element::$variant(x), Element::$variant(y)) => Ok(Element::$variant(match op {
                        BinOp::Add => x.add(y, false),
                        BinOp::Sub => x.add(y, true),
                        BinOp::Sharp => x.sharp(y)?,
                        BinOp::Product => x.product(y)?,
                    })),)*
                    (x, y) => Err(Error::TypeMismatch {
                        left: x.algebra().name().to_string(),
                        right: y.algebra().name().to_string(),
                    }),
                }
            }

            fn scale(self, c: &BigInt) -> Element {
                match self {
                    $(Element::$variant(e) => Element::$variant(e.scale(c))),*
                }
            }

            pub fn render(&self) -> String {
                match self {
                    $(Element::$variant(e) => e.render()),*
                }
            }

            pub fn terms(&self) -> Vec<Term> {
                match self {
                    $(Element::$variant(e) => e.term_list()),*
                }
            }

            /// The sum of word fibers over `{1..alphabet}`.
            pub fn expand(&self, alphabet: Letter) -> Result<Expansion> {
                match self {
                    $(Element::$variant(e) => e.expand(alphabet)),*
                }
            }
        }
    };
}

algebras! {
    FQSym => FQSym,
    WQSym => WQSym,
    Sym => Sym,
    QSym => QSym,
    FSym => FSym,
    PBT => PBT,
    TD => TD,
    TC => TC,
    PQSym => PQSym,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algebra::ALL.iter().copied().find(|a| a.name().eq_ignore_ascii_case(s.trim())).ok_or_else(|| {
            let names: Vec<&str> = Algebra::ALL.iter().map(|a| a.name()).collect();
            Error::invalid("algebra", s, format!("expected one of {}", names.join(", ")))
        })
    }
}

/// One rendered term of a result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub label: String,
    pub coefficient: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Sharp,
    Product,
}

/// Parsed expression. Atoms keep their text until the algebra is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Atom { basis: String, payload: String, position: usize },
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Atom { basis: String, payload: String },
    Op(BinOp),
    Open,
    Close,
}

const BASIS_LETTERS: &[char] = &['G', 'F', 'S', 'E', 'M', 'R', 'P', 'Λ', 'L'];

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        i += 1;
        let token = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                Token::Int(chars[start..i].iter().collect::<String>().parse().expect("digits"))
            }
            '+' => Token::Op(BinOp::Add),
            '-' => Token::Op(BinOp::Sub),
            '#' => Token::Op(BinOp::Sharp),
            '*' | '·' => Token::Op(BinOp::Product),
            '(' => Token::Open,
            ')' => Token::Close,
            c if BASIS_LETTERS.contains(&c) => {
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                if chars.get(i) != Some(&'[') {
                    return Err(syntax(i, format!("expected `[` after basis `{c}`")));
                }
                let open = i;
                let mut depth = 0usize;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(open, "unclosed `[`")),
                        Some('[') => depth += 1,
                        Some(']') => {
                            depth -= 1;
                            if depth == 0 {
                                i += 1;
                                break;
                            }
                        }
                        _ => {}
                    }
                    i += 1;
                }
                let basis = if c == 'L' { "Λ".to_string() } else { c.to_string() };
                Token::Atom { basis, payload: chars[open..i].iter().collect() }
            }
            other => return Err(syntax(start, format!("unexpected character `{other}`"))),
        };
        tokens.push((start, token));
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        while let Some(Token::Op(op @ (BinOp::Add | BinOp::Sub))) = self.peek() {
            let op = *op;
            self.pos += 1;
            left = Expr::Binary(op, Box::new(left), Box::new(self.term()?));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.factor()?;
        while let Some(Token::Op(op @ (BinOp::Sharp | BinOp::Product))) = self.peek() {
            let op = *op;
            self.pos += 1;
            left = Expr::Binary(op, Box::new(left), Box::new(self.factor()?));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr> {
        let position = self.position();
        let Some((_, token)) = self.tokens.get(self.pos).cloned() else {
            return Err(syntax(position, "unexpected end of input"));
        };
        self.pos += 1;
        match token {
            Token::Op(BinOp::Sub) => Ok(Expr::Neg(Box::new(self.factor()?))),
            Token::Int(n) => Ok(Expr::Int(n)),
            Token::Atom { basis, payload } => Ok(Expr::Atom { basis, payload, position }),
            Token::Open => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::Close) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(syntax(self.position(), "expected `)`")),
                }
            }
            Token::Close | Token::Op(_) => Err(syntax(position, "expected a number, a basis element or `(`")),
        }
    }
}

/// Parses an expression without resolving its labels.
pub fn parse(input: &str) -> Result<Expr> {
    let tokens = tokenize(input)?;
    let end = input.chars().count();
    let mut parser = Parser { tokens, pos: 0, end };
    let expr = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(syntax(parser.position(), "unexpected token"));
    }
    Ok(expr)
}

impl Expr {
    fn first_atom(&self) -> Option<(&str, &str)> {
        match self {
            Expr::Int(_) => None,
            Expr::Atom { basis, payload, .. } => Some((basis, payload)),
            Expr::Neg(e) => e.first_atom(),
            Expr::Binary(_, l, r) => l.first_atom().or_else(|| r.first_atom()),
        }
    }
}

/// The first algebra, in inference order, that reads `basis[payload]`.
pub fn infer_algebra(basis: &str, payload: &str) -> Result<Algebra> {
    let candidates: Vec<Algebra> = Algebra::ALL.iter().copied().filter(|a| a.bases().contains(&basis)).collect();
    let mut first_error = None;
    for algebra in &candidates {
        let index = algebra.bases().iter().position(|b| *b == basis).unwrap();
        match algebra.atom(index, payload) {
            Ok(_) => return Ok(*algebra),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.unwrap_or_else(|| Error::invalid("basis", basis, "unknown basis letter")))
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(BigInt),
    Element(Element),
}

impl Value {
    pub fn algebra(&self) -> Option<Algebra> {
        match self {
            Value::Scalar(_) => None,
            Value::Element(e) => Some(e.algebra()),
        }
    }

    pub fn render(&self) -> String {
        match self {
            Value::Scalar(n) => n.to_string(),
            Value::Element(e) => e.render(),
        }
    }

    pub fn terms(&self) -> Vec<Term> {
        match self {
            Value::Scalar(n) if n == &BigInt::from(0) => Vec::new(),
            Value::Scalar(n) => vec![Term { label: "1".to_string(), coefficient: n.clone() }],
            Value::Element(e) => e.terms(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn resolve(algebra: Algebra, basis: &str, payload: &str) -> Result<Element> {
    match algebra.bases().iter().position(|b| *b == basis) {
        Some(index) => algebra.atom(index, payload),
        None => Err(Error::TypeMismatch {
            left: algebra.name().to_string(),
            right: infer_algebra(basis, payload).map_or_else(|_| format!("{basis}[...]"), |a| a.name().to_string()),
        }),
    }
}

fn eval_in(expr: &Expr, algebra: Algebra) -> Result<Value> {
    Ok(match expr {
        Expr::Int(n) => Value::Scalar(n.clone()),
        Expr::Atom { basis, payload, .. } => Value::Element(resolve(algebra, basis, payload)?),
        Expr::Neg(e) => match eval_in(e, algebra)? {
            Value::Scalar(n) => Value::Scalar(-n),
            Value::Element(x) => Value::Element(x.scale(&BigInt::from(-1))),
        },
        Expr::Binary(op, l, r) => match (op, eval_in(l, algebra)?, eval_in(r, algebra)?) {
            (BinOp::Add, Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + b),
            (BinOp::Sub, Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a - b),
            (_, Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a * b),
            (BinOp::Add | BinOp::Sub, Value::Scalar(_), Value::Element(x))
            | (BinOp::Add | BinOp::Sub, Value::Element(x), Value::Scalar(_)) => {
                return Err(Error::TypeMismatch { left: "integer".to_string(), right: x.algebra().name().to_string() })
            }
            (_, Value::Scalar(c), Value::Element(x)) | (_, Value::Element(x), Value::Scalar(c)) => {
                Value::Element(x.scale(&c))
            }
            (op, Value::Element(x), Value::Element(y)) => Value::Element(x.binary(y, *op)?),
        },
    })
}

/// Evaluates `expr`, reading labels in `algebra` or in the algebra of the first atom.
pub fn eval(expr: &Expr, algebra: Option<Algebra>) -> Result<Value> {
    let algebra = match (algebra, expr.first_atom()) {
        (Some(a), _) => a,
        (None, Some((basis, payload))) => infer_algebra(basis, payload)?,
        (None, None) => Algebra::FQSym,
    };
    eval_in(expr, algebra)
}

/// Parses and evaluates in one step.
pub fn evaluate(input: &str, algebra: Option<Algebra>) -> Result<Value> {
    eval(&parse(input)?, algebra)
}
