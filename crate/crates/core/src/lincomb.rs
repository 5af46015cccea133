//! Finite integer linear combinations of basis labels, and truncated integer
//! power series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite sum `sum c_b b` with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, BigInt>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(label: B) -> Self {
        let mut lc = Self::zero();
        lc.add_term(label, BigInt::one());
        lc
    }

    pub fn add_term(&mut self, label: B, coefficient: impl Into<BigInt>) {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(label.clone()).or_default();
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn coefficient(&self, label: &B) -> BigInt {
        self.terms.get(label).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(b, c)| (b.clone(), c * factor)).collect() }
    }

    /// Applies a basis-level linear map and sums.
    pub fn linear_extend<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out += f(b).scale(c);
        }
        out
    }

    /// Applies a fallible basis-level linear map and sums.
    pub fn try_linear_extend<C: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&B) -> std::result::Result<LinComb<C>, E>,
    ) -> std::result::Result<LinComb<C>, E> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out += f(b)?.scale(c);
        }
        Ok(out)
    }

    /// Relabels each basis element (a linear map sending labels to labels or to zero).
    pub fn map_labels<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Option<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            if let Some(image) = f(b) {
                out.add_term(image, c.clone());
            }
        }
        out
    }

    /// Extends a product defined on basis labels to all pairs of terms.
    pub fn bilinear_extend<C: Ord + Clone, D: Ord + Clone>(
        &self,
        other: &LinComb<C>,
        mut f: impl FnMut(&B, &C) -> LinComb<D>,
    ) -> LinComb<D> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out += f(a, b).scale(&(ca * cb));
            }
        }
        out
    }

    pub fn try_bilinear_extend<C: Ord + Clone, D: Ord + Clone, E>(
        &self,
        other: &LinComb<C>,
        mut f: impl FnMut(&B, &C) -> std::result::Result<LinComb<D>, E>,
    ) -> std::result::Result<LinComb<D>, E> {
        let mut out = LinComb::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out += f(a, b)?.scale(&(ca * cb));
            }
        }
        Ok(out)
    }

    /// Renders `3·F[1,4] + 2·F[2,3] + F[3,2]`, terms ordered by their text.
    pub fn render_with(&self, mut label_text: impl FnMut(&B) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut rendered: Vec<(String, &BigInt)> = self.terms.iter().map(|(b, c)| (label_text(b), c)).collect();
        rendered.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = String::new();
        for (i, (text, c)) in rendered.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            if !magnitude.is_one() {
                out.push_str(&format!("{magnitude}·"));
            }
            out.push_str(text);
        }
        out
    }

    /// Terms ordered by their text form, as used for rendering.
    pub fn sorted_terms(&self, mut label_text: impl FnMut(&B) -> String) -> Vec<(String, BigInt)> {
        let mut rendered: Vec<(String, BigInt)> = self.terms.iter().map(|(b, c)| (label_text(b), c.clone())).collect();
        rendered.sort_by(|a, b| a.0.cmp(&b.0));
        rendered
    }
}

impl<B: Ord + Clone> FromIterator<(B, BigInt)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, BigInt)>>(iter: I) -> Self {
        let mut lc = LinComb::zero();
        for (b, c) in iter {
            lc.add_term(b, c);
        }
        lc
    }
}

impl<B: Ord + Clone> FromIterator<B> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = B>>(iter: I) -> Self {
        let mut lc = LinComb::zero();
        for b in iter {
            lc.add_term(b, BigInt::one());
        }
        lc
    }
}

impl<B: Ord + Clone> std::ops::AddAssign for LinComb<B> {
    fn add_assign(&mut self, rhs: Self) {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
    }
}

impl<B: Ord + Clone> std::ops::SubAssign for LinComb<B> {
    fn sub_assign(&mut self, rhs: Self) {
        for (b, c) in rhs.terms {
            self.add_term(b, -c);
        }
    }
}

impl<B: Ord + Clone> Add for LinComb<B> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<B: Ord + Clone> Sub for LinComb<B> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<B: Ord + Clone> Neg for LinComb<B> {
    type Output = Self;
    fn neg(self) -> Self {
        LinComb { terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }
}

impl<B: Ord + Clone + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|b| b.to_string()))
    }
}

/// A power series truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coefficients: Vec<BigInt>,
}

impl Series {
    /// Missing coefficients are zero, extra ones are dropped.
    pub fn new(coefficients: impl IntoIterator<Item = impl Into<BigInt>>, order: usize) -> Self {
        let mut coefficients: Vec<BigInt> = coefficients.into_iter().map(Into::into).take(order + 1).collect();
        coefficients.resize(order + 1, BigInt::zero());
        Series { coefficients }
    }

    pub fn one(order: usize) -> Self {
        Series::new([1], order)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, i: usize) -> BigInt {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// `sum_{j >= 0} f^j`, defined when `f` has no constant term.
    pub fn geom_inverse(&self) -> Result<Series> {
        if !self.coefficients[0].is_zero() {
            return Err(Error::Domain("1/(1 - f) needs f(0) = 0".into()));
        }
        let order = self.order();
        // g = 1 + f g, solved coefficient by coefficient
        let mut g = vec![BigInt::zero(); order + 1];
        g[0] = BigInt::one();
        for n in 1..=order {
            let mut c = BigInt::zero();
            for i in 1..=n {
                c += &self.coefficients[i] * &g[n - i];
            }
            g[n] = c;
        }
        Ok(Series { coefficients: g })
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                out[i + j] += &self.coefficients[i] * &rhs.coefficients[j];
            }
        }
        Series { coefficients: out }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series { coefficients: (0..=order).map(|i| &self.coefficients[i] - &rhs.coefficients[i]).collect() }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            first = false;
            let magnitude = c.abs();
            let coefficient = if magnitude.is_one() && i > 0 { String::new() } else { magnitude.to_string() };
            let power = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            write!(f, "{sign}{coefficient}{power}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lc(terms: &[(&'static str, i64)]) -> LinComb<&'static str> {
        terms.iter().map(|&(b, c)| (b, BigInt::from(c))).collect()
    }

    #[test]
    fn cancellation_and_scaling() {
        let x = lc(&[("G12", 1)]);
        assert!((x.clone() + (-x.clone())).is_zero());
        assert!(x.scale(&BigInt::zero()).is_zero());
        let y = lc(&[("a", 2), ("b", -1)]);
        let prod = x.bilinear_extend(&y, |p, q| LinComb::term(format!("{p}{q}")));
        assert_eq!(prod.coefficient(&"G12a".to_string()), BigInt::from(2));
        let single = LinComb::term("u").bilinear_extend(&LinComb::term("v"), |p, q| LinComb::term((*p, *q)));
        assert_eq!(single, LinComb::term(("u", "v")));
    }

    #[test]
    fn rendering() {
        let x = lc(&[("F[3,2]", 1), ("F[1,4]", 3), ("F[2,3]", 2)]);
        assert_eq!(x.to_string(), "3·F[1,4] + 2·F[2,3] + F[3,2]");
        assert_eq!(lc(&[("b", -2), ("a", 1)]).to_string(), "a - 2·b");
        assert_eq!(lc(&[("a", -1)]).to_string(), "-a");
        assert_eq!(LinComb::<u8>::zero().to_string(), "0");
    }

    #[test]
    fn geometric_series() {
        let t = Series::new([0, 1], 6);
        assert_eq!(t.geom_inverse().unwrap(), Series::new([1; 7], 6));
        let ni = Series::new([0, 2, 2, 8, 44, 296, 2312], 6);
        assert_eq!(ni.geom_inverse().unwrap(), Series::new([1, 2, 6, 24, 120, 720, 5040], 6));
        let nspw = Series::new([0, 3, 4, 24, 192, 1872, 21168], 6);
        assert_eq!(nspw.geom_inverse().unwrap(), Series::new([1, 3, 13, 75, 541, 4683, 47293], 6));
        assert!(Series::one(3).geom_inverse().is_err());
    }

    proptest! {
        #[test]
        fn geom_inverse_times_one_minus(coeffs in proptest::collection::vec(-50i64..50, 1..8)) {
            let order = coeffs.len();
            let f = Series::new(std::iter::once(0).chain(coeffs), order);
            let g = f.geom_inverse().unwrap();
            let one_minus_f = &Series::one(order) - &f;
            prop_assert_eq!(&g * &one_minus_f, Series::one(order));
        }

        #[test]
        fn group_laws_and_distributivity(
            a in proptest::collection::vec((0u8..5, -5i64..5), 0..6),
            b in proptest::collection::vec((0u8..5, -5i64..5), 0..6),
            c in proptest::collection::vec((0u8..5, -5i64..5), 0..6),
        ) {
            let mk = |v: &Vec<(u8, i64)>| v.iter().map(|&(l, k)| (l, BigInt::from(k))).collect::<LinComb<u8>>();
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert!((a.clone() - a.clone()).is_zero());
            prop_assert!(a.iter().all(|(_, k)| !k.is_zero()));
            let prod = |x: &LinComb<u8>, y: &LinComb<u8>| x.bilinear_extend(y, |p, q| LinComb::term((*p, *q)));
            prop_assert_eq!(prod(&(a.clone() + b.clone()), &c), prod(&a, &c) + prod(&b, &c));
        }
    }
}
