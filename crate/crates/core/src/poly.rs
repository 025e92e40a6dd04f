//! Sparse multivariate polynomials in `y1..yn`.
//!
//! Terms print in graded-lex order with `yn > ... > y1`, e.g.
//! `y5 + y4 - y3 - y1` or `y4^2 - y4*y3 - y4*y1 + y3*y1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::Cyc12;
use crate::error::{Error, Result};

/// Coefficient ring of a [`Poly`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Text for a coefficient multiplying a monomial: `(sign, body)`,
    /// where an empty body stands for a unit.
    fn split_sign(&self) -> (bool, String);
}

impl Coeff for i64 {
    fn split_sign(&self) -> (bool, String) {
        let body = if self.abs() == 1 { String::new() } else { self.abs().to_string() };
        (*self < 0, body)
    }
}

impl Coeff for Cyc12 {
    fn split_sign(&self) -> (bool, String) {
        let nz: Vec<_> = self.0.iter().filter(|&&c| c != 0).collect();
        if nz.len() == 1 {
            let neg = *nz[0] < 0;
            let pos = if neg { -*self } else { *self };
            if pos == Cyc12::one() {
                return (neg, String::new());
            }
            return (neg, pos.to_string());
        }
        (false, format!("({self})"))
    }
}

impl Coeff for Ratio<i64> {
    fn split_sign(&self) -> (bool, String) {
        let a = self.abs();
        let body = if a.is_one() { String::new() } else { a.to_string() };
        (*self < Ratio::zero(), body)
    }
}

/// Exponent vector with trailing zeros trimmed; index 0 is `y1`.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, e) in a.iter().enumerate() {
        out[i] += e;
    }
    for (i, e) in b.iter().enumerate() {
        out[i] += e;
    }
    out
}

/// Graded lex with the highest variable most significant; `Greater`
/// means printed first.
fn grlex(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        let n = a.len().max(b.len());
        for i in (0..n).rev() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            if x != y {
                return x.cmp(&y);
            }
        }
        std::cmp::Ordering::Equal
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

/// Polynomials with integer coefficients.
pub type YPoly = Poly<i64>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The variable `y_i`, 1-based.
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are 1-based");
        let mut m = vec![0; i];
        m[i - 1] = 1;
        let mut p = Self::zero();
        p.add_term(m, C::one());
        p
    }

    pub fn term(mono: Monomial, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, c);
        p
    }

    pub fn add_term(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let mono = trim(mono);
        let entry = self.terms.entry(mono.clone()).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = Self::zero();
        for (m, k) in &self.terms {
            p.add_term(m.clone(), k.clone() * c.clone());
        }
        p
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut p = Poly::<D>::zero();
        for (m, k) in &self.terms {
            p.add_term(m.clone(), f(k));
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replaces `y_i` with `images[i-1]`; variables beyond the slice stay.
    pub fn substitute(&self, images: &[Self]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.iter().enumerate() {
                let base = images.get(i).cloned().unwrap_or_else(|| Self::var(i + 1));
                t = &t * &base.pow(e);
            }
            out = &out + &t;
        }
        out
    }

    /// Highest variable index that occurs, 1-based.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex(b.0, a.0));
        v
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, o: &Poly<C>) -> Poly<C> {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, o: &Poly<C>) -> Poly<C> {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, o: &Poly<C>) -> Poly<C> {
        let mut p = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(mono_mul(m1, m2), c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $f(self, o: Poly<C>) -> Poly<C> {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Coeff> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for Poly<C> {
    fn one() -> Self {
        Poly::constant(C::one())
    }
}

impl<C: Coeff> Coeff for Poly<C> {
    fn split_sign(&self) -> (bool, String) {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let (neg, body) = c.split_sign();
            let mono = fmt_mono(m, 'y');
            let text = match (body.is_empty(), mono.is_empty()) {
                (true, true) => String::new(),
                (true, false) => mono,
                (false, true) => body,
                (false, false) => format!("{body}*{mono}"),
            };
            return (neg, text);
        }
        (false, format!("({self})"))
    }
}

fn fmt_mono(m: &Monomial, var: char) -> String {
    let mut parts = Vec::new();
    for i in (0..m.len()).rev() {
        match m[i] {
            0 => {}
            1 => parts.push(format!("{var}{}", i + 1)),
            e => parts.push(format!("{var}{}^{e}", i + 1)),
        }
    }
    parts.join("*")
}

impl<C: Coeff> Poly<C> {
    /// Text with a custom variable letter.
    pub fn render(&self, var: char) -> String {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let (neg, body) = c.split_sign();
            let mono = fmt_mono(m, var);
            let text = match (body.is_empty(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => body,
                (false, false) => format!("{body}*{mono}"),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&text);
        }
        out
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('y'))
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl YPoly {
    pub fn int(c: i64) -> YPoly {
        YPoly::constant(c)
    }

    /// `y_j - y_i`.
    pub fn diff(j: usize, i: usize) -> YPoly {
        &YPoly::var(j) - &YPoly::var(i)
    }

    /// Parses the output grammar back, e.g. `"2*y3^2 - y1 + 4"`.
    pub fn parse(s: &str) -> Result<YPoly> {
        let bad = || Error::Parse(format!("not a polynomial: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = YPoly::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(bad());
            }
            let mut coeff: i64 = if neg { -1 } else { 1 };
            let mut mono: Monomial = Vec::new();
            for factor in term.split('*') {
                if let Some(v) = factor.strip_prefix('y') {
                    let (idx, exp) = match v.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
                        None => (v, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad())?;
                    if idx == 0 {
                        return Err(bad());
                    }
                    if mono.len() < idx {
                        mono.resize(idx, 0);
                    }
                    mono[idx - 1] += exp;
                } else {
                    coeff *= factor.parse::<i64>().map_err(|_| bad())?;
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Exact quotient `p / l` for a nonzero linear form `l`.
    ///
    /// ```
    /// use twostep::poly::YPoly;
    /// let p = &YPoly::diff(4, 1) * &YPoly::diff(4, 3);
    /// assert_eq!(p.exact_divide(&YPoly::diff(4, 1)).unwrap(), YPoly::diff(4, 3));
    /// ```
    pub fn exact_divide(&self, l: &YPoly) -> Result<YPoly> {
        let q = exact_divide_rational(&self.map_coeffs(|&c| Ratio::from_integer(c)), l)?;
        let mut out = YPoly::zero();
        for (m, c) in q.terms() {
            if !c.is_integer() {
                return Err(Error::NonIntegral);
            }
            out.add_term(m.clone(), c.to_integer());
        }
        Ok(out)
    }

    /// Rewrites `self` in the differences `z_i = y_{i+1} - y_i`. The
    /// result uses variable `i` for `z_i`; fails if `self` does not lie in
    /// the subring they generate.
    ///
    /// ```
    /// use twostep::poly::YPoly;
    /// let g = YPoly::diff(4, 1).graham_decompose().unwrap();
    /// assert_eq!(g.render('z'), "z3 + z2 + z1");
    /// ```
    pub fn graham_decompose(&self) -> Result<YPoly> {
        let n = self.max_var();
        // y_i -> y_1 + z_1 + ... + z_{i-1}, with y_1 in slot n and z_k in slot k
        let images: Vec<YPoly> = (1..=n)
            .map(|i| {
                (1..i).fold(YPoly::var(n.max(1)), |acc, k| &acc + &YPoly::var(k))
            })
            .collect();
        let anchor = n.max(1);
        let sub = self.substitute(&images);
        let mut out = YPoly::zero();
        for (m, &c) in sub.terms() {
            if m.len() >= anchor && m[anchor - 1] > 0 {
                return Err(Error::NotInDifferenceRing);
            }
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn graham_positive(&self) -> bool {
        self.graham_decompose()
            .map(|g| g.terms().all(|(_, &c)| c >= 0))
            .unwrap_or(false)
    }

    pub fn eval(&self, y: &[i64]) -> i64 {
        self.terms()
            .map(|(m, &c)| {
                m.iter()
                    .enumerate()
                    .fold(c, |acc, (i, &e)| acc * y[i].pow(e))
            })
            .sum()
    }
}

fn exact_divide_rational(p: &Poly<Ratio<i64>>, l: &YPoly) -> Result<Poly<Ratio<i64>>> {
    if l.degree() != Some(1) || !l.is_homogeneous() {
        return Err(Error::NotDivisible(format!("divisor {l} is not a nonzero linear form")));
    }
    let lr = l.map_coeffs(|&c| Ratio::from_integer(c));
    let k = l.max_var();
    let lead = l
        .terms()
        .find(|(m, _)| m.len() == k)
        .map(|(_, &c)| Ratio::from_integer(c))
        .unwrap();
    let mut rem = p.clone();
    let mut quot = Poly::<Ratio<i64>>::zero();
    loop {
        // the term with the largest power of y_k
        let pick = rem
            .terms()
            .filter(|(m, _)| m.len() >= k && m[k - 1] > 0)
            .max_by(|a, b| a.0[k - 1].cmp(&b.0[k - 1]).then_with(|| grlex(a.0, b.0)))
            .map(|(m, c)| (m.clone(), *c));
        let Some((mut m, c)) = pick else { break };
        m[k - 1] -= 1;
        let t = Poly::term(m, c / lead);
        rem = &rem - &(&t * &lr);
        quot = &quot + &t;
    }
    if !rem.is_zero() {
        return Err(Error::NotDivisible(format!("remainder {rem} dividing by {l}")));
    }
    Ok(quot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn printing_order() {
        let p = &(&YPoly::var(5) + &YPoly::var(4)) - &(&YPoly::var(3) + &YPoly::var(1));
        assert_eq!(p.to_string(), "y5 + y4 - y3 - y1");
        let q = &YPoly::diff(4, 3) * &YPoly::diff(4, 1);
        assert_eq!(q.to_string(), "y4^2 - y4*y3 - y4*y1 + y3*y1");
        assert_eq!(YPoly::zero().to_string(), "0");
        assert_eq!(YPoly::int(-3).to_string(), "-3");
        assert_eq!(YPoly::parse(&q.to_string()).unwrap(), q);
        assert_eq!(YPoly::parse("1").unwrap(), YPoly::one());
        assert!(YPoly::parse("y0").is_err());
    }

    #[test]
    fn division() {
        let p = &YPoly::diff(4, 1) * &YPoly::diff(4, 3);
        assert_eq!(p.exact_divide(&YPoly::diff(4, 1)).unwrap(), YPoly::diff(4, 3));
        assert_eq!(YPoly::zero().exact_divide(&YPoly::var(2)).unwrap(), YPoly::zero());
        assert!(matches!(
            YPoly::var(1).exact_divide(&YPoly::var(2)),
            Err(Error::NotDivisible(_))
        ));
        let two = &YPoly::var(1) * &YPoly::int(1);
        let l = YPoly::var(1).scale(&2);
        assert_eq!(two.exact_divide(&l), Err(Error::NonIntegral));
    }

    #[test]
    fn graham() {
        let g = YPoly::diff(4, 1).graham_decompose().unwrap();
        assert_eq!(g.len(), 3);
        assert!(YPoly::diff(4, 1).graham_positive());
        assert!(!YPoly::diff(1, 2).graham_positive());
        assert_eq!(YPoly::var(1).graham_decompose(), Err(Error::NotInDifferenceRing));
        let p = &YPoly::diff(4, 3) * &YPoly::diff(4, 1);
        assert!(p.graham_positive());
        assert_eq!(YPoly::one().graham_decompose().unwrap(), YPoly::one());
    }

    fn arb_poly() -> impl Strategy<Value = YPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 0..4), -5i64..5), 0..5).prop_map(
            |ts| {
                let mut p = YPoly::zero();
                for (m, c) in ts {
                    p.add_term(m, c);
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn multiply_then_divide(p in arb_poly(), a in -3i64..3, b in 1i64..3) {
            let l = &YPoly::var(3).scale(&b) + &YPoly::var(1).scale(&a);
            let prod = &p * &l;
            prop_assert_eq!(prod.exact_divide(&l).unwrap(), p.clone());
            prop_assert_eq!(YPoly::parse(&p.to_string()).unwrap(), p);
        }
    }
}
