//! 012-strings, Bruhat covers and the forms `C_u`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::delta::DeltaForm;
use crate::error::{Error, Result};
use crate::label::Label;
use crate::poly::YPoly;

/// A word over `{0,1,2}`. With `a` zeros, `b-a` ones and `n-b` twos it
/// indexes a Schubert class of `Fl(a,b;n)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct String012(Vec<u8>);

/// The flag variety `Fl(a,b;n)` a string belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Content {
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

impl Content {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Content> {
        if a <= b && b <= n {
            Ok(Content { a, b, n })
        } else {
            Err(Error::BadString(format!("Fl({a},{b};{n}) needs a <= b <= n")))
        }
    }

    pub fn dim(self) -> usize {
        let (a, b, n) = (self.a, self.b, self.n);
        a * (b - a) + a * (n - b) + (b - a) * (n - b)
    }

    /// All strings with this content, in lexicographic order.
    pub fn strings(self) -> Vec<String012> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.n);
        fn rec(left: [usize; 3], cur: &mut Vec<u8>, out: &mut Vec<String012>) {
            if left == [0, 0, 0] {
                out.push(String012(cur.clone()));
                return;
            }
            for d in 0..3 {
                if left[d] > 0 {
                    let mut l = left;
                    l[d] -= 1;
                    cur.push(d as u8);
                    rec(l, cur, out);
                    cur.pop();
                }
            }
        }
        rec([self.a, self.b - self.a, self.n - self.b], &mut cur, &mut out);
        out
    }

    /// `0^a 1^(b-a) 2^(n-b)`.
    pub fn identity(self) -> String012 {
        let mut v = vec![0; self.a];
        v.extend(std::iter::repeat_n(1, self.b - self.a));
        v.extend(std::iter::repeat_n(2, self.n - self.b));
        String012(v)
    }

    /// `2^(n-b) 1^(b-a) 0^a`, the top of the Bruhat order.
    pub fn longest(self) -> String012 {
        let mut v = self.identity().0;
        v.reverse();
        String012(v)
    }

    /// Every `Fl(a,b;n)` with `n` in the given range.
    pub fn all_up_to(n_max: usize) -> Vec<Content> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            for b in 0..=n {
                for a in 0..=b {
                    out.push(Content { a, b, n });
                }
            }
        }
        out
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fl({},{};{})", self.a, self.b, self.n)
    }
}

/// A Bruhat cover `from -> to` with its label `d_{from_i} - d_{to_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEdge {
    pub from: String012,
    pub to: String012,
    pub delta: DeltaForm<i64>,
    /// First and last changed positions, 0-based.
    pub span: (usize, usize),
}

impl String012 {
    pub fn new(digits: Vec<u8>) -> Result<String012> {
        if digits.iter().all(|&d| d < 3) {
            Ok(String012(digits))
        } else {
            Err(Error::BadString(format!("{digits:?}")))
        }
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.0.iter().map(|&d| Label::new(d).unwrap()).collect()
    }

    pub fn from_labels(ls: &[Label]) -> Result<String012> {
        String012::new(ls.iter().map(|l| l.value()).collect())
    }

    pub fn content(&self) -> Content {
        let c = |d| self.0.iter().filter(|&&x| x == d).count();
        let a = c(0);
        let b = a + c(1);
        Content { a, b, n: self.0.len() }
    }

    /// Checks the string belongs to `Fl(a,b;n)`.
    pub fn check(&self, c: Content) -> Result<()> {
        if self.content() == c {
            Ok(())
        } else {
            Err(Error::BadString(format!("{self} is not a string for {c}")))
        }
    }

    /// Number of inversions.
    ///
    /// ```
    /// use twostep::String012;
    /// let u: String012 = "120210".parse().unwrap();
    /// assert_eq!(u.length(), 8);
    /// ```
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    pub fn reversed(&self) -> String012 {
        let mut v = self.0.clone();
        v.reverse();
        String012(v)
    }

    /// Reverse and swap `0 <-> 2`.
    pub fn dual(&self) -> String012 {
        String012(self.0.iter().rev().map(|&d| 2 - d).collect())
    }

    fn delta_at(&self, other: &String012, i: usize) -> DeltaForm<i64> {
        let mut d = DeltaForm([0i64; 3]);
        d.0[self.0[i] as usize] += 1;
        d.0[other.0[i] as usize] -= 1;
        d
    }

    /// All covers `self -> u'`.
    pub fn covers(&self) -> Vec<CoverEdge> {
        let v = &self.0;
        let mut out = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let mid = &v[i + 1..j];
                let ok = match (v[i], v[j]) {
                    (0, 1) => mid.iter().all(|&d| d == 2),
                    (0, 2) => mid.is_empty(),
                    (1, 2) => mid.iter().all(|&d| d == 0),
                    _ => false,
                };
                if ok {
                    let mut t = v.clone();
                    t.swap(i, j);
                    let to = String012(t);
                    out.push(CoverEdge {
                        delta: self.delta_at(&to, i),
                        from: self.clone(),
                        to,
                        span: (i, j),
                    });
                }
            }
        }
        out
    }

    /// All covers `w' -> self`.
    pub fn cocovers(&self) -> Vec<CoverEdge> {
        let v = &self.0;
        let mut out = Vec::new();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let mid = &v[i + 1..j];
                let ok = match (v[i], v[j]) {
                    (1, 0) => mid.iter().all(|&d| d == 2),
                    (2, 0) => mid.is_empty(),
                    (2, 1) => mid.iter().all(|&d| d == 0),
                    _ => false,
                };
                if ok {
                    let mut t = v.clone();
                    t.swap(i, j);
                    let from = String012(t);
                    out.push(CoverEdge {
                        delta: from.delta_at(self, i),
                        from,
                        to: self.clone(),
                        span: (i, j),
                    });
                }
            }
        }
        out
    }

    /// The cover `self -> to`, if there is one.
    pub fn cover_to(&self, to: &String012) -> Option<CoverEdge> {
        self.covers().into_iter().find(|c| &c.to == to)
    }

    /// `C_u = sum_i d_{u_i} y_i`.
    pub fn c_form(&self) -> DeltaForm<YPoly> {
        let mut f = DeltaForm([YPoly::zero(), YPoly::zero(), YPoly::zero()]);
        for (i, &d) in self.0.iter().enumerate() {
            f.0[d as usize] = &f.0[d as usize] + &YPoly::var(i + 1);
        }
        f
    }

    /// `prod_{i<j, u_i > u_j} (y_j - y_i)`.
    pub fn extreme_constant(&self) -> YPoly {
        let v = &self.0;
        let mut p = YPoly::one();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    p = &p * &YPoly::diff(j + 1, i + 1);
                }
            }
        }
        p
    }
}

impl FromStr for String012 {
    type Err = Error;
    fn from_str(s: &str) -> Result<String012> {
        let digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::BadString(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(String012(digits))
    }
}

impl TryFrom<String> for String012 {
    type Error = Error;
    fn try_from(s: String) -> Result<String012> {
        s.parse()
    }
}

impl From<String012> for String {
    fn from(s: String012) -> String {
        s.to_string()
    }
}

impl fmt::Display for String012 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for String012 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String012 {
        x.parse().unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(s("012").length(), 0);
        assert_eq!(s("210").length(), 3);
        assert_eq!(s("120210").length(), 8);
    }

    #[test]
    fn cover_deltas() {
        let c = s("10221").cover_to(&s("11220")).unwrap();
        assert_eq!(c.delta, DeltaForm([1, -1, 0]));
        let c = s("12021").cover_to(&s("12201")).unwrap();
        assert_eq!(c.delta, DeltaForm([1, 0, -1]));
        assert!(Content::new(2, 3, 5).unwrap().longest().covers().is_empty());
        assert!(s("012").cover_to(&s("210")).is_none());
    }

    #[test]
    fn covers_raise_length_by_one() {
        for c in Content::all_up_to(5) {
            for u in c.strings() {
                for e in u.covers() {
                    assert_eq!(e.to.length(), u.length() + 1, "{u} -> {}", e.to);
                    assert!(e.to.cocovers().contains(&e));
                }
            }
        }
    }

    #[test]
    fn c_forms() {
        let f = s("01021").c_form();
        assert_eq!(f.0[0].to_string(), "y3 + y1");
        assert_eq!(f.0[1].to_string(), "y5 + y2");
        assert_eq!(f.0[2].to_string(), "y4");
        assert_ne!(s("012").c_form(), s("021").c_form());
    }

    #[test]
    fn enumeration_counts() {
        let c = Content::new(2, 4, 5).unwrap();
        assert_eq!(c.strings().len(), 30);
        assert_eq!(c.identity(), s("00112"));
        assert_eq!(c.longest().length(), c.dim());
        let want = &(&YPoly::diff(2, 1) * &YPoly::diff(3, 1)) * &YPoly::diff(3, 2);
        assert_eq!(s("210").extreme_constant(), want);
        assert_eq!(s("012").extreme_constant(), YPoly::one());
    }
}
