//! Equivariant quantum products on Grassmannians through two-step
//! puzzles.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::enumerate::product_expansion;
use crate::error::{Error, Result};
use crate::poly::YPoly;
use crate::strings::String012;

/// A partition, largest part first, with trailing zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The 02-string of the boundary path inside the `m x (n-m)`
    /// rectangle: step `i` goes up for `0` and right for `2`.
    ///
    /// ```
    /// use twostep::quantum::Partition;
    /// let p: Partition = "4,3,1".parse().unwrap();
    /// assert_eq!(p.to_string012(3, 8).unwrap().to_string(), "20220202");
    /// ```
    pub fn to_string012(&self, m: usize, n: usize) -> Result<String012> {
        if self.0.len() > m || self.0.first().is_some_and(|&p| p > n - m) {
            return Err(Error::Domain(format!("{self} does not fit in a {m} x {} rectangle", n - m)));
        }
        // row k from the bottom has length parts[m-1-k]
        let mut digits = Vec::with_capacity(n);
        let mut x = 0;
        for k in 0..m {
            let len = self.0.get(m - 1 - k).copied().unwrap_or(0);
            digits.extend(std::iter::repeat_n(2, len - x));
            digits.push(0);
            x = len;
        }
        digits.extend(std::iter::repeat_n(2, n - m - x));
        String012::new(digits)
    }

    /// Inverse of [`Partition::to_string012`]; the string must have no 1s.
    pub fn from_string012(s: &String012) -> Result<Partition> {
        let mut twos = 0;
        let mut rows = Vec::new();
        for &d in s.digits() {
            match d {
                0 => rows.push(twos),
                2 => twos += 1,
                _ => return Err(Error::Domain(format!("{s} is not a 02-string"))),
            }
        }
        rows.reverse();
        Partition::new(rows)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", ps.join(","))
    }
}

fn positions(s: &String012, d: u8) -> Vec<usize> {
    s.digits().iter().enumerate().filter(|&(_, &x)| x == d).map(|(i, _)| i).collect()
}

/// Replaces the first `d` twos and the last `d` zeros by ones.
///
/// ```
/// use twostep::{quantum::jd_map, String012};
/// let l: String012 = "20220202".parse().unwrap();
/// assert_eq!(jd_map(&l, 2).unwrap().to_string(), "10121212");
/// ```
pub fn jd_map(s: &String012, d: usize) -> Result<String012> {
    let twos = positions(s, 2);
    let zeros = positions(s, 0);
    if twos.len() < d || zeros.len() < d {
        return Err(Error::Domain(format!("{s} has fewer than {d} twos or zeros")));
    }
    let mut v = s.digits().to_vec();
    for &i in twos[..d].iter().chain(&zeros[zeros.len() - d..]) {
        v[i] = 1;
    }
    String012::new(v)
}

/// Whether the Young diagram contains a `d x d` square, read off the
/// string: the first `d` twos come before the last `d` zeros.
pub fn contains_rect(s: &String012, d: usize) -> bool {
    if d == 0 {
        return true;
    }
    let twos = positions(s, 2);
    let zeros = positions(s, 0);
    twos.len() >= d && zeros.len() >= d && twos[d - 1] < zeros[zeros.len() - d]
}

/// Direct test on the diagram.
pub fn partition_contains_rect(p: &Partition, d: usize) -> bool {
    d == 0 || p.parts().get(d - 1).is_some_and(|&r| r >= d)
}

/// `N^{nu,d}_{lambda,mu}` for strings of `Gr(m, n)`.
pub fn gw_invariant(lambda: &String012, mu: &String012, nu: &String012, d: usize) -> Result<YPoly> {
    let nuv = nu.reversed();
    if !(contains_rect(lambda, d) && contains_rect(mu, d) && contains_rect(&nuv, d)) {
        return Ok(YPoly::zero());
    }
    let u = jd_map(lambda, d)?;
    let v = jd_map(mu, d)?;
    let w = jd_map(&nuv, d)?.reversed();
    crate::enumerate::structure_constant(&u, &v, &w)
}

/// `[X^lambda] * [X^mu] = sum N^{nu,d} q^d [X^nu]` on `Gr(m, n)`, keyed by
/// `(d, nu)`.
pub fn quantum_product(
    m: usize,
    n: usize,
    lambda: &Partition,
    mu: &Partition,
) -> Result<BTreeMap<(usize, Partition), YPoly>> {
    if m > n {
        return Err(Error::Domain(format!("Gr({m},{n}) is empty")));
    }
    let l = lambda.to_string012(m, n)?;
    let u = mu.to_string012(m, n)?;
    let content = l.content();
    let nus: Vec<String012> = content.strings().into_iter().filter(|s| !s.digits().contains(&1)).collect();
    let mut out = BTreeMap::new();
    for d in 0..=m.min(n - m) {
        if !contains_rect(&l, d) || !contains_rect(&u, d) {
            continue;
        }
        let exp = product_expansion(&jd_map(&l, d)?, &jd_map(&u, d)?)?;
        for nu in &nus {
            let nuv = nu.reversed();
            if !contains_rect(&nuv, d) {
                continue;
            }
            let w = jd_map(&nuv, d)?.reversed();
            if let Some(c) = exp.get(&w) {
                out.insert((d, Partition::from_string012(nu)?), c.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::Content;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn strings_and_partitions() {
        let s = p("4,3,1").to_string012(3, 8).unwrap();
        assert_eq!(s.to_string(), "20220202");
        assert_eq!(Partition::from_string012(&s).unwrap(), p("4,3,1"));
        assert_eq!(p("").to_string012(2, 5).unwrap().to_string(), "00222");
        assert!(p("4").to_string012(2, 5).is_err());
    }

    #[test]
    fn rect_criterion_matches_diagram() {
        for n in 1..=8 {
            for m in 0..=n {
                for s in Content::new(m, m, n).unwrap().strings() {
                    let part = Partition::from_string012(&s).unwrap();
                    for d in 0..=3 {
                        assert_eq!(contains_rect(&s, d), partition_contains_rect(&part, d), "{s} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn j_zero_is_identity() {
        let s: String012 = "20220202".parse().unwrap();
        assert_eq!(jd_map(&s, 0).unwrap(), s);
        assert!(jd_map(&s, 4).is_err());
    }

    #[test]
    fn grassmannian_example() {
        let e = quantum_product(2, 5, &p("2,1"), &p("3,1")).unwrap();
        let show: Vec<String> = e.iter().map(|((d, nu), c)| format!("{d} {nu}: {c}")).collect();
        assert_eq!(e.len(), 7, "{show:?}");
        let d = |j, i| YPoly::diff(j, i);
        assert_eq!(e[&(0, p("3,1"))], &(&d(5, 3) * &d(5, 1)) * &d(2, 1));
        assert_eq!(e[&(0, p("3,2"))], d(5, 1).pow(2));
        assert_eq!(e[&(0, p("3,3"))], d(5, 1));
        assert_eq!(e[&(1, p(""))], &d(5, 3) * &d(2, 1));
        assert_eq!(e[&(1, p("1"))], d(5, 1));
        assert_eq!(e[&(1, p("1,1"))], YPoly::one());
        assert_eq!(e[&(1, p("2"))], YPoly::one());
    }
}
