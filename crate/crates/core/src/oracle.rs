//! Structure constants from the cover recursion, with no reference to
//! puzzles.
//!
//! `C^w_{u,v}` is determined by the diagonal values and the two real
//! recursions
//!
//! ```text
//! (C_u - C_w) C^w_{u,v} = sum_{w'->w} d(w'/w) C^{w'}_{u,v} - sum_{u->u'} d(u/u') C^w_{u',v}
//! (C_v - C_w) C^w_{u,v} = sum_{w'->w} d(w'/w) C^{w'}_{u,v} - sum_{v->v'} d(v/v') C^w_{u,v'}
//! ```
//!
//! solved by descending induction on the degree.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::cyclotomic::Cyc12;
use crate::delta::{DeltaForm, EquivAura, TowerElem};
use crate::error::{Error, Result};
use crate::poly::{Poly, YPoly};
use crate::strings::String012;

type Key = (String012, String012, String012);

fn memo() -> &'static Mutex<HashMap<Key, YPoly>> {
    static M: OnceLock<Mutex<HashMap<Key, YPoly>>> = OnceLock::new();
    M.get_or_init(Default::default)
}

/// Values for `d0, d1, d2` that separate the three letters.
const SPECIAL: [i64; 3] = [2, 1, 0];

fn special(f: &DeltaForm<YPoly>) -> YPoly {
    f.specialize(SPECIAL.map(YPoly::int))
}

fn special_int(d: &DeltaForm<i64>) -> i64 {
    d.specialize(SPECIAL)
}

/// `C^w_{u,v}` computed by the recursion.
///
/// ```
/// use twostep::{oracle::oracle_constant, String012};
/// let s = |x: &str| x.parse::<String012>().unwrap();
/// let c = oracle_constant(&s("01201"), &s("10102"), &s("12001")).unwrap();
/// assert_eq!(c.to_string(), "y4 - y1");
/// ```
pub fn oracle_constant(u: &String012, v: &String012, w: &String012) -> Result<YPoly> {
    if u.content() != v.content() || u.content() != w.content() {
        return Err(Error::ContentMismatch(format!("{u}, {v}, {w}")));
    }
    compute(u, v, w)
}

fn compute(u: &String012, v: &String012, w: &String012) -> Result<YPoly> {
    if u.length() + v.length() < w.length() {
        return Ok(YPoly::zero());
    }
    let key = (u.clone(), v.clone(), w.clone());
    if let Some(c) = memo().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(c.clone());
    }
    let c = if u == w && v == w {
        w.extreme_constant()
    } else {
        let mut rhs = YPoly::zero();
        for e in w.cocovers() {
            let c = compute(u, v, &e.from)?;
            rhs = &rhs + &c.scale(&special_int(&e.delta));
        }
        let (lhs, side) = if u != w {
            let l = special(&(&u.c_form() - &w.c_form()));
            let mut s = YPoly::zero();
            for e in u.covers() {
                let c = compute(&e.to, v, w)?;
                s = &s + &c.scale(&special_int(&e.delta));
            }
            (l, s)
        } else {
            let l = special(&(&v.c_form() - &w.c_form()));
            let mut s = YPoly::zero();
            for e in v.covers() {
                let c = compute(u, &e.to, w)?;
                s = &s + &c.scale(&special_int(&e.delta));
            }
            (l, s)
        };
        (&rhs - &side).exact_divide(&lhs)?
    };
    memo().lock().unwrap_or_else(|e| e.into_inner()).insert(key, c.clone());
    Ok(c)
}

/// All nonzero `C^w_{u,v}` from the recursion.
pub fn oracle_expansion(u: &String012, v: &String012) -> Result<std::collections::BTreeMap<String012, YPoly>> {
    let mut out = std::collections::BTreeMap::new();
    for w in u.content().strings() {
        let c = oracle_constant(u, v, &w)?;
        if !c.is_zero() {
            out.insert(w, c);
        }
    }
    Ok(out)
}

fn lift(f: &DeltaForm<YPoly>, zeta: i64) -> EquivAura {
    let z = Cyc12::zeta_pow(zeta);
    f.map(|p| p.map_coeffs(|&c| z.scale(c)))
}

fn lift_int(d: &DeltaForm<i64>, zeta: i64) -> EquivAura {
    let z = Cyc12::zeta_pow(zeta);
    d.map(|&c| Poly::constant(z.scale(c)))
}

/// Both sides of the complex recursion
///
/// ```text
/// (C_u z^11 + C_v z^7 + C_w z^3) C^w_{u,v}
///     = z^5 sum d(u/u') C^w_{u',v} + z sum d(v/v') C^w_{u,v'} + z^9 sum d(w'/w) C^{w'}_{u,v}
/// ```
///
/// for any family of constants `c`.
pub fn recursion_sides(
    u: &String012,
    v: &String012,
    w: &String012,
    mut c: impl FnMut(&String012, &String012, &String012) -> Result<YPoly>,
) -> Result<(TowerElem, TowerElem)> {
    let form = &(&lift(&u.c_form(), 11) + &lift(&v.c_form(), 7)) + &lift(&w.c_form(), 3);
    let lhs = TowerElem::from_delta(form).scale_y(&c(u, v, w)?);
    let mut rhs = TowerElem::zero();
    for e in u.covers() {
        rhs = &rhs + &TowerElem::from_delta(lift_int(&e.delta, 5)).scale_y(&c(&e.to, v, w)?);
    }
    for e in v.covers() {
        rhs = &rhs + &TowerElem::from_delta(lift_int(&e.delta, 1)).scale_y(&c(u, &e.to, w)?);
    }
    for e in w.cocovers() {
        rhs = &rhs + &TowerElem::from_delta(lift_int(&e.delta, 9)).scale_y(&c(u, v, &e.from)?);
    }
    Ok((lhs, rhs))
}

/// `D * [X^u] = (C_u - C_0)[X^u] + sum_{u->u'} d(u/u') [X^{u'}]`.
pub fn chevalley(u: &String012) -> Vec<(String012, DeltaForm<YPoly>)> {
    let c0 = u.content().identity().c_form();
    let mut out = vec![(u.clone(), &u.c_form() - &c0)];
    for e in u.covers() {
        out.push((e.to, e.delta.map(|&k| YPoly::int(k))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::Content;

    fn s(x: &str) -> String012 {
        x.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let e = oracle_expansion(&s("01201"), &s("10102")).unwrap();
        assert_eq!(e.len(), 5);
        assert_eq!(e[&s("10210")].to_string(), "y5 + y4 - y3 - y1");
        assert_eq!(e[&s("12010")], YPoly::one());
    }

    #[test]
    fn recursion_holds_in_the_tower() {
        for c in [Content::new(1, 2, 3).unwrap(), Content::new(1, 2, 4).unwrap()] {
            let ss = c.strings();
            for u in &ss {
                for v in &ss {
                    for w in &ss {
                        let (l, r) = recursion_sides(u, v, w, oracle_constant).unwrap();
                        assert_eq!(l, r, "{u} {v} {w}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_is_a_unit_and_products_commute() {
        let c = Content::new(1, 2, 4).unwrap();
        let id = c.identity();
        for u in c.strings() {
            let e = oracle_expansion(&id, &u).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e[&u], YPoly::one());
            for v in c.strings() {
                assert_eq!(oracle_expansion(&u, &v).unwrap(), oracle_expansion(&v, &u).unwrap());
            }
        }
    }

    #[test]
    fn chevalley_of_identity() {
        let id = s("0012");
        let ch = chevalley(&id);
        assert!(ch[0].1.is_zero());
        assert_eq!(ch.len(), 1 + id.covers().len());
    }
}
