//! Verification sweeps. Each suite produces one [`CheckReport`] per
//! instance; [`Summary`] groups them by check.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aura;
use crate::enumerate::{enumerate_puzzles, enumerate_with, product_expansion, Boundary, Options};
use crate::error::{Error, Result};
use crate::flaws::{scab_shapes, temporary_shapes, vertical_scabs};
use crate::gash::{class_shape, classes, DirectedGash};
use crate::mutation::{check_resolution, flawed_puzzles, psi_bijection, FlawedPuzzle};
use crate::oracle::oracle_expansion;
use crate::pieces::tables;
use crate::poly::YPoly;
use crate::strings::{Content, String012};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Pieces,
    Gashes,
    Mutation,
    Aura,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Pieces, Suite::Gashes, Suite::Mutation, Suite::Aura, Suite::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pieces => "pieces",
            Suite::Gashes => "gashes",
            Suite::Mutation => "mutation",
            Suite::Aura => "aura",
            Suite::Oracle => "oracle",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl CheckReport {
    pub fn equal<T: PartialEq + Display>(check: &str, instance: impl Display, lhs: T, rhs: T) -> CheckReport {
        CheckReport {
            check: check.into(),
            instance: instance.to_string(),
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    /// A check whose outcome is an error or nothing.
    pub fn ok(check: &str, instance: impl Display, r: Result<()>) -> CheckReport {
        let (pass, lhs) = match r {
            Ok(()) => (true, "ok".to_string()),
            Err(e) => (false, e.to_string()),
        };
        CheckReport { check: check.into(), instance: instance.to_string(), pass, lhs, rhs: "ok".into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckGroup {
    pub check: String,
    pub instances: usize,
    pub failed: usize,
}

/// Outcome of a suite: counts per check and the failing instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub max_n: usize,
    pub pass: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<CheckGroup>,
    pub failures: Vec<CheckReport>,
}

impl Summary {
    pub fn new(suite: Suite, max_n: usize, reports: Vec<CheckReport>) -> Summary {
        let mut groups: Vec<CheckGroup> = Vec::new();
        for r in &reports {
            match groups.iter_mut().find(|g| g.check == r.check) {
                Some(g) => {
                    g.instances += 1;
                    g.failed += usize::from(!r.pass);
                }
                None => groups.push(CheckGroup { check: r.check.clone(), instances: 1, failed: usize::from(!r.pass) }),
            }
        }
        let failures: Vec<CheckReport> = reports.iter().filter(|r| !r.pass).cloned().collect();
        Summary {
            suite: suite.name().into(),
            max_n,
            pass: failures.is_empty(),
            total: reports.len(),
            failed: failures.len(),
            checks: groups,
            failures,
        }
    }
}

pub fn run(suite: Suite, max_n: usize) -> Result<Summary> {
    let reports = match suite {
        Suite::Pieces => pieces(max_n)?,
        Suite::Gashes => gashes(),
        Suite::Mutation => mutation(max_n)?,
        Suite::Aura => aura_suite(max_n)?,
        Suite::Oracle => oracle(max_n)?,
    };
    Ok(Summary::new(suite, max_n, reports))
}

fn pieces(max_n: usize) -> Result<Vec<CheckReport>> {
    let t = tables();
    let mut out = vec![
        CheckReport::equal("table_consistency", "tables", t.validate().join("; "), String::new()),
        CheckReport::ok("label_auras", "tables", aura::derive_label_auras(t).map(|_| ())),
        CheckReport::equal("temporary_pieces", "tables", temporary_shapes().len(), 6),
        CheckReport::equal("scabs", "tables", scab_shapes().len(), 17),
    ];
    for s in vertical_scabs() {
        out.push(CheckReport::ok("scab_resolution", format!("{}/{}", s.top, s.bottom), s.resolution().map(|_| ())));
    }
    let words: Vec<String012> = Content::all_up_to(max_n).into_iter().flat_map(|c| c.strings()).collect();
    out.par_extend(words.par_iter().map(|w| {
        let r = enumerate_puzzles(w, w, w).and_then(|ps| match ps.as_slice() {
            [p] => {
                let wt = p.weight()?;
                if wt == w.extreme_constant() {
                    Ok(())
                } else {
                    Err(Error::Theorem(format!("weight {wt}")))
                }
            }
            ps => Err(Error::Theorem(format!("{} puzzles", ps.len()))),
        });
        CheckReport::ok("diagonal_puzzle", w, r)
    }));
    Ok(out)
}

fn gashes() -> Vec<CheckReport> {
    let all = DirectedGash::all();
    let mut out = vec![CheckReport::equal(
        "gash_count",
        "all",
        classes().all().iter().map(|c| c.len()).sum::<usize>(),
        336,
    )];
    let shapes: BTreeSet<_> = all.iter().map(|&g| class_shape(g)).collect();
    let mut sizes: Vec<usize> = shapes.iter().map(|s| s.len()).filter(|&k| k > 1).collect();
    sizes.sort();
    let singles = shapes.iter().filter(|s| s.len() == 1).count();
    out.push(CheckReport::equal("class_shapes", "all", format!("{sizes:?}"), format!("{:?}", [4, 5, 6, 6])));
    out.push(CheckReport::equal("singleton_shapes", "all", singles, 7));
    for g in all {
        let back = g.neighbors().into_iter().all(|h| h.neighbors().contains(&g));
        out.push(CheckReport::equal("symmetric_reachability", g, back, true));
        let rot: BTreeSet<_> = g.class().iter().map(|h| h.rotate(1)).collect();
        let opp: BTreeSet<_> = g.class().iter().map(|h| h.opposite()).collect();
        let dual: BTreeSet<_> = g.class().iter().map(|h| h.dual()).collect();
        let ok = rot == *g.rotate(1).class() && opp == *g.opposite().class() && dual == *g.dual().class();
        out.push(CheckReport::equal("class_symmetry", g, ok, true));
    }
    for s in vertical_scabs() {
        let ok = s.gashes().map(|[g, h]| g.is_opposite_class(h));
        out.push(CheckReport::ok("scab_gash_classes", format!("{}/{}", s.top, s.bottom), ok.and_then(check_true)));
    }
    out
}

fn check_true(b: bool) -> Result<()> {
    if b {
        Ok(())
    } else {
        Err(Error::Theorem("property fails".into()))
    }
}

fn flawed_upto(max_n: usize) -> Result<Vec<(usize, Vec<FlawedPuzzle>)>> {
    (1..=max_n).map(|n| Ok((n, flawed_puzzles(n, &Boundary::default())?))).collect()
}

fn mutation(max_n: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (n, universe) in flawed_upto(max_n)? {
        out.par_extend(universe.par_iter().map(|p| {
            let r = p.resolutions().and_then(|rs| rs.iter().try_for_each(check_resolution));
            CheckReport::ok("resolution", format!("n={n} {}", p.flaw()), r)
        }));
        out.par_extend(universe.par_iter().map(|p| {
            let r = (0..p.flaw().degree()).try_for_each(|c| {
                let q = p.mutate(c)?;
                let mut back = false;
                for d in 0..q.flaw().degree() {
                    back |= q.mutate(d)? == *p;
                }
                check_true(back)
            });
            CheckReport::ok("mutation_reversible", format!("n={n} {}", p.flaw()), r)
        }));
        for c in Content::all_up_to(n).into_iter().filter(|c| c.n == n) {
            let set: Vec<FlawedPuzzle> = universe
                .iter()
                .filter(|p| p.outer_boundary().is_ok_and(|(a, b, w)| [a, b, w].iter().all(|s| s.content() == c)))
                .cloned()
                .collect();
            let r = psi_bijection(&set).and_then(|rep| {
                if rep.is_bijection() {
                    Ok(())
                } else {
                    Err(Error::Theorem(format!("{rep:?}")))
                }
            });
            out.push(CheckReport::ok("forward_bijection", c, r));
        }
    }
    Ok(out)
}

fn aura_suite(max_n: usize) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    out.push(CheckReport::ok("label_auras", "tables", aura::derive_label_auras(tables()).map(|_| ())));
    let bad = aura::class_aura_violations();
    out.push(CheckReport::equal("class_auras", "all", bad.len(), 0));
    for t in crate::mutation::temporary_placements() {
        out.push(match aura::temporary_aura_sum(t) {
            Ok(s) => CheckReport::equal("temporary_aura_sum", t, s.to_string(), "0".into()),
            Err(e) => CheckReport::ok("temporary_aura_sum", t, Err(e)),
        });
    }
    for (n, universe) in flawed_upto(max_n)? {
        out.par_extend(universe.par_iter().map(|p| {
            let r = p.resolutions().and_then(|rs| {
                rs.iter().try_for_each(|r| {
                    let s = &aura::resolution_aura(r)? + &aura::resolution_aura(&r.phi()?)?;
                    check_true(s.is_zero())
                })
            });
            CheckReport::ok("reversed_aura", format!("n={n} {}", p.flaw()), r)
        }));
        let rep = aura::check_components(&universe)?;
        for (p, s) in &rep.failures {
            out.push(CheckReport::equal("component_aura_sum", format!("n={n} {}", p.flaw()), s.to_string(), "0".into()));
        }
        out.push(CheckReport::equal(
            "component_aura_sum",
            format!("n={n} ({} components)", rep.components),
            rep.failures.len(),
            0,
        ));

        let puzzles: Vec<_> = enumerate_with(n, &Boundary::default(), &Options::default())?
            .into_iter()
            .filter(|p| p.boundary().is_ok_and(|(u, v, w)| u.content() == v.content() && v.content() == w.content()))
            .collect();
        out.par_extend(puzzles.par_iter().flat_map_iter(|p| {
            let inst = match p.boundary() {
                Ok((u, v, w)) => format!("{u},{v},{w} {}", p.weight().unwrap_or_else(|_| YPoly::zero())),
                Err(_) => String::new(),
            };
            let a = match aura::scab_sum(p) {
                Ok((l, r)) => CheckReport::equal("scab_sum", &inst, l, r),
                Err(e) => CheckReport::ok("scab_sum", &inst, Err(e)),
            };
            let b = match aura::boundary_balance(p) {
                Ok((l, r)) => CheckReport::equal("boundary_balance", &inst, l, r),
                Err(e) => CheckReport::ok("boundary_balance", &inst, Err(e)),
            };
            [a, b]
        }));

        let groups = aura::flawed_by_boundary(n)?;
        let triples: Vec<(String012, String012, String012)> = Content::all_up_to(n)
            .into_iter()
            .filter(|c| c.n == n)
            .flat_map(|c| {
                let ss = c.strings();
                let mut t = Vec::new();
                for u in &ss {
                    for v in &ss {
                        for w in &ss {
                            t.push((u.clone(), v.clone(), w.clone()));
                        }
                    }
                }
                t
            })
            .collect();
        let empty = Vec::new();
        out.par_extend(triples.par_iter().flat_map_iter(|key| {
            let set = groups.get(key).unwrap_or(&empty);
            let inst = format!("{},{},{}", key.0, key.1, key.2);
            let mut v = vec![match aura::two_sums(set) {
                Ok((l, r)) => CheckReport::equal("two_sums", &inst, l, r),
                Err(e) => CheckReport::ok("two_sums", &inst, Err(e)),
            }];
            for p in set.iter().filter(|p| p.flaw().kind() == "scab") {
                v.push(match aura::scab_weight_identity(p) {
                    Ok((l, r)) => CheckReport::equal("scab_weight", format!("{inst} {}", p.flaw()), l, r),
                    Err(e) => CheckReport::ok("scab_weight", &inst, Err(e)),
                });
            }
            v
        }));
    }
    Ok(out)
}

fn oracle(max_n: usize) -> Result<Vec<CheckReport>> {
    let mut pairs = Vec::new();
    for c in Content::all_up_to(max_n) {
        let ss = c.strings();
        for u in &ss {
            for v in &ss {
                pairs.push((c, u.clone(), v.clone()));
            }
        }
    }
    let reports: Vec<Vec<CheckReport>> = pairs
        .par_iter()
        .map(|(c, u, v)| -> Result<Vec<CheckReport>> {
            let puz = product_expansion(u, v)?;
            let orc = oracle_expansion(u, v)?;
            let mut out = Vec::new();
            for w in c.strings() {
                let a = puz.get(&w).cloned().unwrap_or_else(YPoly::zero);
                let b = orc.get(&w).cloned().unwrap_or_else(YPoly::zero);
                let inst = format!("{c} {u},{v},{w}");
                if !a.is_zero() {
                    out.push(CheckReport::equal("graham_positive", &inst, a.graham_positive(), true));
                }
                out.push(CheckReport::equal("oracle_equals_puzzles", inst, b, a));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(reports.into_iter().flatten().collect())
}

/// Counts of checks by name, for quick inspection.
pub fn counts(s: &Summary) -> BTreeMap<String, (usize, usize)> {
    s.checks.iter().map(|g| (g.check.clone(), (g.instances, g.failed))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let sum = run(s, 3).unwrap();
            assert!(sum.pass, "{s:?}: {:?}", sum.failures.first());
            assert!(sum.total > 0);
        }
    }

    #[test]
    fn summary_json_round_trips() {
        let sum = run(Suite::Gashes, 0).unwrap();
        let text = serde_json::to_string(&sum).unwrap();
        assert_eq!(serde_json::from_str::<Summary>(&text).unwrap(), sum);
        assert_eq!(counts(&sum)["gash_count"], (1, 0));
    }
}
