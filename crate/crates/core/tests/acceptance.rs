//! Acceptance run: one line per criterion with its time budget.
//!
//! Run with `cargo test -p twostep --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use twostep::enumerate::{enumerate_puzzles, product_expansion, puzzles_by_bottom, Boundary};
use twostep::flaws::{scab_shapes, temporary_pieces, temporary_shapes, vertical_scabs};
use twostep::gash::{class_shape, classes, DirectedGash};
use twostep::mutation::{check_resolution, flawed_puzzles, forward_backward_temporaries, psi_bijection, FlawedPuzzle};
use twostep::oracle::oracle_constant;
use twostep::poly::YPoly;
use twostep::quantum::{quantum_product, Partition};
use twostep::verify::{self, Suite};
use twostep::{Content, String012};

type Outcome = Result<String, String>;

fn s(x: &str) -> String012 {
    x.parse().unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion1(constants: &mut Vec<YPoly>) -> Outcome {
    let (u, v) = (s("01201"), s("10102"));
    let e = product_expansion(&u, &v).map_err(|e| e.to_string())?;
    let d = YPoly::diff;
    let want = [
        ("12010", YPoly::one()),
        ("11200", YPoly::one()),
        ("12001", d(4, 1)),
        ("10210", &d(5, 3) + &d(4, 1)),
        ("10201", &d(4, 3) * &d(4, 1)),
    ];
    ensure(e.len() == 5, || format!("{} terms", e.len()))?;
    for (w, c) in &want {
        ensure(e.get(&s(w)) == Some(c), || format!("coefficient of {w} is {:?}", e.get(&s(w)).map(|p| p.to_string())))?;
    }
    let count: usize = puzzles_by_bottom(&u, &v).map_err(|e| e.to_string())?.values().map(Vec::len).sum();
    ensure(count == 6, || format!("{count} puzzles"))?;
    constants.extend(e.into_values());
    Ok("5 terms, 6 puzzles".into())
}

fn criterion2(constants: &mut Vec<YPoly>) -> Outcome {
    let p = |x: &str| x.parse::<Partition>().unwrap();
    let e = quantum_product(2, 5, &p("2,1"), &p("3,1")).map_err(|e| e.to_string())?;
    let d = YPoly::diff;
    let want = [
        ((0, "3,1"), &(&d(5, 3) * &d(5, 1)) * &d(2, 1)),
        ((0, "3,2"), d(5, 1).pow(2)),
        ((0, "3,3"), d(5, 1)),
        ((1, ""), &d(5, 3) * &d(2, 1)),
        ((1, "1"), d(5, 1)),
        ((1, "1,1"), YPoly::one()),
        ((1, "2"), YPoly::one()),
    ];
    ensure(e.len() == 7, || format!("{} terms", e.len()))?;
    for ((k, nu), c) in &want {
        ensure(e.get(&(*k, p(nu))) == Some(c), || format!("coefficient of q^{k} [{nu}]"))?;
    }
    constants.extend(e.into_values());
    Ok("7 terms".into())
}

fn criterion3(constants: &mut Vec<YPoly>) -> Outcome {
    let mut n = 0;
    for (a, b, m) in [(1, 1, 2), (1, 2, 3), (1, 1, 3), (1, 2, 4), (2, 3, 4)] {
        let ss = Content::new(a, b, m).unwrap().strings();
        for u in &ss {
            for v in &ss {
                for w in &ss {
                    let o = oracle_constant(u, v, w).map_err(|e| e.to_string())?;
                    let p = twostep::enumerate::structure_constant(u, v, w).map_err(|e| e.to_string())?;
                    ensure(o == p, || format!("{u},{v},{w}: oracle {o}, puzzles {p}"))?;
                    n += 1;
                    if !p.is_zero() {
                        constants.push(p);
                    }
                }
            }
        }
    }
    Ok(format!("{n} triples agree"))
}

fn criterion4(constants: &mut Vec<YPoly>) -> Outcome {
    let mut n = 0;
    for c in Content::all_up_to(5) {
        for w in c.strings() {
            let ps = enumerate_puzzles(&w, &w, &w).map_err(|e| e.to_string())?;
            ensure(ps.len() == 1, || format!("{w}: {} puzzles", ps.len()))?;
            let wt = ps[0].weight().map_err(|e| e.to_string())?;
            ensure(wt == w.extreme_constant(), || format!("{w}: weight {wt}"))?;
            constants.push(wt);
            n += 1;
        }
    }
    Ok(format!("{n} strings"))
}

fn criterion5() -> Outcome {
    let total: usize = classes().all().iter().map(|c| c.len()).sum();
    ensure(total == 336, || format!("{total} gashes"))?;
    let g = |x: &str| x.parse::<DirectedGash>().unwrap();
    let sizes: Vec<usize> = ["gash110", "gash120", "gash140", "gash121"].iter().map(|n| g(n).class().len()).collect();
    ensure(sizes == [6, 5, 4, 6], || format!("listed class sizes {sizes:?}"))?;
    let shapes: BTreeSet<_> = DirectedGash::all().into_iter().map(class_shape).collect();
    let mut all: Vec<usize> = shapes.iter().map(|s| s.len()).collect();
    all.sort();
    ensure(all == [1, 1, 1, 1, 1, 1, 1, 4, 5, 6, 6], || format!("shapes {all:?}"))?;
    Ok("336 gashes, shapes 6/5/4/6 and 7 singletons".into())
}

fn criterion6() -> Outcome {
    ensure(temporary_shapes().len() == 6, || format!("{} temporaries", temporary_shapes().len()))?;
    ensure(temporary_pieces().iter().all(|t| t.resolutions.len() == 3), || "resolutions".into())?;
    ensure(scab_shapes().len() == 17, || format!("{} scabs", scab_shapes().len()))?;
    for sc in vertical_scabs() {
        sc.resolution().map_err(|e| e.to_string())?;
    }
    let t = forward_backward_temporaries().map_err(|e| e.to_string())?;
    let want: BTreeSet<(u8, u8, u8)> =
        [(3, 3, 3), (5, 5, 5), (3, 7, 5), (6, 1, 7), (6, 4, 5), (5, 3, 7), (7, 6, 1), (5, 6, 4), (7, 5, 3)].into();
    ensure(t == want, || format!("forward-backward temporaries {t:?}"))?;
    Ok("6 temporaries x 3, 17 scabs, 9 forward-backward temporaries".into())
}

fn criterion7(universe: &[(usize, Vec<FlawedPuzzle>)]) -> Outcome {
    let mut count = 0;
    for (n, ps) in universe {
        for p in ps {
            for r in p.resolutions().map_err(|e| e.to_string())? {
                check_resolution(&r).map_err(|e| format!("n={n} {}: {e}", p.flaw()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} resolutions"))
}

fn criterion8() -> Outcome {
    let sum = verify::run(Suite::Aura, 4).map_err(|e| e.to_string())?;
    ensure(sum.pass, || format!("{:?}", sum.failures.first()))?;
    let detail: Vec<String> = sum.checks.iter().map(|c| format!("{}={}", c.check, c.instances)).collect();
    Ok(detail.join(" "))
}

fn criterion9(constants: &[YPoly]) -> Outcome {
    let bad: Vec<String> = constants.iter().filter(|c| !c.graham_positive()).map(|c| c.to_string()).collect();
    ensure(bad.is_empty(), || format!("not positive: {bad:?}"))?;
    Ok(format!("{} constants", constants.len()))
}

fn criterion10(universe: &[(usize, Vec<FlawedPuzzle>)]) -> Outcome {
    let c = Content::new(1, 2, 4).unwrap();
    let set: Vec<FlawedPuzzle> = universe
        .iter()
        .filter(|(n, _)| *n == 4)
        .flat_map(|(_, ps)| ps.iter())
        .filter(|p| p.outer_boundary().is_ok_and(|(a, b, w)| [a, b, w].iter().all(|s| s.content() == c)))
        .cloned()
        .collect();
    let rep = psi_bijection(&set).map_err(|e| e.to_string())?;
    ensure(rep.is_bijection(), || format!("{rep:?}"))?;
    Ok(format!("{} forward <-> {} backward", rep.forward, rep.backward))
}

fn report(k: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let r = f();
    let el = t.elapsed();
    let in_time = el <= limit;
    let pass = r.is_ok() && in_time;
    let detail = match &r {
        Ok(d) => d.clone(),
        Err(e) => e.clone(),
    };
    println!(
        "criterion {k:2}: {} ({:.3}s, limit {}s{}) {detail}",
        if pass { "PASS" } else { "FAIL" },
        el.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", over time" },
    );
    pass
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut constants = Vec::new();
    let mut ok = true;
    ok &= report(1, secs(1), || criterion1(&mut constants));
    ok &= report(2, secs(5), || criterion2(&mut constants));
    ok &= report(3, secs(120), || criterion3(&mut constants));
    ok &= report(4, secs(30), || criterion4(&mut constants));
    ok &= report(5, secs(1), criterion5);
    ok &= report(6, secs(1), criterion6);
    let mut universe = Vec::new();
    ok &= report(7, secs(300), || {
        universe = (1..=4)
            .map(|n| flawed_puzzles(n, &Boundary::default()).map(|ps| (n, ps)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        criterion7(&universe)
    });
    ok &= report(8, secs(300), criterion8);
    ok &= report(9, secs(1), || criterion9(&constants));
    ok &= report(10, secs(120), || criterion10(&universe));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
