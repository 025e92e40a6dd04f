use std::sync::OnceLock;

use proptest::prelude::*;
use twostep::aura::gash_aura;
use twostep::enumerate::{enumerate_puzzles, structure_constant, Boundary};
use twostep::gash::DirectedGash;
use twostep::mutation::{flawed_puzzles, FlawedPuzzle};
use twostep::puzzle::{Puzzle, PuzzleJson};
use twostep::String012;

fn arb_string(max_n: usize) -> impl Strategy<Value = String012> {
    prop::collection::vec(0u8..3, 1..=max_n).prop_map(|v| String012::new(v).unwrap())
}

/// A triple of strings with one content.
fn arb_triple(max_n: usize) -> impl Strategy<Value = (String012, String012, String012)> {
    arb_string(max_n).prop_flat_map(|u| {
        let ss = u.content().strings();
        let k = ss.len();
        (Just(u), 0..k, 0..k).prop_map(move |(u, i, j)| (u, ss[i].clone(), ss[j].clone()))
    })
}

fn universe() -> &'static [FlawedPuzzle] {
    static U: OnceLock<Vec<FlawedPuzzle>> = OnceLock::new();
    U.get_or_init(|| flawed_puzzles(3, &Boundary::default()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagonal_puzzle_is_unique(w in arb_string(5)) {
        let ps = enumerate_puzzles(&w, &w, &w).unwrap();
        prop_assert_eq!(ps.len(), 1);
        prop_assert_eq!(ps[0].weight().unwrap(), w.extreme_constant());
    }

    #[test]
    fn constants_commute_and_are_homogeneous((u, v, w) in arb_triple(4)) {
        let c = structure_constant(&u, &v, &w).unwrap();
        prop_assert_eq!(&c, &structure_constant(&v, &u, &w).unwrap());
        if !c.is_zero() {
            prop_assert!(c.is_homogeneous());
            let deg = (u.length() + v.length()) as i64 - w.length() as i64;
            prop_assert_eq!(c.degree().map(i64::from), Some(deg));
            prop_assert!(c.graham_positive());
        }
    }

    #[test]
    fn puzzles_round_trip_through_json((u, v, w) in arb_triple(4)) {
        for p in enumerate_puzzles(&u, &v, &w).unwrap() {
            let text = serde_json::to_string(&p.to_json()).unwrap();
            let back: PuzzleJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(Puzzle::from_json(&back).unwrap(), p);
        }
    }

    #[test]
    fn gash_auras_are_class_functions(i in 0usize..336) {
        let g = DirectedGash::all()[i];
        let a = gash_aura(g);
        prop_assert!((&a + &gash_aura(g.opposite())).is_zero());
        for &h in g.class() {
            prop_assert_eq!(&gash_aura(h), &a);
        }
        prop_assert_eq!(gash_aura(g.rotate(1)), a.rotate(1));
    }

    #[test]
    fn mutations_can_be_undone(i in 0usize..1734) {
        let u = universe();
        let p = &u[i % u.len()];
        for c in 0..p.flaw().degree() {
            let q = p.mutate(c).unwrap();
            let back = (0..q.flaw().degree()).any(|d| q.mutate(d).unwrap() == *p);
            prop_assert!(back);
            if let (Ok(x), Ok(y)) = (p.outer_boundary(), q.outer_boundary()) {
                prop_assert_eq!(x, y);
            }
        }
    }
}
