//! Auras: δ-linear forms with cyclotomic coefficients attached to
//! semi-labeled edges, gashes and flawed puzzles.
//!
//! A semi-labeled edge is described by its label and the normal pointing
//! from the edge toward the side that carries the label.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::cyclotomic::Cyc12;
use crate::delta::{Aura, EquivAura};
use crate::error::{Error, Result};
use crate::flaws::Scab;
use crate::gash::{classes, DirectedGash};
use crate::label::Label;
use crate::lattice::{Edge, EdgeKind, Normal, Side};
use crate::mutation::{mutation_component, Flaw, FlawedPuzzle, GashedPuzzle};
use crate::pieces::{tables, PieceTables, Rhomb, Tri};
use crate::poly::{Poly, YPoly};
use crate::puzzle::{Puzzle, Tile};
use crate::strings::String012;

/// Sides of a placed piece as `(label, normal toward the inside)`.
fn inward_sides(t: Tile) -> Vec<(Label, Normal)> {
    t.sides().into_iter().map(|(_, n, _, l)| (l, n.opposite())).collect()
}

fn rotate_to(base: &Aura, toward: Normal) -> Aura {
    base.scale(&Cyc12::zeta_pow((toward.zeta_exponent() - 3) as i64))
}

/// Every valid piece in every orientation, as inward sides.
fn all_piece_sides(t: &PieceTables) -> Vec<Vec<(Label, Normal)>> {
    let mut out = Vec::new();
    for up in [true, false] {
        for tri in t.all_triangles(up) {
            out.push(tri.normals().into_iter().map(|n| (tri.label_at(n).unwrap(), n.opposite())).collect());
        }
    }
    for (a, b) in t.rhombus_pairs() {
        for class in 0..3 {
            let r = Rhomb { class, a, b };
            out.push(
                Normal::all()
                    .filter_map(|n| r.label_at(n).map(|l| (l, n.opposite())))
                    .collect(),
            );
        }
    }
    out
}

/// Auras of the eight labels on a horizontal edge, label above.
///
/// Simple labels give `d_a * z^3`; the others are solved from pieces in
/// which they are the only unknown, then every piece is checked.
pub fn derive_label_auras(t: &PieceTables) -> Result<[Aura; 8]> {
    let mut known: BTreeMap<Label, Aura> = BTreeMap::new();
    for a in [Label::ZERO, Label::ONE, Label::TWO] {
        known.insert(a, Aura::unit(a, 3));
    }
    let pieces = all_piece_sides(t);
    loop {
        let before = known.len();
        for sides in &pieces {
            let unknown: BTreeSet<Label> = sides.iter().map(|s| s.0).filter(|l| !known.contains_key(l)).collect();
            let [l] = unknown.into_iter().collect::<Vec<_>>()[..] else { continue };
            let mut rest = Aura::zero();
            let mut count = 0i64;
            let mut dir = None;
            for &(m, n) in sides {
                if m == l {
                    count += 1;
                    dir = Some(n);
                } else {
                    rest = &rest + &rotate_to(&known[&m], n);
                }
            }
            // several copies of the unknown label would need division
            if count != 1 {
                continue;
            }
            known.insert(l, rotate_back(&-rest, dir.unwrap()));
        }
        if known.len() == before {
            break;
        }
    }
    if known.len() != 8 {
        return Err(Error::Tables(format!("only {} label auras are determined", known.len())));
    }
    for sides in &pieces {
        let s = sides.iter().fold(Aura::zero(), |acc, &(l, n)| &acc + &rotate_to(&known[&l], n));
        if !s.is_zero() {
            return Err(Error::Tables(format!("aura sum {s} over piece {sides:?}")));
        }
    }
    Ok(std::array::from_fn(|i| known[&Label::ALL[i]].clone()))
}

/// Undoes [`rotate_to`]: the base aura whose copy toward `n` is `a`.
fn rotate_back(a: &Aura, n: Normal) -> Aura {
    a.scale(&Cyc12::zeta_pow((3 - n.zeta_exponent()) as i64))
}

/// Label auras for the installed tables, derived once.
///
/// # Panics
/// If the installed tables are inconsistent; [`derive_label_auras`]
/// reports the same condition as an error.
pub fn label_auras() -> &'static [Aura; 8] {
    static A: OnceLock<[Aura; 8]> = OnceLock::new();
    A.get_or_init(|| derive_label_auras(tables()).expect("piece tables determine the auras"))
}

/// Aura of a semi-labeled edge.
///
/// ```
/// use twostep::aura::edge_aura;
/// use twostep::label::Label;
/// use twostep::lattice::Normal;
/// let three = edge_aura(Label::new(3).unwrap(), Normal::N);
/// assert_eq!(three.to_string(), "z*d0 + (z^3 - z)*d1");
/// ```
pub fn edge_aura(label: Label, toward: Normal) -> Aura {
    rotate_to(&label_auras()[label.value() as usize], toward)
}

pub fn gash_aura(g: DirectedGash) -> Aura {
    &edge_aura(g.orig, g.dir) + &edge_aura(g.new, g.dir.opposite())
}

/// Sum of the side auras of a valid piece, labels moved inside.
pub fn tile_aura(t: Tile) -> Aura {
    inward_sides(t).into_iter().fold(Aura::zero(), |acc, (l, n)| &acc + &edge_aura(l, n))
}

/// Aura of the right gash.
pub fn resolution_aura(r: &GashedPuzzle) -> Result<Aura> {
    Ok(gash_aura(r.directed(r.right_gash()?)?))
}

/// Aura of a gash-pair or scab flawed puzzle; `None` for a temporary
/// piece.
pub fn flawed_aura(p: &FlawedPuzzle) -> Result<Option<Aura>> {
    match p.flaw() {
        Flaw::Temporary { .. } => Ok(None),
        _ => Ok(Some(resolution_aura(&p.resolutions()?[0])?)),
    }
}

/// Classes whose gashes do not share one aura (empty when the tables
/// are consistent).
pub fn class_aura_violations() -> Vec<DirectedGash> {
    let mut out = Vec::new();
    for c in classes().all() {
        let first = *c.iter().next().unwrap();
        let a = gash_aura(first);
        if c.iter().any(|&g| gash_aura(g) != a) {
            out.push(first);
        }
    }
    out
}

/// Sum of the auras of the three resolutions of a placed temporary piece.
pub fn temporary_aura_sum(t: Tri) -> Result<Aura> {
    let gs = crate::mutation::temporary_right_gashes(t)?;
    Ok(gs.into_iter().fold(Aura::zero(), |acc, g| &acc + &gash_aura(g)))
}

/// Sum of flawed auras over a set of flawed puzzles.
pub fn flawed_aura_sum(set: &[FlawedPuzzle]) -> Result<Aura> {
    let mut s = Aura::zero();
    for p in set {
        if let Some(a) = flawed_aura(p)? {
            s = &s + &a;
        }
    }
    Ok(s)
}

/// Outcome of checking aura sums over mutation components.
#[derive(Clone, Debug, Default)]
pub struct ComponentReport {
    pub components: usize,
    pub nodes: usize,
    /// Components whose aura sum is non-zero, with a member and the sum.
    pub failures: Vec<(FlawedPuzzle, Aura)>,
}

/// Splits `universe` into mutation components and sums the auras of each.
/// Components may leave the universe; they are followed in full.
pub fn check_components(universe: &[FlawedPuzzle]) -> Result<ComponentReport> {
    let mut seen: BTreeSet<FlawedPuzzle> = BTreeSet::new();
    let mut rep = ComponentReport::default();
    for p in universe {
        if seen.contains(p) {
            continue;
        }
        let c = mutation_component(p)?;
        rep.components += 1;
        rep.nodes += c.nodes.len();
        let s = flawed_aura_sum(&c.nodes)?;
        if !s.is_zero() {
            rep.failures.push((p.clone(), s));
        }
        seen.extend(c.nodes);
    }
    Ok(rep)
}

fn lift(p: &YPoly) -> Poly<Cyc12> {
    p.map_coeffs(|&c| Cyc12::int(c))
}

/// Weight of an edge of a triangular puzzle: `y` of its left projection
/// for NW-SE edges, of its right projection for SW-NE edges, of its
/// position for bottom edges, and zero for other horizontal edges.
pub fn edge_weight(p: &Puzzle, e: Edge) -> Result<YPoly> {
    Ok(match e.kind {
        EdgeKind::Backslash => YPoly::var(p.left_projection(e)?),
        EdgeKind::Slash => YPoly::var(p.right_projection(e)?),
        EdgeKind::Horizontal if e.y == 0 => YPoly::var(p.left_projection(e)?),
        EdgeKind::Horizontal => YPoly::zero(),
    })
}

/// Equivariant aura of a placed piece: weighted side auras, labels
/// inside.
pub fn equivariant_tile_aura(p: &Puzzle, t: Tile) -> Result<EquivAura> {
    let mut s = EquivAura::zero();
    for (_, n, e, l) in t.sides() {
        s = &s + &edge_aura(l, n.opposite()).times_poly(&edge_weight(p, e)?);
    }
    Ok(s)
}

/// The two triangles meeting at a horizontal inner edge, top first.
fn vertical_pair(p: &Puzzle, inner: Edge) -> Option<(Tile, Tile)> {
    if inner.kind != EdgeKind::Horizontal {
        return None;
    }
    match (p.tile_at(inner.up_cell()), p.tile_at(inner.down_cell())) {
        (Some(a @ Tile::Tri { .. }), Some(b @ Tile::Tri { .. })) => Some((a, b)),
        _ => None,
    }
}

/// Equivariant aura of the vertical rhombus formed by two triangles.
pub fn equivariant_pair_aura(p: &Puzzle, inner: Edge) -> Result<EquivAura> {
    let (a, b) = vertical_pair(p, inner).ok_or_else(|| Error::Domain(format!("no triangle pair at {inner}")))?;
    Ok(&equivariant_tile_aura(p, a)? + &equivariant_tile_aura(p, b)?)
}

/// Inner edges of the vertical scabs of a puzzle.
pub fn vertical_scabs(p: &Puzzle) -> Vec<Edge> {
    p.index()
        .edges()
        .iter()
        .copied()
        .filter(|&e| match vertical_pair(p, e) {
            Some((Tile::Tri { tri: top, .. }, Tile::Tri { tri: bottom, .. })) => Scab { top, bottom }.is_scab(),
            _ => false,
        })
        .collect()
}

/// `C_u z^11 + C_v z^7 + C_w z^3`.
pub fn boundary_form(u: &String012, v: &String012, w: &String012) -> EquivAura {
    let part = |s: &String012, k: i64| s.c_form().map(|c| lift(c).scale(&Cyc12::zeta_pow(k)));
    &(&part(u, 11) + &part(v, 7)) + &part(w, 3)
}

/// Both sides of the scab-sum identity for an equivariant puzzle:
/// `(sum over vertical scabs of A_T, C_u z^11 + C_v z^7 + C_w z^3)`.
pub fn scab_sum(p: &Puzzle) -> Result<(EquivAura, EquivAura)> {
    let (u, v, w) = p.boundary()?;
    let mut lhs = EquivAura::zero();
    for e in vertical_scabs(p) {
        lhs = &lhs + &equivariant_pair_aura(p, e)?;
    }
    Ok((lhs, boundary_form(&u, &v, &w)))
}

/// Both sides of the bottom-border balance
/// `sum_i A(w_i above) = gamma z^3` for a puzzle whose left and right
/// borders are 012-strings of one content.
pub fn boundary_balance(p: &Puzzle) -> Result<(Aura, Aura)> {
    let b = p.boundary_sides();
    let read = |v: &[Option<Label>], rev: bool| -> Result<String012> {
        let mut ls: Vec<Label> = v
            .iter()
            .map(|l| l.filter(|l| l.is_simple()).ok_or_else(|| Error::BadString("composed border label".into())))
            .collect::<Result<_>>()?;
        if rev {
            ls.reverse();
        }
        String012::from_labels(&ls)
    };
    let (u, v) = (read(&b[4], true)?, read(&b[2], true)?);
    let c = u.content();
    if v.content() != c {
        return Err(Error::ContentMismatch(format!("{u} and {v}")));
    }
    let lhs = p.index().segment(0).iter().fold(Aura::zero(), |acc, &e| {
        &acc + &edge_aura(p.side_label(e, Side::Up).unwrap(), Normal::N)
    });
    let gamma = crate::delta::DeltaForm([c.a as i64, (c.b - c.a) as i64, (c.n - c.b) as i64]);
    Ok((lhs, gamma.map(|&k| Cyc12::zeta_pow(3).scale(k))))
}

/// A flawed puzzle whose equivariant pieces and marked scab are vertical.
pub fn is_vertical(p: &FlawedPuzzle) -> bool {
    let rhombi_vertical = p.puzzle().tiles().iter().all(|t| match t {
        Tile::Rhomb { rhomb, .. } => rhomb.class == 0,
        Tile::Tri { .. } => true,
    });
    let flaw_ok = match p.flaw() {
        Flaw::Scab { inner } => inner.kind == EdgeKind::Horizontal,
        _ => true,
    };
    rhombi_vertical && flaw_ok
}

/// Both sides of the final identity for one boundary triple:
/// `(sum over scab flaws of A_T(P) weight(P), sum over gash pairs of
/// A(P) weight(P))`. `set` holds the vertical flawed puzzles with that
/// outer boundary.
pub fn two_sums(set: &[FlawedPuzzle]) -> Result<(EquivAura, EquivAura)> {
    let mut lhs = EquivAura::zero();
    let mut rhs = EquivAura::zero();
    for p in set {
        let w = lift(&p.puzzle().weight()?);
        match p.flaw() {
            Flaw::Scab { inner } => {
                let a = equivariant_pair_aura(p.puzzle(), inner)?;
                lhs = &lhs + &a.map(|c| c * &w);
            }
            Flaw::GashPair { .. } => {
                let a = flawed_aura(p)?.unwrap();
                rhs = &rhs + &a.map(|c| w.scale(c));
            }
            Flaw::Temporary { .. } => {}
        }
    }
    Ok((lhs, rhs))
}

/// Vertical gash-pair and scab flawed puzzles of size `n` grouped by
/// outer boundary.
pub fn flawed_by_boundary(n: usize) -> Result<BTreeMap<(String012, String012, String012), Vec<FlawedPuzzle>>> {
    use crate::enumerate::{enumerate_with, Boundary, Options};
    let mut out: BTreeMap<_, Vec<FlawedPuzzle>> = BTreeMap::new();
    for p in enumerate_with(n, &Boundary::default(), &Options::default())? {
        for f in crate::mutation::flaws_of(&p) {
            if !is_vertical(&f) {
                continue;
            }
            let Ok(key) = f.outer_boundary() else { continue };
            if key.0.content() == key.1.content() && key.1.content() == key.2.content() {
                out.entry(key).or_default().push(f);
            }
        }
    }
    Ok(out)
}

/// `A_T(P) = -weight(s) A(P)` for a vertical marked scab at position
/// `(i, j)`: returns both sides.
pub fn scab_weight_identity(p: &FlawedPuzzle) -> Result<(EquivAura, EquivAura)> {
    let Flaw::Scab { inner } = p.flaw() else {
        return Err(Error::Domain("not a scab".into()));
    };
    let lhs = equivariant_pair_aura(p.puzzle(), inner)?;
    let i = p.puzzle().left_projection(Edge::new(inner.x, inner.y, EdgeKind::Backslash))?;
    let j = p.puzzle().right_projection(Edge::new(inner.x, inner.y, EdgeKind::Slash))?;
    let a = flawed_aura(p)?.unwrap();
    Ok((lhs, (-a).times_poly(&YPoly::diff(j, i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_puzzles;

    fn l(v: u8) -> Label {
        Label::new(v).unwrap()
    }

    #[test]
    fn label_auras_from_the_tables() {
        let a = label_auras();
        assert_eq!(a[3], &Aura::unit(l(1), 5) + &Aura::unit(l(0), 1));
        assert_eq!(a[0], Aura::unit(l(0), 3));
        for (k, x) in a.iter().enumerate() {
            assert!(!x.is_zero(), "label {k}");
        }
    }

    #[test]
    fn worked_gash_auras() {
        let g = DirectedGash::new(Normal::N, l(0), l(4)).unwrap();
        let want = &(&Aura::unit(l(0), 3) + &Aura::unit(l(1), 7)) + &Aura::unit(l(2), 11);
        assert_eq!(gash_aura(g), want);
        let g = DirectedGash::new(Normal::N, l(0), l(1)).unwrap();
        assert_eq!(gash_aura(g), &Aura::unit(l(0), 3) - &Aura::unit(l(1), 3));
        for g in DirectedGash::all() {
            assert!((&gash_aura(g) + &gash_aura(g.opposite())).is_zero());
        }
    }

    #[test]
    fn every_valid_piece_sums_to_zero() {
        assert!(derive_label_auras(tables()).is_ok());
    }

    #[test]
    fn classes_share_auras() {
        assert!(class_aura_violations().is_empty());
    }

    #[test]
    fn temporary_resolutions_cancel() {
        for t in crate::mutation::temporary_placements() {
            assert!(temporary_aura_sum(t).unwrap().is_zero(), "{t}");
        }
    }

    #[test]
    fn three_unit_vectors_cancel() {
        let s = Cyc12::zeta_pow(11) + Cyc12::zeta_pow(7) + Cyc12::zeta_pow(3);
        assert_eq!(s, Cyc12::int(0));
    }

    #[test]
    fn worked_example_scab_sums() {
        let s = |d: &str| d.parse::<String012>().unwrap();
        let all = crate::enumerate::puzzles_by_bottom(&s("01201"), &s("10102")).unwrap();
        assert_eq!(all.values().map(Vec::len).sum::<usize>(), 6);
        for p in all.values().flatten() {
            let (lhs, rhs) = scab_sum(p).unwrap();
            assert_eq!(lhs, rhs);
            let (a, b) = boundary_balance(p).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn bottom_triangles_and_plain_rhombi_have_no_equivariant_aura() {
        let s = |d: &str| d.parse::<String012>().unwrap();
        let w = s("1201");
        for p in enumerate_puzzles(&w, &w, &w).unwrap() {
            for &t in p.tiles() {
                if let Tile::Tri { cell, .. } = t {
                    if cell.y == 0 && cell.up {
                        assert!(equivariant_tile_aura(&p, t).unwrap().is_zero());
                    }
                }
            }
            let scabs = vertical_scabs(&p);
            for &e in p.index().edges() {
                if vertical_pair(&p, e).is_some() && !scabs.contains(&e) {
                    assert!(equivariant_pair_aura(&p, e).unwrap().is_zero(), "{e}");
                }
            }
        }
    }
}
