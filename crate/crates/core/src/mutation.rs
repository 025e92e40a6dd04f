//! Gashed puzzles, flawed puzzles and their mutations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flaws::find_temporary;
use crate::gash::{backward_gashes, forward_gashes, replacement, DirectedGash};
use crate::label::Label;
use crate::lattice::{Cell, Edge, EdgeKind, Side};
use crate::pieces::{tables, Rhomb, TriSide};
use crate::puzzle::{GashMark, Overlay, Puzzle, PuzzleJson, Tile};
use crate::strings::String012;

/// A gash located on an edge, pointing toward `toward`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gash {
    pub edge: Edge,
    pub toward: Side,
}

/// A tiling by valid pieces whose labels may disagree on the gash edges.
/// Border gashes carry an artificial label on the outer side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GashedPuzzle {
    puzzle: Puzzle,
    outer: BTreeMap<Edge, Label>,
    gashes: Vec<Gash>,
}

fn cell_on(e: Edge, s: Side) -> Cell {
    match s {
        Side::Up => e.up_cell(),
        Side::Down => e.down_cell(),
    }
}

fn class_of(kind: EdgeKind) -> u8 {
    match kind {
        EdgeKind::Horizontal => 0,
        EdgeKind::Slash => 1,
        EdgeKind::Backslash => 2,
    }
}

/// Result of one full propagation run.
#[derive(Clone, Debug)]
pub struct PhiRun {
    pub result: GashedPuzzle,
    /// Edges changed by each gash, in order.
    pub paths: [Vec<Edge>; 2],
}

impl GashedPuzzle {
    pub fn new(puzzle: Puzzle, outer: BTreeMap<Edge, Label>, mut gashes: Vec<Gash>) -> GashedPuzzle {
        gashes.sort();
        let mut g = GashedPuzzle { puzzle, outer, gashes };
        g.trim_outer();
        g
    }

    fn trim_outer(&mut self) {
        let keep: BTreeSet<Edge> = self.gashes.iter().map(|g| g.edge).collect();
        self.outer.retain(|e, _| keep.contains(e));
    }

    pub fn puzzle(&self) -> &Puzzle {
        &self.puzzle
    }

    pub fn gashes(&self) -> &[Gash] {
        &self.gashes
    }

    pub fn outer(&self) -> &BTreeMap<Edge, Label> {
        &self.outer
    }

    /// Label of `e` seen from `side`, including artificial outer labels.
    pub fn label(&self, e: Edge, side: Side) -> Option<Label> {
        match self.puzzle.index().inside_side(e) {
            Some(inside) if inside != side => {
                self.outer.get(&e).copied().or_else(|| self.puzzle.side_label(e, inside))
            }
            _ => self.puzzle.side_label(e, side),
        }
    }

    pub fn directed(&self, i: usize) -> Result<DirectedGash> {
        let g = self.gashes.get(i).ok_or_else(|| Error::BadGash(format!("no gash {i}")))?;
        let orig = self.label(g.edge, g.toward).ok_or_else(|| Error::BadGash(format!("{} unlabeled", g.edge)))?;
        let new = self.label(g.edge, g.toward.other()).ok_or_else(|| Error::BadGash(format!("{} unlabeled", g.edge)))?;
        Ok(DirectedGash { dir: g.toward.direction(g.edge.kind), orig, new })
    }

    fn tile_toward(&self, g: Gash) -> Option<Tile> {
        self.puzzle.tile_at(cell_on(g.edge, g.toward))
    }

    /// Whether another gash sits on the piece gash `i` points to.
    pub fn blocked(&self, i: usize) -> bool {
        let Some(q) = self.tile_toward(self.gashes[i]) else { return false };
        let es: Vec<Edge> = q.sides().into_iter().map(|s| s.2).collect();
        self.gashes.iter().enumerate().any(|(j, h)| j != i && es.contains(&h.edge))
    }

    /// One propagation of gash `i`. `None` when no replacement exists or
    /// the gash points out of the region.
    pub fn propagate_step(&self, i: usize) -> Result<Option<(GashedPuzzle, Edge)>> {
        let g = *self.gashes.get(i).ok_or_else(|| Error::BadGash(format!("no gash {i}")))?;
        if self.blocked(i) {
            return Err(Error::BadGash(format!("another gash is on the piece behind {}", g.edge)));
        }
        let Some(q) = self.tile_toward(g) else { return Ok(None) };
        let new = self.directed(i)?.new;
        let (q2, e2, c2) = match q {
            Tile::Tri { cell, tri } => {
                let (n, _) = cell.sides().into_iter().find(|s| s.1 == g.edge).unwrap();
                let Some((t2, m)) = replacement(tri, tri.slot(n).unwrap(), new) else { return Ok(None) };
                (Tile::Tri { cell, tri: t2 }, cell.side(tri.normals()[m]).unwrap(), cell)
            }
            Tile::Rhomb { inner, rhomb } => {
                let sides = q.sides();
                let &(_, n, _, _) = sides.iter().find(|s| s.2 == g.edge).unwrap();
                let &(c2, _, e2, _) = sides.iter().find(|s| s.1 == n.opposite()).unwrap();
                let mut r2 = rhomb;
                if n.index() % 3 == rhomb.class as usize {
                    r2.a = new;
                } else {
                    r2.b = new;
                }
                if !tables().rhombus_valid(r2) {
                    return Ok(None);
                }
                (Tile::Rhomb { inner, rhomb: r2 }, e2, c2)
            }
        };
        let toward = Side::of(c2).other();
        let before = self.puzzle.side_label(e2, Side::of(c2));
        let puzzle = self.puzzle.with_tiles(&[q], &[q2])?;
        let mut outer = self.outer.clone();
        outer.remove(&g.edge);
        if self.puzzle.index().is_border(e2) {
            outer.insert(e2, before.expect("tile side labeled"));
        }
        let mut gashes = self.gashes.clone();
        gashes[i] = Gash { edge: e2, toward };
        Ok(Some((GashedPuzzle { puzzle, outer, gashes }, e2)))
    }

    /// Propagates gash `i` until it is stuck; the path lists the edges that
    /// changed, starting with the original position.
    pub fn propagate_full(&self, i: usize) -> Result<(GashedPuzzle, Vec<Edge>)> {
        let mut cur = self.clone();
        let mut path = Vec::new();
        while !cur.blocked(i) {
            let Some((next, e)) = cur.propagate_step(i)? else { break };
            if path.is_empty() {
                path.push(cur.gashes[i].edge);
            }
            if path.contains(&e) {
                return Err(Error::Theorem(format!("gash revisits {e}")));
            }
            path.push(e);
            cur = next;
        }
        Ok((cur, path))
    }

    /// Propagates both gashes as far as possible and reverses them.
    pub fn phi_run(&self) -> Result<PhiRun> {
        if self.gashes.len() != 2 {
            return Err(Error::BadGash(format!("{} gashes, expected 2", self.gashes.len())));
        }
        let mut cur = self.clone();
        let mut paths: [Vec<Edge>; 2] = [Vec::new(), Vec::new()];
        loop {
            let mut moved = false;
            for i in 0..2 {
                let (next, p) = cur.propagate_full(i)?;
                if !p.is_empty() {
                    moved = true;
                    let skip = usize::from(!paths[i].is_empty());
                    paths[i].extend_from_slice(&p[skip..]);
                    cur = next;
                }
            }
            if !moved {
                break;
            }
        }
        for g in &mut cur.gashes {
            g.toward = g.toward.other();
        }
        let result = GashedPuzzle::new(cur.puzzle, cur.outer, cur.gashes);
        Ok(PhiRun { result, paths })
    }

    pub fn phi(&self) -> Result<GashedPuzzle> {
        Ok(self.phi_run()?.result)
    }

    /// Index of the right gash.
    pub fn right_gash(&self) -> Result<usize> {
        match self.gashes.as_slice() {
            [a, b] => right_index(*a, *b),
            _ => Err(Error::BadGash("right gash needs two gashes".into())),
        }
    }

    pub fn overlay(&self) -> Overlay {
        let gashes = self
            .gashes
            .iter()
            .map(|g| GashMark {
                edge: g.edge,
                side: g.toward,
                inner: self.label(g.edge, g.toward).unwrap(),
                outer: self.label(g.edge, g.toward.other()).unwrap(),
            })
            .collect();
        Overlay { gashes, ..Overlay::default() }
    }
}

/// Which of two gashes is on the right of an observer standing between
/// them and facing their common direction: 0 for `a`, 1 for `b`.
pub fn right_index(a: Gash, b: Gash) -> Result<usize> {
    let mid = |g: &Gash| {
        let (x, y) = g.edge.midpoint2().cartesian();
        (x / 2.0, y / 2.0)
    };
    let dir = |g: &Gash| {
        let t = g.toward.direction(g.edge.kind).zeta_exponent() as f64 * std::f64::consts::PI / 6.0;
        (t.cos(), t.sin())
    };
    let (m0, m1) = (mid(&a), mid(&b));
    let (d0, d1) = (dir(&a), dir(&b));
    let right = (d0.1 + d1.1, -(d0.0 + d1.0));
    let s0 = (m0.0 - m1.0) * right.0 + (m0.1 - m1.1) * right.1;
    if s0.abs() < 1e-9 {
        return Err(Error::BadGash("gashes are not side by side".into()));
    }
    Ok(if s0 > 0.0 { 0 } else { 1 })
}

/// The flaw of a flawed puzzle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Flaw {
    /// Two border gashes; `outer` are the artificial labels beyond `edges`.
    GashPair { edges: [Edge; 2], outer: [Label; 2] },
    Temporary { cell: Cell },
    Scab { inner: Edge },
}

impl Flaw {
    pub fn kind(&self) -> &'static str {
        match self {
            Flaw::GashPair { .. } => "gash",
            Flaw::Temporary { .. } => "temporary",
            Flaw::Scab { .. } => "scab",
        }
    }

    /// Number of resolutions.
    pub fn degree(&self) -> usize {
        match self {
            Flaw::Temporary { .. } => 3,
            _ => 1,
        }
    }
}

/// A puzzle together with exactly one flaw.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlawedPuzzle {
    puzzle: Puzzle,
    flaw: Flaw,
}

/// JSON form: the puzzle schema plus a `flaw` field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlawedPuzzleJson {
    #[serde(flatten)]
    pub puzzle: PuzzleJson,
    pub flaw: Flaw,
}

/// Labels of a border segment read with the segment rotated to the top,
/// left to right.
fn top_reading(p: &Puzzle, k: usize, edges: &[Edge], outer: &[Label]) -> Result<(Vec<Edge>, String012, String012)> {
    let ix = p.index();
    let mut seg: Vec<Edge> = ix.segment(k).to_vec();
    seg.reverse();
    let mut inner = Vec::new();
    let mut out = Vec::new();
    for &e in &seg {
        let l = p.side_label(e, ix.inside_side(e).unwrap()).ok_or_else(|| Error::FlawMismatch(format!("{e} unlabeled")))?;
        inner.push(l);
        out.push(edges.iter().position(|&f| f == e).map_or(l, |i| outer[i]));
    }
    let bad = |_| Error::FlawMismatch(format!("segment {k} has composed labels"));
    Ok((seg, String012::from_labels(&inner).map_err(bad)?, String012::from_labels(&out).map_err(bad)?))
}

struct Candidate {
    q: Tile,
    gashes: Vec<(Edge, Side, Label)>,
}

/// The equivariant piece replacing the two triangles around `inner`.
fn scab_candidates(p: &Puzzle, inner: Edge) -> Result<Vec<Candidate>> {
    let (Some(up @ Tile::Tri { .. }), Some(down @ Tile::Tri { .. })) =
        (p.tile_at(inner.up_cell()), p.tile_at(inner.down_cell()))
    else {
        return Err(Error::FlawMismatch(format!("no two triangles meet at {inner}")));
    };
    let sides: Vec<_> = up.sides().into_iter().chain(down.sides()).filter(|s| s.2 != inner).collect();
    let class = class_of(inner.kind);
    let mut out = Vec::new();
    for p0 in inner.endpoints() {
        let mut q = Rhomb { class, a: Label::ZERO, b: Label::ZERO };
        for s in sides.iter().filter(|s| s.2.endpoints().contains(&p0)) {
            if s.1.index() % 3 == class as usize {
                q.a = s.3;
            } else {
                q.b = s.3;
            }
        }
        if !tables().rhombus_valid(q) {
            continue;
        }
        let gashes: Vec<(Edge, Side, Label)> = sides
            .iter()
            .filter(|s| q.label_at(s.1) != Some(s.3))
            .map(|s| (s.2, Side::of(s.0).other(), s.3))
            .collect();
        if gashes.len() == 2 {
            out.push(Candidate { q: Tile::Rhomb { inner, rhomb: q }, gashes });
        }
    }
    Ok(out)
}

impl FlawedPuzzle {
    /// Checks that `flaw` is a flaw of `puzzle`.
    pub fn new(puzzle: Puzzle, flaw: Flaw) -> Result<FlawedPuzzle> {
        let mismatch = |m: String| Err(Error::FlawMismatch(m));
        let ix = puzzle.index().clone();
        match flaw {
            Flaw::GashPair { edges, outer } => {
                let (Some((k0, _)), Some((k1, _))) = (ix.border_position(edges[0]), ix.border_position(edges[1])) else {
                    return mismatch("gash pair edges must lie on the border".into());
                };
                if k0 != k1 || edges[0] >= edges[1] {
                    return mismatch("gash pair edges must be distinct, sorted and on one segment".into());
                }
                if !puzzle.is_valid() {
                    return mismatch(format!("puzzle is invalid: {:?}", puzzle.validate()));
                }
                let (_, inner, out) = top_reading(&puzzle, k0, &edges, &outer)?;
                let Some(c) = out.cover_to(&inner) else {
                    return mismatch(format!("{out} -> {inner} is not a cover"));
                };
                let seg_top: Vec<Edge> = ix.segment(k0).iter().rev().copied().collect();
                let at: BTreeSet<Edge> = [seg_top[c.span.0], seg_top[c.span.1]].into();
                if at != BTreeSet::from(edges) {
                    return mismatch("gashes are not at the swapped positions".into());
                }
            }
            Flaw::Temporary { cell } => {
                let Some(Tile::Tri { tri, .. }) = puzzle.tile_at(cell) else {
                    return mismatch(format!("no triangle at {cell}"));
                };
                if find_temporary(tri).is_none() {
                    return mismatch(format!("{tri} at {cell} is not a temporary piece"));
                }
                let bad = puzzle.validate_except(&[cell]);
                if !bad.is_empty() {
                    return mismatch(format!("puzzle is invalid: {bad:?}"));
                }
            }
            Flaw::Scab { inner } => {
                if !puzzle.is_valid() {
                    return mismatch(format!("puzzle is invalid: {:?}", puzzle.validate()));
                }
                let (Some(Tile::Tri { tri: up, .. }), Some(Tile::Tri { tri: down, .. })) =
                    (puzzle.tile_at(inner.up_cell()), puzzle.tile_at(inner.down_cell()))
                else {
                    return mismatch(format!("no two triangles meet at {inner}"));
                };
                if down == up.rotate(3) {
                    return mismatch(format!("the rhombus at {inner} is symmetric"));
                }
                if scab_candidates(&puzzle, inner)?.len() != 1 {
                    return Err(Error::Tables(format!("scab at {inner} has no unique resolution")));
                }
            }
        }
        Ok(FlawedPuzzle { puzzle, flaw })
    }

    pub fn puzzle(&self) -> &Puzzle {
        &self.puzzle
    }

    pub fn flaw(&self) -> Flaw {
        self.flaw
    }

    /// Resolutions in canonical order: one for a gash pair or scab, three
    /// for a temporary piece (preserving left, right, horizontal side in
    /// the piece's frame).
    pub fn resolutions(&self) -> Result<Vec<GashedPuzzle>> {
        match self.flaw {
            Flaw::GashPair { edges, outer } => {
                let ix = self.puzzle.index();
                let gashes = edges.map(|e| Gash { edge: e, toward: ix.inside_side(e).unwrap() });
                let outer = edges.into_iter().zip(outer).collect();
                Ok(vec![GashedPuzzle::new(self.puzzle.clone(), outer, gashes.to_vec())])
            }
            Flaw::Temporary { cell } => {
                let Some(t @ Tile::Tri { tri, .. }) = self.puzzle.tile_at(cell) else { unreachable!() };
                let (k, entry) = find_temporary(tri).unwrap();
                let ix = self.puzzle.index();
                let mut out = Vec::with_capacity(3);
                for (idx, side) in TriSide::ALL.into_iter().enumerate() {
                    let r = entry.resolutions[idx].rotate(k);
                    let keep = side.normal().rotate(k);
                    let mut outer = BTreeMap::new();
                    let mut gashes = Vec::new();
                    for (n, e) in cell.sides() {
                        if n == keep {
                            continue;
                        }
                        gashes.push(Gash { edge: e, toward: Side::of(cell).other() });
                        if ix.is_border(e) {
                            outer.insert(e, tri.label_at(n).unwrap());
                        }
                    }
                    let p = self.puzzle.with_tiles(&[t], &[Tile::Tri { cell, tri: r }])?;
                    out.push(GashedPuzzle::new(p, outer, gashes));
                }
                Ok(out)
            }
            Flaw::Scab { inner } => {
                let c = scab_candidates(&self.puzzle, inner)?.pop().unwrap();
                let up = self.puzzle.tile_at(inner.up_cell()).unwrap();
                let down = self.puzzle.tile_at(inner.down_cell()).unwrap();
                let ix = self.puzzle.index();
                let mut outer = BTreeMap::new();
                let mut gashes = Vec::new();
                for (e, toward, l) in c.gashes {
                    gashes.push(Gash { edge: e, toward });
                    if ix.is_border(e) {
                        outer.insert(e, l);
                    }
                }
                let p = self.puzzle.with_tiles(&[up, down], &[c.q])?;
                Ok(vec![GashedPuzzle::new(p, outer, gashes)])
            }
        }
    }

    /// Boundary `(u, v, w)` read outside the border, so a gash pair shows
    /// its artificial labels.
    pub fn outer_boundary(&self) -> Result<(String012, String012, String012)> {
        let over = match self.flaw {
            Flaw::GashPair { edges, outer } => edges.into_iter().zip(outer).collect(),
            _ => BTreeMap::new(),
        };
        self.puzzle.boundary_with(&over)
    }

    /// The flawed puzzle reached through resolution `choice`.
    pub fn mutate(&self, choice: usize) -> Result<FlawedPuzzle> {
        let rs = self.resolutions()?;
        let r = rs.get(choice).ok_or_else(|| Error::Domain(format!("choice {choice} out of {}", rs.len())))?;
        Ok(recognize(&r.phi()?)?.0)
    }

    pub fn rotate(&self, sixths: i32) -> FlawedPuzzle {
        let (_, f) = self.puzzle.region().rotated(sixths);
        let puzzle = self.puzzle.rotate(sixths);
        let flaw = match self.flaw {
            Flaw::GashPair { edges, outer } => sorted_pair(edges.map(|e| e.transform(&f)), outer),
            Flaw::Temporary { cell } => Flaw::Temporary { cell: cell.transform(&f) },
            Flaw::Scab { inner } => Flaw::Scab { inner: inner.transform(&f) },
        };
        FlawedPuzzle { puzzle, flaw }
    }

    pub fn dual(&self) -> FlawedPuzzle {
        let (_, f) = self.puzzle.region().reflected();
        let puzzle = self.puzzle.dual();
        let flaw = match self.flaw {
            Flaw::GashPair { edges, outer } => {
                sorted_pair(edges.map(|e| e.transform(&f)), outer.map(Label::dual))
            }
            Flaw::Temporary { cell } => Flaw::Temporary { cell: cell.transform(&f) },
            Flaw::Scab { inner } => Flaw::Scab { inner: inner.transform(&f) },
        };
        FlawedPuzzle { puzzle, flaw }
    }

    /// Some resolution has its right gash in the forward set.
    pub fn is_forward(&self) -> Result<bool> {
        Ok(!self.forward_resolutions()?.is_empty())
    }

    /// Some resolution has its right gash in the backward set.
    pub fn is_backward(&self) -> Result<bool> {
        for r in self.resolutions()? {
            if backward_gashes().contains(&r.directed(r.right_gash()?)?) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Indices of resolutions whose right gash is in the forward set.
    pub fn forward_resolutions(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, r) in self.resolutions()?.iter().enumerate() {
            if forward_gashes().contains(&r.directed(r.right_gash()?)?) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// One step of the forward bijection.
    pub fn psi(&self) -> Result<FlawedPuzzle> {
        match self.forward_resolutions()?.as_slice() {
            [] => Err(Error::Domain("puzzle is not in the forward set".into())),
            [i] => self.mutate(*i),
            is => Err(Error::Theorem(format!("{} forward resolutions", is.len()))),
        }
    }

    /// Applies [`FlawedPuzzle::psi`] until the result leaves the forward
    /// set.
    pub fn psi_infinity(&self) -> Result<FlawedPuzzle> {
        let mut cur = self.psi()?;
        let mut seen = BTreeSet::new();
        while cur.is_forward()? {
            if !seen.insert(cur.clone()) {
                return Err(Error::Theorem("psi cycles".into()));
            }
            cur = cur.psi()?;
        }
        Ok(cur)
    }

    pub fn to_json(&self) -> FlawedPuzzleJson {
        FlawedPuzzleJson { puzzle: self.puzzle.to_json(), flaw: self.flaw }
    }

    pub fn from_json(j: &FlawedPuzzleJson) -> Result<FlawedPuzzle> {
        FlawedPuzzle::new(Puzzle::from_json(&j.puzzle)?, j.flaw)
    }

    pub fn overlay(&self) -> Overlay {
        match self.flaw {
            Flaw::GashPair { edges, outer } => Overlay {
                gashes: edges
                    .iter()
                    .zip(outer)
                    .map(|(&e, o)| {
                        let side = self.puzzle.index().inside_side(e).unwrap();
                        GashMark { edge: e, side, inner: self.puzzle.side_label(e, side).unwrap(), outer: o }
                    })
                    .collect(),
                ..Overlay::default()
            },
            Flaw::Temporary { cell } => Overlay { temporary: Some(cell), ..Overlay::default() },
            Flaw::Scab { inner } => Overlay { scab: vec![inner.up_cell(), inner.down_cell()], ..Overlay::default() },
        }
    }
}

fn sorted_pair(mut edges: [Edge; 2], mut outer: [Label; 2]) -> Flaw {
    if edges[0] > edges[1] {
        edges.swap(0, 1);
        outer.swap(0, 1);
    }
    Flaw::GashPair { edges, outer }
}

/// The unique flawed puzzle having `g` as a resolution, and the index of
/// that resolution.
pub fn recognize(g: &GashedPuzzle) -> Result<(FlawedPuzzle, usize)> {
    let mut found: Vec<(FlawedPuzzle, usize)> = Vec::new();
    let ix = g.puzzle.index().clone();
    let [g0, g1] = match g.gashes.as_slice() {
        [a, b] => [*a, *b],
        _ => return Err(Error::Theorem(format!("{} gashes", g.gashes.len()))),
    };
    // gash pair: both on one border segment, pointing inside
    if ix.inside_side(g0.edge) == Some(g0.toward) && ix.inside_side(g1.edge) == Some(g1.toward) {
        let outer = [g0, g1].map(|h| g.label(h.edge, h.toward.other()).unwrap());
        if let Ok(p) = FlawedPuzzle::new(g.puzzle.clone(), sorted_pair([g0.edge, g1.edge], outer)) {
            found.push((p, 0));
        }
    }
    let c0 = cell_on(g0.edge, g0.toward.other());
    let c1 = cell_on(g1.edge, g1.toward.other());
    let tile = g.puzzle.tile_at(c0);
    // both gashes leave the same piece
    if let (Some(t), Some(t1)) = (tile, g.puzzle.tile_at(c1)) {
        if t == t1 {
            match t {
                Tile::Tri { cell, tri } => {
                    let mut temp = tri;
                    for h in [g0, g1] {
                        let (n, _) = cell.sides().into_iter().find(|s| s.1 == h.edge).unwrap();
                        temp.labels[tri.slot(n).unwrap()] = g.label(h.edge, h.toward).unwrap();
                    }
                    let q = g.puzzle.with_tiles(&[t], &[Tile::Tri { cell, tri: temp }])?;
                    if let Ok(p) = FlawedPuzzle::new(q, Flaw::Temporary { cell }) {
                        if let Some(i) = p.resolutions()?.iter().position(|r| r == g) {
                            found.push((p, i));
                        }
                    }
                }
                Tile::Rhomb { inner, .. } => {
                    let sides = t.sides();
                    let label = |cell: Cell, e: Edge| -> Label {
                        match [g0, g1].iter().find(|h| h.edge == e) {
                            Some(h) => g.label(h.edge, h.toward).unwrap(),
                            None => sides.iter().find(|s| s.0 == cell && s.2 == e).unwrap().3,
                        }
                    };
                    let (cu, cd) = (inner.up_cell(), inner.down_cell());
                    for z in Label::ALL {
                        let mut tris = Vec::new();
                        for c in [cu, cd] {
                            let mut known = [None; 3];
                            for (slot, (_, e)) in c.sides().into_iter().enumerate() {
                                known[slot] = Some(if e == inner { z } else { label(c, e) });
                            }
                            let tri = crate::pieces::Tri { up: c.up, labels: known.map(Option::unwrap) };
                            tris.push(Tile::Tri { cell: c, tri });
                        }
                        if !tris.iter().all(|t| t.is_valid()) {
                            continue;
                        }
                        let q = g.puzzle.with_tiles(&[t], &tris)?;
                        if let Ok(p) = FlawedPuzzle::new(q, Flaw::Scab { inner }) {
                            if p.resolutions()?.first() == Some(g) {
                                found.push((p, 0));
                            }
                        }
                    }
                }
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(Error::Theorem("stuck gashes form no flaw".into())),
        k => Err(Error::Theorem(format!("stuck gashes form {k} flaws"))),
    }
}

/// Parses `gash:SEG:I,J` (positions counterclockwise along border
/// segment `SEG`, outer labels swapped), `temp:X,Y,U|D` or
/// `scab:X,Y,H|S|B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlawSpec {
    GashPair { segment: usize, positions: (usize, usize) },
    Temporary { cell: Cell },
    Scab { inner: Edge },
}

impl FromStr for FlawSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<FlawSpec> {
        let bad = || Error::Parse(format!("bad flaw spec {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums = |t: &str| -> Result<Vec<i32>> { t.split(',').map(|x| x.trim().parse::<i32>().map_err(|_| bad())).collect() };
        match kind {
            "gash" => {
                let (seg, pos) = rest.split_once(':').ok_or_else(bad)?;
                let seg: usize = seg.parse().map_err(|_| bad())?;
                match nums(pos)?.as_slice() {
                    &[i, j] if i >= 0 && j >= 0 && seg < 6 => Ok(FlawSpec::GashPair { segment: seg, positions: (i as usize, j as usize) }),
                    _ => Err(bad()),
                }
            }
            "temp" | "scab" => {
                let parts: Vec<&str> = rest.split(',').collect();
                let [x, y, t] = parts.as_slice() else { return Err(bad()) };
                let (x, y): (i32, i32) = (x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?);
                match (kind, t.trim()) {
                    ("temp", "U") => Ok(FlawSpec::Temporary { cell: Cell::up(x, y) }),
                    ("temp", "D") => Ok(FlawSpec::Temporary { cell: Cell::down(x, y) }),
                    ("scab", "H") => Ok(FlawSpec::Scab { inner: Edge::new(x, y, EdgeKind::Horizontal) }),
                    ("scab", "S") => Ok(FlawSpec::Scab { inner: Edge::new(x, y, EdgeKind::Slash) }),
                    ("scab", "B") => Ok(FlawSpec::Scab { inner: Edge::new(x, y, EdgeKind::Backslash) }),
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }
}

impl FlawSpec {
    /// Attaches the flaw to a puzzle.
    pub fn apply(&self, p: &Puzzle) -> Result<FlawedPuzzle> {
        let flaw = match *self {
            FlawSpec::GashPair { segment, positions: (i, j) } => {
                let seg = p.index().segment(segment);
                let (Some(&a), Some(&b)) = (seg.get(i), seg.get(j)) else {
                    return Err(Error::FlawMismatch(format!("segment {segment} has {} edges", seg.len())));
                };
                let lab = |e: Edge| p.side_label(e, p.index().inside_side(e).unwrap());
                let (Some(la), Some(lb)) = (lab(a), lab(b)) else {
                    return Err(Error::FlawMismatch("unlabeled border edge".into()));
                };
                sorted_pair([a, b], [lb, la])
            }
            FlawSpec::Temporary { cell } => Flaw::Temporary { cell },
            FlawSpec::Scab { inner } => Flaw::Scab { inner },
        };
        FlawedPuzzle::new(p.clone(), flaw)
    }
}

/// All flaws of a valid puzzle: gash pairs on every border segment and
/// every scab.
pub fn flaws_of(p: &Puzzle) -> Vec<FlawedPuzzle> {
    let mut out = Vec::new();
    let ix = p.index();
    for k in 0..6 {
        let seg = ix.segment(k);
        if seg.is_empty() {
            continue;
        }
        let Ok((top, inner, _)) = top_reading(p, k, &[], &[]) else { continue };
        for c in inner.cocovers() {
            let (i, j) = c.span;
            let outer = [c.from.labels()[i], c.from.labels()[j]];
            if let Ok(f) = FlawedPuzzle::new(p.clone(), sorted_pair([top[i], top[j]], outer)) {
                out.push(f);
            }
        }
    }
    for &e in ix.edges() {
        if ix.is_border(e) {
            continue;
        }
        if let (Some(Tile::Tri { tri: up, .. }), Some(Tile::Tri { tri: down, .. })) =
            (p.tile_at(e.up_cell()), p.tile_at(e.down_cell()))
        {
            if down != up.rotate(3) {
                if let Ok(f) = FlawedPuzzle::new(p.clone(), Flaw::Scab { inner: e }) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// A connected component of the mutation graph.
#[derive(Clone, Debug)]
pub struct Component {
    pub nodes: Vec<FlawedPuzzle>,
    /// `(from, choice, to)` for every resolution of every node.
    pub edges: Vec<(usize, usize, usize)>,
}

/// Breadth-first closure under mutation.
pub fn mutation_component(seed: &FlawedPuzzle) -> Result<Component> {
    let mut ids: BTreeMap<FlawedPuzzle, usize> = BTreeMap::new();
    let mut nodes = vec![seed.clone()];
    ids.insert(seed.clone(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let p = nodes[i].clone();
        for c in 0..p.flaw.degree() {
            let q = p.mutate(c)?;
            let j = match ids.get(&q) {
                Some(&j) => j,
                None => {
                    let j = nodes.len();
                    ids.insert(q.clone(), j);
                    nodes.push(q);
                    queue.push_back(j);
                    j
                }
            };
            edges.push((i, c, j));
        }
    }
    Ok(Component { nodes, edges })
}

#[derive(Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub puzzle: FlawedPuzzleJson,
    /// Neighbor reached by each resolution choice.
    pub neighbors: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub nodes: Vec<NodeJson>,
}

impl Component {
    pub fn to_json(&self) -> GraphJson {
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, p)| NodeJson {
                id: i,
                puzzle: p.to_json(),
                neighbors: self.edges.iter().filter(|e| e.0 == i).map(|e| e.2).collect(),
            })
            .collect();
        GraphJson { nodes }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph mutations {\n");
        for (i, p) in self.nodes.iter().enumerate() {
            let shape = if p.flaw.degree() == 3 { "circle" } else { "box" };
            let _ = writeln!(s, "  n{i} [label=\"{i}:{}\", shape={shape}];", p.flaw.kind());
        }
        // each mutation is recorded from both ends; keep the lower one
        for &(i, _, j) in &self.edges {
            if i <= j {
                let _ = writeln!(s, "  n{i} -- n{j};");
            }
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Display for Flaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flaw::GashPair { edges, outer } => write!(f, "gash pair {}/{} {}/{}", edges[0], outer[0], edges[1], outer[1]),
            Flaw::Temporary { cell } => write!(f, "temporary at {cell}"),
            Flaw::Scab { inner } => write!(f, "scab at {inner}"),
        }
    }
}

/// Every placed temporary triangle, both parities.
pub fn temporary_placements() -> Vec<crate::pieces::Tri> {
    let set: BTreeSet<crate::pieces::Tri> = crate::flaws::temporary_pieces()
        .iter()
        .flat_map(|e| (0..6).map(move |k| e.piece.rotate(k)))
        .collect();
    set.into_iter().collect()
}

/// All flawed puzzles on the triangle of size `n` with the given border
/// constraints, equivariant pieces in any orientation.
pub fn flawed_puzzles(n: usize, boundary: &crate::enumerate::Boundary) -> Result<Vec<FlawedPuzzle>> {
    use crate::enumerate::{enumerate_with, Options};
    let mut out = Vec::new();
    for p in enumerate_with(n, boundary, &Options { any_rhombus: true, ..Options::default() })? {
        out.extend(flaws_of(&p));
    }
    let extra = temporary_placements();
    let opts = Options { extra: extra.clone(), max_extra: 1, any_rhombus: true };
    for p in enumerate_with(n, boundary, &opts)? {
        let temp = p.tiles().iter().find_map(|t| match t {
            Tile::Tri { cell, tri } if extra.contains(tri) => Some(*cell),
            _ => None,
        });
        if let Some(cell) = temp {
            out.push(FlawedPuzzle::new(p, Flaw::Temporary { cell })?);
        }
    }
    out.sort();
    Ok(out)
}

/// Right gash of each resolution of a placed temporary triangle.
pub fn temporary_right_gashes(tri: crate::pieces::Tri) -> Result<[DirectedGash; 3]> {
    let (k, entry) = find_temporary(tri).ok_or_else(|| Error::Domain(format!("{tri} is not temporary")))?;
    let cell = if tri.up { Cell::up(0, 0) } else { Cell::down(0, 0) };
    let mut out = Vec::with_capacity(3);
    for (idx, side) in TriSide::ALL.into_iter().enumerate() {
        let r = entry.resolutions[idx].rotate(k);
        let keep = side.normal().rotate(k);
        let gs: Vec<(Gash, DirectedGash)> = cell
            .sides()
            .into_iter()
            .filter(|(n, _)| *n != keep)
            .map(|(n, e)| {
                let g = Gash { edge: e, toward: Side::of(cell).other() };
                (g, DirectedGash { dir: n, orig: tri.label_at(n).unwrap(), new: r.label_at(n).unwrap() })
            })
            .collect();
        out.push(gs[right_index(gs[0].0, gs[1].0)?].1);
    }
    Ok([out[0], out[1], out[2]])
}

/// Right-side-up temporary triangles in both the forward and the
/// backward set, as `(bottom, left, right)`.
pub fn forward_backward_temporaries() -> Result<BTreeSet<(u8, u8, u8)>> {
    let mut out = BTreeSet::new();
    for t in temporary_placements().into_iter().filter(|t| t.up) {
        let rg = temporary_right_gashes(t)?;
        let fwd = rg.iter().filter(|g| forward_gashes().contains(g)).count();
        let bwd = rg.iter().filter(|g| backward_gashes().contains(g)).count();
        if fwd > 0 && bwd > 0 {
            let (b, l, r) = t.blr();
            out.insert((b.value(), l.value(), r.value()));
        }
    }
    Ok(out)
}

/// Checks one resolution: the two propagation paths are disjoint, the
/// result is the resolution of exactly one flawed puzzle, and running the
/// map again returns to `r`.
pub fn check_resolution(r: &GashedPuzzle) -> Result<()> {
    let run = r.phi_run()?;
    let [a, b] = &run.paths;
    if let Some(e) = a.iter().find(|e| b.contains(e)) {
        return Err(Error::Theorem(format!("both gashes cross {e}")));
    }
    recognize(&run.result)?;
    if run.result.phi()? != *r {
        return Err(Error::Theorem("the map is not an involution here".into()));
    }
    Ok(())
}

/// How the forward map behaves on a set of gash-pair and scab flawed
/// puzzles.
#[derive(Clone, Debug, Default)]
pub struct PsiReport {
    pub forward: usize,
    pub backward: usize,
    pub image: usize,
    pub problems: Vec<String>,
}

impl PsiReport {
    pub fn is_bijection(&self) -> bool {
        self.problems.is_empty() && self.forward == self.backward && self.image == self.forward
    }
}

/// Applies [`FlawedPuzzle::psi_infinity`] to every forward puzzle of
/// `universe` (temporaries are skipped) and compares the image with the
/// backward puzzles.
pub fn psi_bijection(universe: &[FlawedPuzzle]) -> Result<PsiReport> {
    let mut rep = PsiReport::default();
    let mut backward = BTreeSet::new();
    let mut image = BTreeSet::new();
    for p in universe.iter().filter(|p| p.flaw.degree() == 1) {
        let (f, b) = (p.is_forward()?, p.is_backward()?);
        if f && b {
            rep.problems.push(format!("{} is forward and backward", p.flaw));
        }
        if b {
            backward.insert(p.clone());
        }
        if f {
            rep.forward += 1;
            let q = p.psi_infinity()?;
            if q.flaw.degree() != 1 {
                rep.problems.push(format!("image of {} is a temporary", p.flaw));
            }
            if !image.insert(q) {
                rep.problems.push(format!("image of {} is hit twice", p.flaw));
            }
        }
    }
    if image != backward {
        rep.problems.push(format!("image has {} puzzles outside the backward set", image.difference(&backward).count()));
    }
    rep.backward = backward.len();
    rep.image = image.len();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Boundary;

    fn universe(n: usize) -> Vec<FlawedPuzzle> {
        flawed_puzzles(n, &Boundary::default()).unwrap()
    }

    #[test]
    fn resolutions_behave_for_small_triangles() {
        for n in 1..=3 {
            for p in universe(n) {
                for r in p.resolutions().unwrap() {
                    check_resolution(&r).unwrap_or_else(|e| panic!("{}: {e}", p.flaw));
                }
            }
        }
    }

    #[test]
    fn mutation_graph_is_undirected_with_expected_degrees() {
        let u = universe(3);
        let kinds: BTreeSet<(&str, usize)> = u.iter().map(|p| (p.flaw.kind(), p.flaw.degree())).collect();
        assert_eq!(kinds, BTreeSet::from([("gash", 1), ("scab", 1), ("temporary", 3)]));
        for p in &u {
            for c in 0..p.flaw.degree() {
                let q = p.mutate(c).unwrap();
                assert!((0..q.flaw.degree()).any(|d| q.mutate(d).unwrap() == *p), "{}", p.flaw);
            }
        }
    }

    #[test]
    fn mutation_commutes_with_rotation_and_duality() {
        for p in universe(3) {
            let after: BTreeSet<FlawedPuzzle> = (0..p.flaw.degree()).map(|c| p.mutate(c).unwrap()).collect();
            for (image, f) in [
                (p.rotate(2), Box::new(|q: &FlawedPuzzle| q.rotate(2)) as Box<dyn Fn(&FlawedPuzzle) -> FlawedPuzzle>),
                (p.dual(), Box::new(|q: &FlawedPuzzle| q.dual())),
            ] {
                let got: BTreeSet<FlawedPuzzle> = (0..image.flaw.degree()).map(|c| image.mutate(c).unwrap()).collect();
                let want: BTreeSet<FlawedPuzzle> = after.iter().map(&f).collect();
                assert_eq!(got, want, "{}", p.flaw);
            }
        }
    }

    #[test]
    fn flawed_puzzles_round_trip_through_json() {
        for p in universe(2) {
            let text = serde_json::to_string(&p.to_json()).unwrap();
            let back: FlawedPuzzleJson = serde_json::from_str(&text).unwrap();
            assert_eq!(FlawedPuzzle::from_json(&back).unwrap(), p);
        }
    }

    #[test]
    fn flaw_specs() {
        assert!("gash:0:1,2".parse::<FlawSpec>().is_ok());
        assert!("temp:0,0,U".parse::<FlawSpec>().is_ok());
        assert!("scab:1,1,H".parse::<FlawSpec>().is_ok());
        for bad in ["gash:7:1,2", "temp:0,0,X", "scab:1,H", "oops"] {
            assert!(bad.parse::<FlawSpec>().is_err(), "{bad}");
        }
        let s = |d: &str| d.parse::<String012>().unwrap();
        let w = s("012");
        let p = crate::enumerate::enumerate_puzzles(&w, &w, &w).unwrap().pop().unwrap();
        for f in flaws_of(&p) {
            let spec = match f.flaw {
                Flaw::Scab { inner } => {
                    let k = match inner.kind {
                        EdgeKind::Horizontal => "H",
                        EdgeKind::Slash => "S",
                        EdgeKind::Backslash => "B",
                    };
                    format!("scab:{},{},{k}", inner.x, inner.y)
                }
                _ => continue,
            };
            assert_eq!(spec.parse::<FlawSpec>().unwrap().apply(&p).unwrap(), f);
        }
        assert!(matches!("temp:0,0,U".parse::<FlawSpec>().unwrap().apply(&p), Err(Error::FlawMismatch(_))));
    }

    #[test]
    fn forward_map_is_a_bijection_on_small_contents() {
        let u = universe(3);
        for c in crate::strings::Content::all_up_to(3).into_iter().filter(|c| c.n == 3) {
            let set: Vec<FlawedPuzzle> = u
                .iter()
                .filter(|p| p.outer_boundary().is_ok_and(|(a, b, w)| [a, b, w].iter().all(|s| s.content() == c)))
                .cloned()
                .collect();
            let rep = psi_bijection(&set).unwrap();
            assert!(rep.is_bijection(), "{c}: {rep:?}");
        }
    }

    #[test]
    fn table_of_forward_backward_temporaries() {
        let want: BTreeSet<(u8, u8, u8)> =
            [(3, 3, 3), (5, 5, 5), (3, 7, 5), (6, 1, 7), (6, 4, 5), (5, 3, 7), (7, 6, 1), (5, 6, 4), (7, 5, 3)].into();
        assert_eq!(forward_backward_temporaries().unwrap(), want);
    }

    #[test]
    fn forward_temporaries_are_backward_with_one_resolution_each() {
        for t in temporary_placements() {
            let rg = temporary_right_gashes(t).unwrap();
            let fwd = rg.iter().filter(|g| forward_gashes().contains(g)).count();
            let bwd = rg.iter().filter(|g| backward_gashes().contains(g)).count();
            assert!(fwd <= 1 && bwd <= 1 && (fwd == 0) == (bwd == 0), "{t}: {fwd} {bwd}");
        }
    }
}
