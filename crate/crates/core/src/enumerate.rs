//! Backtracking enumeration of equivariant puzzles with a triangular
//! boundary, and the structure constants they compute.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::lattice::{Cell, Edge, EdgeKind};
use crate::pieces::{tables, Tri};
use crate::poly::YPoly;
use crate::puzzle::{Puzzle, Tile};
use crate::region::{Region, RegionIndex};
use crate::strings::String012;

/// Border constraints for a triangular search. `None` leaves a border
/// free (any simple labels).
#[derive(Clone, Debug, Default)]
pub struct Boundary {
    pub u: Option<String012>,
    pub v: Option<String012>,
    pub w: Option<String012>,
}

impl Boundary {
    pub fn fixed(u: &String012, v: &String012, w: &String012) -> Boundary {
        Boundary { u: Some(u.clone()), v: Some(v.clone()), w: Some(w.clone()) }
    }
}

/// Search options.
#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Extra triangles (placed, either parity) that may be used in
    /// addition to the table.
    pub extra: Vec<Tri>,
    /// How many extra triangles one puzzle may contain.
    pub max_extra: usize,
    /// Allow equivariant pieces in all three orientations.
    pub any_rhombus: bool,
}

struct Search<'a> {
    ix: &'a RegionIndex,
    order: Vec<Cell>,
    labels: Vec<Option<Label>>,
    border: Vec<bool>,
    covered: Vec<bool>,
    tiles: Vec<Tile>,
    opts: &'a Options,
    extra_used: usize,
    out: Vec<Puzzle>,
}

impl Search<'_> {
    fn eix(&self, e: Edge) -> usize {
        self.ix.edge_index(e).expect("edge in region")
    }

    fn fits(&self, e: Edge, l: Label) -> bool {
        let i = self.eix(e);
        match self.labels[i] {
            Some(k) => k == l,
            None => !self.border[i] || l.is_simple(),
        }
    }

    /// Assigns labels to the unset edges among `es`, returning the ones set.
    fn assign(&mut self, es: &[(Edge, Label)]) -> Vec<usize> {
        let mut set = Vec::new();
        for &(e, l) in es {
            let i = self.eix(e);
            if self.labels[i].is_none() {
                self.labels[i] = Some(l);
                set.push(i);
            }
        }
        set
    }

    fn unassign(&mut self, set: Vec<usize>) {
        for i in set {
            self.labels[i] = None;
        }
    }

    fn run(&mut self, k: usize) {
        if k == self.order.len() {
            let p = Puzzle::new(self.ix.region, self.tiles.clone()).expect("tiles lie in the region");
            self.out.push(p);
            return;
        }
        let c = self.order[k];
        let ci = self.ix.cell_index(c).unwrap();
        if self.covered[ci] {
            self.run(k + 1);
            return;
        }
        let sides = c.sides();
        let known = sides.map(|(_, e)| self.labels[self.eix(e)]);
        let mut cands: Vec<(Tri, bool)> = tables().matching(c.up, known).map(|t| (t, false)).collect();
        if self.extra_used < self.opts.max_extra {
            for &t in &self.opts.extra {
                if t.up == c.up && known.iter().zip(t.labels).all(|(k, l)| k.is_none_or(|k| k == l)) {
                    cands.push((t, true));
                }
            }
        }
        for (t, extra) in cands {
            let es: Vec<(Edge, Label)> = sides.iter().zip(t.labels).map(|(&(_, e), l)| (e, l)).collect();
            if !es.iter().all(|&(e, l)| self.fits(e, l)) {
                continue;
            }
            let set = self.assign(&es);
            self.covered[ci] = true;
            self.tiles.push(Tile::tri(c, t));
            self.extra_used += extra as usize;
            self.run(k + 1);
            self.extra_used -= extra as usize;
            self.tiles.pop();
            self.covered[ci] = false;
            self.unassign(set);
        }
        let partners: Vec<Edge> = if c.up {
            let mut v = vec![Edge::new(c.x, c.y, EdgeKind::Horizontal)];
            if self.opts.any_rhombus {
                v.push(Edge::new(c.x, c.y, EdgeKind::Backslash));
            }
            v
        } else if self.opts.any_rhombus {
            vec![Edge::new(c.x + 1, c.y, EdgeKind::Slash)]
        } else {
            Vec::new()
        };
        for inner in partners {
            let other = if c.up { inner.down_cell() } else { inner.up_cell() };
            let Some(oi) = self.ix.cell_index(other) else { continue };
            if self.covered[oi] {
                continue;
            }
            let pairs: Vec<(Label, Label)> = tables().rhombus_pairs().collect();
            for (a, b) in pairs {
                let tile = Tile::rhomb(inner, a, b);
                let es: Vec<(Edge, Label)> = tile.sides().into_iter().map(|(_, _, e, l)| (e, l)).collect();
                if !es.iter().all(|&(e, l)| self.fits(e, l)) {
                    continue;
                }
                let set = self.assign(&es);
                self.covered[ci] = true;
                self.covered[oi] = true;
                self.tiles.push(tile);
                self.run(k + 1);
                self.tiles.pop();
                self.covered[ci] = false;
                self.covered[oi] = false;
                self.unassign(set);
            }
        }
    }
}

/// All equivariant puzzles on the triangle of size `n` satisfying the
/// border constraints, in search order.
pub fn enumerate_with(n: usize, boundary: &Boundary, opts: &Options) -> Result<Vec<Puzzle>> {
    for s in [&boundary.u, &boundary.v, &boundary.w].into_iter().flatten() {
        if s.len() != n {
            return Err(Error::BadString(format!("{s} does not have length {n}")));
        }
    }
    let region = Region::triangle(n);
    let ix = region.index();
    let mut labels = vec![None; ix.edges().len()];
    let mut border = vec![false; ix.edges().len()];
    // segment 0 is the bottom read left to right, 2 the right border from
    // the bottom corner up, 4 the left border from the apex down
    for (seg, s, rev) in [(0, &boundary.w, false), (2, &boundary.v, true), (4, &boundary.u, true)] {
        let es = ix.segment(seg);
        for (k, &e) in es.iter().enumerate() {
            let i = ix.edge_index(e).unwrap();
            border[i] = true;
            if let Some(s) = s {
                let pos = if rev { n - 1 - k } else { k };
                labels[i] = Some(s.labels()[pos]);
            }
        }
    }
    let mut order = Vec::new();
    for y in (0..n as i32).rev() {
        for x in 0..n as i32 - y {
            order.push(Cell::up(x, y));
            if x + y <= n as i32 - 2 {
                order.push(Cell::down(x, y));
            }
        }
    }
    let mut s = Search {
        ix: &ix,
        order,
        labels,
        border,
        covered: vec![false; ix.cells().len()],
        tiles: Vec::new(),
        opts,
        extra_used: 0,
        out: Vec::new(),
    };
    s.run(0);
    Ok(s.out)
}

fn check_content(u: &String012, v: &String012) -> Result<()> {
    if u.content() != v.content() {
        return Err(Error::ContentMismatch(format!("{u} is in {} but {v} is in {}", u.content(), v.content())));
    }
    Ok(())
}

/// Equivariant puzzles with boundary `(u, v, w)`.
pub fn enumerate_puzzles(u: &String012, v: &String012, w: &String012) -> Result<Vec<Puzzle>> {
    check_content(u, v)?;
    check_content(u, w)?;
    enumerate_with(u.len(), &Boundary::fixed(u, v, w), &Options::default())
}

/// `C^w_{u,v}` as the sum of the weights of the puzzles.
pub fn structure_constant(u: &String012, v: &String012, w: &String012) -> Result<YPoly> {
    let mut sum = YPoly::zero();
    for p in enumerate_puzzles(u, v, w)? {
        sum = &sum + &p.weight()?;
    }
    Ok(sum)
}

/// Puzzles with left and right borders `u`, `v` and any bottom, grouped
/// by the bottom string.
pub fn puzzles_by_bottom(u: &String012, v: &String012) -> Result<BTreeMap<String012, Vec<Puzzle>>> {
    check_content(u, v)?;
    let b = Boundary { u: Some(u.clone()), v: Some(v.clone()), w: None };
    let mut out: BTreeMap<String012, Vec<Puzzle>> = BTreeMap::new();
    for p in enumerate_with(u.len(), &b, &Options::default())? {
        let (_, _, w) = p.boundary()?;
        out.entry(w).or_default().push(p);
    }
    Ok(out)
}

/// `[X^u] * [X^v] = sum_w C^w_{u,v} [X^w]`, nonzero terms only.
pub fn product_expansion(u: &String012, v: &String012) -> Result<BTreeMap<String012, YPoly>> {
    let mut out = BTreeMap::new();
    for (w, ps) in puzzles_by_bottom(u, v)? {
        let mut sum = YPoly::zero();
        for p in &ps {
            sum = &sum + &p.weight()?;
        }
        if !sum.is_zero() {
            out.insert(w, sum);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puzzle::restriction_puzzle;
    use crate::strings::Content;

    fn s(x: &str) -> String012 {
        x.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let (u, v) = (s("01201"), s("10102"));
        let by = puzzles_by_bottom(&u, &v).unwrap();
        assert_eq!(by.values().map(Vec::len).sum::<usize>(), 6);
        let e = product_expansion(&u, &v).unwrap();
        let got: Vec<(String, String)> = e.iter().map(|(w, c)| (w.to_string(), c.to_string())).collect();
        let want = [
            ("10201", (&YPoly::diff(4, 3) * &YPoly::diff(4, 1)).to_string()),
            ("10210", "y5 + y4 - y3 - y1".to_string()),
            ("11200", "1".to_string()),
            ("12001", "y4 - y1".to_string()),
            ("12010", "1".to_string()),
        ];
        let want: Vec<(String, String)> = want.iter().map(|(a, b)| (a.to_string(), b.clone())).collect();
        assert_eq!(got, want);
        let ws: Vec<String> = by[&s("10210")].iter().map(|p| p.weight().unwrap().to_string()).collect();
        assert_eq!(ws.len(), 2);
    }

    #[test]
    fn diagonal_is_restriction_puzzle() {
        for c in Content::all_up_to(4) {
            for w in c.strings() {
                let ps = enumerate_puzzles(&w, &w, &w).unwrap();
                assert_eq!(ps, vec![restriction_puzzle(&w).unwrap()], "{w}");
            }
        }
    }

    #[test]
    fn outputs_validate_and_keep_content() {
        let c = Content::new(1, 2, 4).unwrap();
        for u in c.strings() {
            for v in c.strings() {
                for (w, ps) in puzzles_by_bottom(&u, &v).unwrap() {
                    assert_eq!(w.content(), c);
                    for p in ps {
                        assert!(p.is_valid(), "{:?}", p.validate());
                        assert!(p.tiles().iter().all(|t| !matches!(t, Tile::Rhomb { .. }) || t.is_equivariant()));
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_puzzles_have_simple_slanted_edges() {
        for w in Content::new(1, 3, 5).unwrap().strings() {
            let p = restriction_puzzle(&w).unwrap();
            for &e in p.index().edges() {
                if e.kind != EdgeKind::Horizontal {
                    assert!(p.label(e).unwrap().is_simple(), "{w} {e}");
                }
            }
        }
    }

    #[test]
    fn rejects_mixed_content() {
        assert!(enumerate_puzzles(&s("012"), &s("021"), &s("002")).is_err());
    }
}
