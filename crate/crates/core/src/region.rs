//! Hexagonal regions of the triangular lattice and their cell/edge indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{side_step, Cell, Edge, Point, Side};

/// A convex hexagon traversed counterclockwise from the origin; side `k`
/// runs in direction `60k` degrees. Zero sides are allowed, so the
/// triangle of size `n` is `[n, 0, n, 0, n, 0]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 6]", into = "[usize; 6]")]
pub struct Region([usize; 6]);

impl Region {
    pub fn new(sides: [usize; 6]) -> Result<Region> {
        let end = (0..6).fold(Point::new(0, 0), |p, k| p.add(side_step(k).scale(sides[k] as i32)));
        if end != Point::new(0, 0) {
            return Err(Error::BadRegion(format!("sides {sides:?} do not close up")));
        }
        if sides.iter().all(|&s| s == 0) {
            return Err(Error::BadRegion("empty region".into()));
        }
        Ok(Region(sides))
    }

    pub fn triangle(n: usize) -> Region {
        Region([n, 0, n, 0, n, 0])
    }

    pub fn sides(self) -> [usize; 6] {
        self.0
    }

    /// `Some(n)` for a right-side-up triangle of size `n`.
    pub fn triangle_size(self) -> Option<usize> {
        match self.0 {
            [n, 0, m, 0, k, 0] if n == m && m == k => Some(n),
            _ => None,
        }
    }

    /// Vertex `k` is where side `k` starts.
    pub fn vertices(self) -> [Point; 6] {
        let mut out = [Point::new(0, 0); 6];
        for k in 1..6 {
            out[k] = out[k - 1].add(side_step(k - 1).scale(self.0[k - 1] as i32));
        }
        out
    }

    pub fn contains(self, c: Cell) -> bool {
        let p = c.centroid3();
        let vs = self.vertices();
        (0..6).filter(|&k| self.0[k] > 0).all(|k| {
            let d = side_step(k);
            let r = p.sub(vs[k].scale(3));
            d.x * r.y - d.y * r.x > 0
        })
    }

    /// Image under a counterclockwise rotation, translated so that it
    /// starts at the origin again. Returns the region and the map on points.
    pub fn rotated(self, sixths: i32) -> (Region, impl Fn(Point) -> Point) {
        let k = sixths.rem_euclid(6) as usize;
        let mut sides = [0; 6];
        for j in 0..6 {
            sides[(j + k) % 6] = self.0[j];
        }
        let shift = self.vertices()[(6 - k) % 6].rotate(k as i32);
        (Region(sides), move |p: Point| p.rotate(k as i32).sub(shift))
    }

    /// Image under reflection in a vertical line, translated to start at
    /// the origin.
    pub fn reflected(self) -> (Region, impl Fn(Point) -> Point) {
        let mut sides = [0; 6];
        for j in 0..6 {
            sides[(6 - j) % 6] = self.0[j];
        }
        let shift = self.vertices()[1].reflect();
        (Region(sides), move |p: Point| p.reflect().sub(shift))
    }

    /// Shared cell and edge index for this region.
    pub fn index(self) -> Arc<RegionIndex> {
        static CACHE: OnceLock<Mutex<HashMap<Region, Arc<RegionIndex>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
        map.entry(self).or_insert_with(|| Arc::new(RegionIndex::build(self))).clone()
    }
}

impl TryFrom<[usize; 6]> for Region {
    type Error = Error;
    fn try_from(s: [usize; 6]) -> Result<Region> {
        Region::new(s)
    }
}

impl From<Region> for [usize; 6] {
    fn from(r: Region) -> [usize; 6] {
        r.0
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.triangle_size() {
            Some(n) => write!(f, "triangle({n})"),
            None => write!(f, "hexagon{:?}", self.0),
        }
    }
}

/// Dense numbering of the cells and edges of a region.
#[derive(Debug)]
pub struct RegionIndex {
    pub region: Region,
    cells: Vec<Cell>,
    cell_ix: HashMap<Cell, usize>,
    edges: Vec<Edge>,
    edge_ix: HashMap<Edge, usize>,
    /// For border edges, the side of the edge that lies inside.
    inside: Vec<Option<Side>>,
    segments: [Vec<Edge>; 6],
}

impl RegionIndex {
    fn build(region: Region) -> RegionIndex {
        let vs = region.vertices();
        let (lo_x, hi_x) = (vs.iter().map(|p| p.x).min().unwrap(), vs.iter().map(|p| p.x).max().unwrap());
        let (lo_y, hi_y) = (vs.iter().map(|p| p.y).min().unwrap(), vs.iter().map(|p| p.y).max().unwrap());
        let mut cells = Vec::new();
        for y in lo_y..=hi_y {
            for x in lo_x - (hi_y - lo_y)..=hi_x {
                for c in [Cell::up(x, y), Cell::down(x, y)] {
                    if region.contains(c) {
                        cells.push(c);
                    }
                }
            }
        }
        let cell_ix: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut edges: Vec<Edge> = cells.iter().flat_map(|c| c.sides().map(|(_, e)| e)).collect();
        edges.sort();
        edges.dedup();
        let edge_ix: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let inside = edges
            .iter()
            .map(|e| match (cell_ix.contains_key(&e.up_cell()), cell_ix.contains_key(&e.down_cell())) {
                (true, true) => None,
                (true, false) => Some(Side::Up),
                (false, true) => Some(Side::Down),
                (false, false) => unreachable!("edge {e} has no cell"),
            })
            .collect();
        let segments = std::array::from_fn(|k| {
            let d = side_step(k);
            (0..region.0[k] as i32)
                .map(|i| Edge::from_endpoints(vs[k].add(d.scale(i)), vs[k].add(d.scale(i + 1))))
                .collect()
        });
        RegionIndex { region, cells, cell_ix, edges, edge_ix, inside, segments }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cell_index(&self, c: Cell) -> Option<usize> {
        self.cell_ix.get(&c).copied()
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edge_ix.get(&e).copied()
    }

    pub fn contains_cell(&self, c: Cell) -> bool {
        self.cell_ix.contains_key(&c)
    }

    pub fn is_border(&self, e: Edge) -> bool {
        self.edge_index(e).is_some_and(|i| self.inside[i].is_some())
    }

    /// Which side of a border edge faces into the region.
    pub fn inside_side(&self, e: Edge) -> Option<Side> {
        self.edge_index(e).and_then(|i| self.inside[i])
    }

    /// Edges of side `k`, in counterclockwise order.
    pub fn segment(&self, k: usize) -> &[Edge] {
        &self.segments[k]
    }

    /// `(side, position)` of a border edge.
    pub fn border_position(&self, e: Edge) -> Option<(usize, usize)> {
        (0..6).find_map(|k| self.segments[k].iter().position(|&f| f == e).map(|i| (k, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::EdgeKind;

    #[test]
    fn triangle_counts() {
        for n in 1..6 {
            let ix = Region::triangle(n).index();
            assert_eq!(ix.cells().len(), n * n);
            assert_eq!(ix.edges().len(), 3 * n * (n + 1) / 2);
            assert_eq!(ix.segment(0)[0], Edge::new(0, 0, EdgeKind::Horizontal));
            assert_eq!(ix.segment(2)[0], Edge::new(n as i32 - 1, 0, EdgeKind::Backslash));
            assert_eq!(ix.segment(4)[0], Edge::new(0, n as i32 - 1, EdgeKind::Slash));
            let border = ix.edges().iter().filter(|&&e| ix.is_border(e)).count();
            assert_eq!(border, 3 * n);
        }
    }

    #[test]
    fn hexagon() {
        let r = Region::new([1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(r.index().cells().len(), 6);
        assert!(Region::new([1, 2, 1, 1, 1, 1]).is_err());
        let r = Region::new([2, 1, 1, 2, 1, 1]).unwrap();
        assert_eq!(r.index().cells().len(), 10);
    }

    #[test]
    fn rotation_and_reflection_preserve_cells() {
        for sides in [[3, 0, 3, 0, 3, 0], [2, 1, 1, 2, 1, 1], [1, 2, 3, 1, 2, 3]] {
            let r = Region::new(sides).unwrap();
            for k in 0..6 {
                let (r2, f) = r.rotated(k);
                let ix2 = r2.index();
                for &c in r.index().cells() {
                    assert!(ix2.contains_cell(c.transform(&f)), "{c} under rotation {k}");
                }
            }
            let (r2, f) = r.reflected();
            for &c in r.index().cells() {
                assert!(r2.index().contains_cell(c.transform(&f)));
            }
        }
    }
}
