//! Triangular lattice geometry.
//!
//! A lattice point `(x, y)` sits at `x * (1, 0) + y * (1/2, sqrt(3)/2)`.
//! The up-cell at `(x, y)` has corners `(x,y)`, `(x+1,y)`, `(x,y+1)`; the
//! down-cell at `(x, y)` has corners `(x+1,y)`, `(x,y+1)`, `(x+1,y+1)`.
//!
//! Directions perpendicular to edges are indexed by [`Normal`]: index `k`
//! stands for the unit vector `zeta^(2k+1)` with `zeta = exp(i pi / 6)`,
//! i.e. the angle `30 + 60k` degrees.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Point {
        Point { x, y }
    }

    /// Rotation by 60 degrees counterclockwise about the origin.
    pub fn rotate60(self) -> Point {
        Point::new(-self.y, self.x + self.y)
    }

    pub fn rotate(self, sixths: i32) -> Point {
        let mut p = self;
        for _ in 0..sixths.rem_euclid(6) {
            p = p.rotate60();
        }
        p
    }

    /// Reflection in the vertical line through the origin.
    pub fn reflect(self) -> Point {
        Point::new(-self.x - self.y, self.y)
    }

    pub fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    pub fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    pub fn scale(self, k: i32) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    /// Cartesian coordinates, for rendering.
    pub fn cartesian(self) -> (f64, f64) {
        (
            self.x as f64 + 0.5 * self.y as f64,
            self.y as f64 * 3f64.sqrt() / 2.0,
        )
    }
}

/// Unit step in the direction of side `k` of a hexagon traversed
/// counterclockwise: `0` degrees, `60`, `120`, ...
pub fn side_step(k: usize) -> Point {
    Point::new(1, 0).rotate(k as i32)
}

/// One of the six directions perpendicular to lattice edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Normal(u8);

impl Normal {
    pub const NE: Normal = Normal(0);
    pub const N: Normal = Normal(1);
    pub const NW: Normal = Normal(2);
    pub const SW: Normal = Normal(3);
    pub const S: Normal = Normal(4);
    pub const SE: Normal = Normal(5);

    pub fn new(k: i32) -> Normal {
        Normal(k.rem_euclid(6) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn rotate(self, sixths: i32) -> Normal {
        Normal::new(self.0 as i32 + sixths)
    }

    pub fn opposite(self) -> Normal {
        self.rotate(3)
    }

    /// Image under reflection in a vertical line.
    pub fn reflect(self) -> Normal {
        Normal::new(2 - self.0 as i32)
    }

    /// Exponent `e` with this direction equal to `zeta^e`.
    pub fn zeta_exponent(self) -> i32 {
        2 * self.0 as i32 + 1
    }

    pub fn edge_kind(self) -> EdgeKind {
        match self.0 % 3 {
            0 => EdgeKind::Backslash,
            1 => EdgeKind::Horizontal,
            _ => EdgeKind::Slash,
        }
    }

    pub fn all() -> impl Iterator<Item = Normal> {
        (0..6).map(Normal)
    }
}

/// Orientation of a lattice edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    /// Parallel to the bottom border.
    Horizontal,
    /// South-west to north-east, parallel to the left border.
    Slash,
    /// North-west to south-east, parallel to the right border.
    Backslash,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 3] = [EdgeKind::Horizontal, EdgeKind::Slash, EdgeKind::Backslash];

    /// Direction from the edge towards its up-cell.
    pub fn toward_up(self) -> Normal {
        match self {
            EdgeKind::Horizontal => Normal::N,
            EdgeKind::Slash => Normal::SE,
            EdgeKind::Backslash => Normal::SW,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
    pub up: bool,
}

impl Cell {
    pub const fn up(x: i32, y: i32) -> Cell {
        Cell { x, y, up: true }
    }

    pub const fn down(x: i32, y: i32) -> Cell {
        Cell { x, y, up: false }
    }

    pub fn corners(self) -> [Point; 3] {
        let (x, y) = (self.x, self.y);
        if self.up {
            [Point::new(x, y), Point::new(x + 1, y), Point::new(x, y + 1)]
        } else {
            [Point::new(x + 1, y), Point::new(x, y + 1), Point::new(x + 1, y + 1)]
        }
    }

    /// Three times the centroid, which is a lattice point.
    pub fn centroid3(self) -> Point {
        let [a, b, c] = self.corners();
        a.add(b).add(c)
    }

    pub fn from_corners(pts: [Point; 3]) -> Cell {
        let s = pts[0].add(pts[1]).add(pts[2]);
        if (s.x - 1).rem_euclid(3) == 0 {
            Cell::up((s.x - 1).div_euclid(3), (s.y - 1).div_euclid(3))
        } else {
            Cell::down((s.x - 2).div_euclid(3), (s.y - 2).div_euclid(3))
        }
    }

    /// Outward normals of the three sides.
    pub fn normals(self) -> [Normal; 3] {
        if self.up {
            [Normal::NE, Normal::NW, Normal::S]
        } else {
            [Normal::N, Normal::SW, Normal::SE]
        }
    }

    /// The edge on the side with the given outward normal, if the cell has
    /// such a side.
    pub fn side(self, n: Normal) -> Option<Edge> {
        let (x, y) = (self.x, self.y);
        match (self.up, n.index()) {
            (true, 0) => Some(Edge::new(x, y, EdgeKind::Backslash)),
            (true, 2) => Some(Edge::new(x, y, EdgeKind::Slash)),
            (true, 4) => Some(Edge::new(x, y, EdgeKind::Horizontal)),
            (false, 1) => Some(Edge::new(x, y + 1, EdgeKind::Horizontal)),
            (false, 3) => Some(Edge::new(x, y, EdgeKind::Backslash)),
            (false, 5) => Some(Edge::new(x + 1, y, EdgeKind::Slash)),
            _ => None,
        }
    }

    pub fn sides(self) -> [(Normal, Edge); 3] {
        self.normals().map(|n| (n, self.side(n).unwrap()))
    }

    pub fn transform(self, f: impl Fn(Point) -> Point) -> Cell {
        Cell::from_corners(self.corners().map(f))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", if self.up { "U" } else { "D" }, self.x, self.y)
    }
}

/// A lattice edge. `Horizontal` runs `(x,y)-(x+1,y)`, `Slash` runs
/// `(x,y)-(x,y+1)`, `Backslash` runs `(x+1,y)-(x,y+1)`; in each case the
/// up-cell at `(x,y)` is one of the two cells bordering it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub x: i32,
    pub y: i32,
    pub kind: EdgeKind,
}

impl Edge {
    pub const fn new(x: i32, y: i32, kind: EdgeKind) -> Edge {
        Edge { x, y, kind }
    }

    pub fn endpoints(self) -> [Point; 2] {
        let (x, y) = (self.x, self.y);
        match self.kind {
            EdgeKind::Horizontal => [Point::new(x, y), Point::new(x + 1, y)],
            EdgeKind::Slash => [Point::new(x, y), Point::new(x, y + 1)],
            EdgeKind::Backslash => [Point::new(x + 1, y), Point::new(x, y + 1)],
        }
    }

    pub fn from_endpoints(a: Point, b: Point) -> Edge {
        let d = b.sub(a);
        let (lo, kind) = match (d.x, d.y) {
            (1, 0) => (a, EdgeKind::Horizontal),
            (-1, 0) => (b, EdgeKind::Horizontal),
            (0, 1) => (a, EdgeKind::Slash),
            (0, -1) => (b, EdgeKind::Slash),
            (-1, 1) => (Point::new(b.x, a.y), EdgeKind::Backslash),
            (1, -1) => (Point::new(a.x, b.y), EdgeKind::Backslash),
            _ => panic!("points {a:?} and {b:?} are not adjacent"),
        };
        Edge::new(lo.x, lo.y, kind)
    }

    pub fn up_cell(self) -> Cell {
        Cell::up(self.x, self.y)
    }

    pub fn down_cell(self) -> Cell {
        match self.kind {
            EdgeKind::Horizontal => Cell::down(self.x, self.y - 1),
            EdgeKind::Slash => Cell::down(self.x - 1, self.y),
            EdgeKind::Backslash => Cell::down(self.x, self.y),
        }
    }

    pub fn transform(self, f: impl Fn(Point) -> Point) -> Edge {
        let [a, b] = self.endpoints();
        Edge::from_endpoints(f(a), f(b))
    }

    /// Twice the midpoint.
    pub fn midpoint2(self) -> Point {
        let [a, b] = self.endpoints();
        a.add(b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            EdgeKind::Horizontal => "H",
            EdgeKind::Slash => "S",
            EdgeKind::Backslash => "B",
        };
        write!(f, "{k}({},{})", self.x, self.y)
    }
}

/// Which of the two cells bordering an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Up,
    Down,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Up => Side::Down,
            Side::Down => Side::Up,
        }
    }

    pub fn of(cell: Cell) -> Side {
        if cell.up {
            Side::Up
        } else {
            Side::Down
        }
    }

    /// Direction from the edge toward this side.
    pub fn direction(self, kind: EdgeKind) -> Normal {
        match self {
            Side::Up => kind.toward_up(),
            Side::Down => kind.toward_up().opposite(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_has_order_six() {
        let p = Point::new(3, -2);
        assert_eq!(p.rotate(6), p);
        assert_eq!(p.rotate(3), Point::new(-3, 2));
        assert_eq!(p.reflect().reflect(), p);
    }

    #[test]
    fn cells_and_edges_are_consistent() {
        for up in [true, false] {
            let c = Cell { x: 2, y: -1, up };
            assert_eq!(Cell::from_corners(c.corners()), c);
            for (n, e) in c.sides() {
                let side = if e.up_cell() == c { Side::Up } else { Side::Down };
                assert!(e.up_cell() == c || e.down_cell() == c);
                // the outward normal points away from the cell
                assert_eq!(side.direction(e.kind).opposite(), n);
                assert_eq!(n.edge_kind(), e.kind);
            }
        }
    }

    #[test]
    fn transforms_map_cells_to_cells() {
        let c = Cell::up(1, 2);
        let r = c.transform(|p| p.rotate60());
        assert!(!r.up);
        let back = (0..5).fold(r, |acc, _| acc.transform(|p| p.rotate60()));
        assert_eq!(back, c);
        let e = Edge::new(1, 1, EdgeKind::Slash);
        assert_eq!(e.transform(|p| p.reflect()).kind, EdgeKind::Backslash);
        assert_eq!(Edge::from_endpoints(e.endpoints()[1], e.endpoints()[0]), e);
    }

    #[test]
    fn normals_rotate_with_cells() {
        let c = Cell::up(0, 0);
        for (n, e) in c.sides() {
            let rc = c.transform(|p| p.rotate60());
            let re = e.transform(|p| p.rotate60());
            assert_eq!(rc.side(n.rotate(1)), Some(re));
            let fc = c.transform(|p| p.reflect());
            let fe = e.transform(|p| p.reflect());
            assert_eq!(fc.side(n.reflect()), Some(fe));
        }
    }
}
