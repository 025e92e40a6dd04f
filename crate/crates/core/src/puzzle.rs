//! Puzzles: tilings of a region by labeled pieces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::lattice::{Cell, Edge, EdgeKind, Normal, Point, Side};
use crate::pieces::{tables, Rhomb, Tri};
use crate::poly::YPoly;
use crate::region::{Region, RegionIndex};
use crate::strings::String012;

/// A placed piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tile {
    Tri { cell: Cell, tri: Tri },
    /// A rhombus covering the two cells on either side of `inner`.
    Rhomb { inner: Edge, rhomb: Rhomb },
}

fn class_of(kind: EdgeKind) -> u8 {
    match kind {
        EdgeKind::Horizontal => 0,
        EdgeKind::Slash => 1,
        EdgeKind::Backslash => 2,
    }
}

fn kind_of(class: u8) -> EdgeKind {
    match class % 3 {
        0 => EdgeKind::Horizontal,
        1 => EdgeKind::Slash,
        _ => EdgeKind::Backslash,
    }
}

impl Tile {
    pub fn tri(cell: Cell, tri: Tri) -> Tile {
        debug_assert_eq!(cell.up, tri.up);
        Tile::Tri { cell, tri }
    }

    /// The rhombus with the given inner edge; the class is read off the edge.
    pub fn rhomb(inner: Edge, a: Label, b: Label) -> Tile {
        Tile::Rhomb { inner, rhomb: Rhomb { class: class_of(inner.kind), a, b } }
    }

    /// Vertical rhombus with inner edge `H(x, y)`.
    pub fn vertical(x: i32, y: i32, slash: Label, backslash: Label) -> Tile {
        Tile::Rhomb { inner: Edge::new(x, y, EdgeKind::Horizontal), rhomb: Rhomb::vertical(slash, backslash) }
    }

    pub fn cells(self) -> Vec<Cell> {
        match self {
            Tile::Tri { cell, .. } => vec![cell],
            Tile::Rhomb { inner, .. } => vec![inner.up_cell(), inner.down_cell()],
        }
    }

    pub fn first_cell(self) -> Cell {
        match self {
            Tile::Tri { cell, .. } => cell,
            Tile::Rhomb { inner, .. } => inner.up_cell(),
        }
    }

    /// Outer sides as `(cell, outward normal, edge, label)`.
    pub fn sides(self) -> Vec<(Cell, Normal, Edge, Label)> {
        match self {
            Tile::Tri { cell, tri } => cell
                .sides()
                .iter()
                .map(|&(n, e)| (cell, n, e, tri.label_at(n).unwrap()))
                .collect(),
            Tile::Rhomb { inner, rhomb } => {
                let mut out = Vec::with_capacity(4);
                for c in [inner.up_cell(), inner.down_cell()] {
                    for (n, e) in c.sides() {
                        if e != inner {
                            out.push((c, n, e, rhomb.label_at(n).unwrap()));
                        }
                    }
                }
                out
            }
        }
    }

    /// Label on the side of `cell` with outward normal `n`.
    pub fn label_at(self, n: Normal) -> Option<Label> {
        match self {
            Tile::Tri { tri, .. } => tri.label_at(n),
            Tile::Rhomb { rhomb, .. } => rhomb.label_at(n),
        }
    }

    pub fn is_valid(self) -> bool {
        match self {
            Tile::Tri { tri, .. } => tables().triangle_valid(tri),
            Tile::Rhomb { rhomb, .. } => tables().rhombus_valid(rhomb),
        }
    }

    /// Vertical rhombi are the equivariant pieces.
    pub fn is_equivariant(self) -> bool {
        matches!(self, Tile::Rhomb { rhomb, .. } if rhomb.class == 0)
    }

    /// Rigid motion: rotation by `sixths` followed by the translation
    /// built into `f`.
    pub fn rotate(self, sixths: i32, f: impl Fn(Point) -> Point) -> Tile {
        match self {
            Tile::Tri { cell, tri } => Tile::Tri { cell: cell.transform(f), tri: tri.rotate(sixths) },
            Tile::Rhomb { inner, rhomb } => Tile::Rhomb { inner: inner.transform(f), rhomb: rhomb.rotate(sixths) },
        }
    }

    /// Reflection (through `f`) combined with label duality.
    pub fn dual(self, f: impl Fn(Point) -> Point) -> Tile {
        match self {
            Tile::Tri { cell, tri } => Tile::Tri { cell: cell.transform(f), tri: tri.dual() },
            Tile::Rhomb { inner, rhomb } => Tile::Rhomb { inner: inner.transform(f), rhomb: rhomb.dual() },
        }
    }

    /// Corners in counterclockwise order.
    pub fn polygon(self) -> Vec<Point> {
        match self {
            Tile::Tri { cell, .. } => cell.corners().to_vec(),
            Tile::Rhomb { inner, .. } => {
                let [p, q] = inner.endpoints();
                let a = inner.up_cell().corners().into_iter().find(|c| *c != p && *c != q).unwrap();
                let b = inner.down_cell().corners().into_iter().find(|c| *c != p && *c != q).unwrap();
                // a, p, b, q or a, q, b, p: pick the counterclockwise one
                let cross = |o: Point, u: Point, v: Point| {
                    let (u, v) = (u.sub(o), v.sub(o));
                    u.x * v.y - u.y * v.x
                };
                if cross(a, p, b) > 0 {
                    vec![a, p, b, q]
                } else {
                    vec![a, q, b, p]
                }
            }
        }
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tile::Tri { cell, tri } => write!(f, "{tri}@{cell}"),
            Tile::Rhomb { inner, rhomb } => write!(f, "r{}{}@{inner}", rhomb.b, rhomb.a),
        }
    }
}

/// A tiling of a region. The tiling is the primary datum; edge labels are
/// derived from it.
#[derive(Clone)]
pub struct Puzzle {
    index: Arc<RegionIndex>,
    tiles: Vec<Tile>,
    /// Tile covering each cell.
    owner: Vec<Option<usize>>,
    /// Label seen from the up and the down side of each edge.
    sides: Vec<[Option<Label>; 2]>,
}

fn side_slot(s: Side) -> usize {
    match s {
        Side::Up => 0,
        Side::Down => 1,
    }
}

impl Puzzle {
    /// Builds a puzzle. Tiles must lie in the region; gaps, overlaps and
    /// label mismatches are left for [`Puzzle::validate`].
    pub fn new(region: Region, mut tiles: Vec<Tile>) -> Result<Puzzle> {
        let index = region.index();
        tiles.sort();
        let mut owner = vec![None; index.cells().len()];
        let mut sides = vec![[None; 2]; index.edges().len()];
        for (t, tile) in tiles.iter().enumerate() {
            for c in tile.cells() {
                let ci = index
                    .cell_index(c)
                    .ok_or_else(|| Error::BadRegion(format!("tile {tile} leaves {region}")))?;
                owner[ci].get_or_insert(t);
            }
            for (c, _, e, l) in tile.sides() {
                let ei = index.edge_index(e).unwrap();
                sides[ei][side_slot(Side::of(c))].get_or_insert(l);
            }
        }
        Ok(Puzzle { index, tiles, owner, sides })
    }

    pub fn region(&self) -> Region {
        self.index.region
    }

    pub fn index(&self) -> &Arc<RegionIndex> {
        &self.index
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile_at(&self, c: Cell) -> Option<Tile> {
        self.index.cell_index(c).and_then(|i| self.owner[i]).map(|t| self.tiles[t])
    }

    pub fn side_label(&self, e: Edge, s: Side) -> Option<Label> {
        self.index.edge_index(e).and_then(|i| self.sides[i][side_slot(s)])
    }

    /// The label of an edge, as seen from either side.
    pub fn label(&self, e: Edge) -> Option<Label> {
        let i = self.index.edge_index(e)?;
        self.sides[i][0].or(self.sides[i][1])
    }

    /// Replaces the tile covering the same cells.
    pub fn with_tiles(&self, remove: &[Tile], add: &[Tile]) -> Result<Puzzle> {
        let mut tiles: Vec<Tile> = self.tiles.iter().filter(|t| !remove.contains(t)).copied().collect();
        tiles.extend_from_slice(add);
        Puzzle::new(self.region(), tiles)
    }

    /// Every problem with the puzzle; empty means valid.
    pub fn validate(&self) -> Vec<String> {
        self.validate_except(&[])
    }

    /// Like [`Puzzle::validate`], but tiles covering one of `skip` are not
    /// checked against the piece tables.
    pub fn validate_except(&self, skip: &[Cell]) -> Vec<String> {
        let mut bad = Vec::new();
        let mut count = vec![0usize; self.index.cells().len()];
        for t in &self.tiles {
            for c in t.cells() {
                count[self.index.cell_index(c).unwrap()] += 1;
            }
            if !t.is_valid() && !t.cells().iter().any(|c| skip.contains(c)) {
                bad.push(format!("{t} is not a puzzle piece"));
            }
        }
        for (i, &n) in count.iter().enumerate() {
            if n != 1 {
                bad.push(format!("cell {} is covered {n} times", self.index.cells()[i]));
            }
        }
        let inner: BTreeSet<Edge> = self
            .tiles
            .iter()
            .filter_map(|t| match t {
                Tile::Rhomb { inner, .. } => Some(*inner),
                _ => None,
            })
            .collect();
        for (i, &e) in self.index.edges().iter().enumerate() {
            let [u, d] = self.sides[i];
            match self.index.inside_side(e) {
                Some(s) => match self.sides[i][side_slot(s)] {
                    Some(l) if !l.is_simple() => bad.push(format!("border edge {e} has composed label {l}")),
                    _ => {}
                },
                None if inner.contains(&e) => {}
                None => {
                    if u != d {
                        let show = |x: Option<Label>| x.map_or("-".to_string(), |l| l.to_string());
                        bad.push(format!("edge {e} has labels {} and {}", show(u), show(d)));
                    }
                }
            }
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn rotate(&self, sixths: i32) -> Puzzle {
        let (r, f) = self.region().rotated(sixths);
        let tiles = self.tiles.iter().map(|t| t.rotate(sixths, &f)).collect();
        Puzzle::new(r, tiles).expect("rotation maps the region onto its image")
    }

    /// Reflection in a vertical line with every label dualized.
    pub fn dual(&self) -> Puzzle {
        let (r, f) = self.region().reflected();
        let tiles = self.tiles.iter().map(|t| t.dual(&f)).collect();
        Puzzle::new(r, tiles).expect("reflection maps the region onto its image")
    }

    /// Labels along each side of the region, counterclockwise.
    pub fn boundary_sides(&self) -> [Vec<Option<Label>>; 6] {
        std::array::from_fn(|k| {
            self.index
                .segment(k)
                .iter()
                .map(|&e| self.side_label(e, self.index.inside_side(e).unwrap()))
                .collect()
        })
    }

    /// `(u, v, w)`: left border bottom to apex, right border apex to
    /// bottom-right corner, bottom border left to right.
    pub fn boundary(&self) -> Result<(String012, String012, String012)> {
        self.boundary_with(&BTreeMap::new())
    }

    /// Like [`Puzzle::boundary`], with some border labels replaced.
    pub fn boundary_with(&self, over: &BTreeMap<Edge, Label>) -> Result<(String012, String012, String012)> {
        if self.region().triangle_size().is_none() {
            return Err(Error::NotTriangular);
        }
        let mut b = self.boundary_sides();
        for (&e, &l) in over {
            let (k, i) = self
                .index
                .border_position(e)
                .ok_or_else(|| Error::BadRegion(format!("{e} is not on the border")))?;
            b[k][i] = Some(l);
        }
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
        Ok((read(&b[4], true)?, read(&b[2], true)?, read(&b[0], false)?))
    }

    /// Weight of the whole puzzle: the product of `y_j - y_i` over its
    /// equivariant pieces.
    pub fn weight(&self) -> Result<YPoly> {
        let mut w = YPoly::one();
        for t in &self.tiles {
            if let Tile::Rhomb { .. } = t {
                let (i, j) = self.piece_weight(*t)?;
                w = &w * &YPoly::diff(j, i);
            }
        }
        Ok(w)
    }

    /// Position `(i, j)` of a vertical rhombus.
    pub fn piece_weight(&self, t: Tile) -> Result<(usize, usize)> {
        match t {
            Tile::Rhomb { inner, rhomb } if rhomb.class == 0 => {
                let i = self.left_projection(Edge::new(inner.x, inner.y, EdgeKind::Backslash))?;
                let j = self.right_projection(Edge::new(inner.x, inner.y, EdgeKind::Slash))?;
                Ok((i, j))
            }
            _ => Err(Error::WrongDirection(format!("{t} is not a vertical rhombus"))),
        }
    }

    /// Bottom edge reached from a backslash edge along the left-border
    /// direction.
    pub fn left_projection(&self, e: Edge) -> Result<usize> {
        self.region().triangle_size().ok_or(Error::NotTriangular)?;
        match e.kind {
            EdgeKind::Backslash | EdgeKind::Horizontal => Ok((e.x + 1) as usize),
            EdgeKind::Slash => Err(Error::WrongDirection(format!("{e} has no left projection"))),
        }
    }

    /// Bottom edge reached from a slash edge along the right-border
    /// direction.
    pub fn right_projection(&self, e: Edge) -> Result<usize> {
        self.region().triangle_size().ok_or(Error::NotTriangular)?;
        match e.kind {
            EdgeKind::Slash => Ok((e.x + e.y + 1) as usize),
            EdgeKind::Horizontal => Ok((e.x + 1) as usize),
            EdgeKind::Backslash => Err(Error::WrongDirection(format!("{e} has no right projection"))),
        }
    }

    /// One line per row of up-cells, bottom row first. Each up-cell shows
    /// its left, bottom and right labels; `-` marks the inner edge of a
    /// rhombus.
    pub fn render_text(&self) -> String {
        let cells: Vec<Cell> = self.index.cells().iter().filter(|c| c.up).copied().collect();
        let lo = cells.iter().map(|c| c.y).min().unwrap_or(0);
        let hi = cells.iter().map(|c| c.y).max().unwrap_or(-1);
        let show = |e: Edge| -> char {
            match (self.side_label(e, Side::Up), self.tile_at(e.up_cell())) {
                (_, Some(Tile::Rhomb { inner, .. })) if inner == e => '-',
                (Some(l), _) => char::from(b'0' + l.value()),
                (None, _) => '?',
            }
        };
        let mut out = String::new();
        for y in lo..=hi {
            let row: Vec<String> = cells
                .iter()
                .filter(|c| c.y == y)
                .map(|c| {
                    let b = c.side(Normal::S).unwrap();
                    let l = c.side(Normal::NW).unwrap();
                    let r = c.side(Normal::NE).unwrap();
                    [show(l), show(b), show(r)].iter().collect()
                })
                .collect();
            let _ = writeln!(out, "{}{}", " ".repeat((y - lo) as usize * 2), row.join(" "));
        }
        out
    }

    /// SVG drawing with optional flaw decorations.
    pub fn render_svg(&self, overlay: &Overlay) -> String {
        svg(self, overlay)
    }

    pub fn to_json(&self) -> PuzzleJson {
        PuzzleJson { region: self.region(), pieces: self.tiles.iter().map(|&t| PieceJson::from_tile(t)).collect() }
    }

    pub fn from_json(j: &PuzzleJson) -> Result<Puzzle> {
        let tiles = j.pieces.iter().map(PieceJson::to_tile).collect::<Result<Vec<_>>>()?;
        Puzzle::new(j.region, tiles)
    }
}

impl PartialEq for Puzzle {
    fn eq(&self, o: &Puzzle) -> bool {
        self.region() == o.region() && self.tiles == o.tiles
    }
}

impl Eq for Puzzle {}

impl Hash for Puzzle {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.region().hash(h);
        self.tiles.hash(h);
    }
}

impl PartialOrd for Puzzle {
    fn partial_cmp(&self, o: &Puzzle) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Puzzle {
    fn cmp(&self, o: &Puzzle) -> std::cmp::Ordering {
        (self.region(), &self.tiles).cmp(&(o.region(), &o.tiles))
    }
}

impl fmt::Debug for Puzzle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Puzzle({}", self.region())?;
        for t in &self.tiles {
            write!(f, " {t}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKindJson {
    Triangle,
    Rhombus,
}

/// One piece in the JSON schema. A triangle's labels are `[bottom, left,
/// right]` before rotating by `orientation` sixth-turns, and `anchor` is
/// its cell. A rhombus's labels are `[slash, backslash]` of the vertical
/// piece, `orientation` is taken mod 3 and `anchor` is the lower end of
/// its inner edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub kind: PieceKindJson,
    pub orientation: u8,
    pub anchor: [i32; 2],
    pub labels: Vec<u8>,
}

impl PieceJson {
    pub fn from_tile(t: Tile) -> PieceJson {
        match t {
            Tile::Tri { cell, tri } => {
                let base = if tri.up { 0 } else { 1 };
                let ks = [base, base + 2, base + 4];
                let canon = |k: i32| tri.rotate(-k).blr();
                let k = ks
                    .into_iter()
                    .find(|&k| tables().triangles().contains(&canon(k)))
                    .unwrap_or(base);
                let (b, l, r) = canon(k);
                PieceJson {
                    kind: PieceKindJson::Triangle,
                    orientation: k as u8,
                    anchor: [cell.x, cell.y],
                    labels: vec![b.value(), l.value(), r.value()],
                }
            }
            Tile::Rhomb { inner, rhomb } => PieceJson {
                kind: PieceKindJson::Rhombus,
                orientation: rhomb.class,
                anchor: [inner.x, inner.y],
                labels: vec![rhomb.b.value(), rhomb.a.value()],
            },
        }
    }

    pub fn to_tile(&self) -> Result<Tile> {
        let ls = self.labels.iter().map(|&v| Label::new(v)).collect::<Result<Vec<_>>>()?;
        let [x, y] = self.anchor;
        match (self.kind, ls.as_slice()) {
            (PieceKindJson::Triangle, &[b, l, r]) => {
                let tri = Tri::from_blr(b, l, r).rotate(self.orientation as i32);
                Ok(Tile::Tri { cell: Cell { x, y, up: tri.up }, tri })
            }
            (PieceKindJson::Rhombus, &[s, bs]) => {
                let class = self.orientation % 3;
                Ok(Tile::Rhomb { inner: Edge::new(x, y, kind_of(class)), rhomb: Rhomb { class, a: bs, b: s } })
            }
            _ => Err(Error::Parse(format!("piece {self:?} has the wrong number of labels"))),
        }
    }
}

/// The JSON puzzle schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuzzleJson {
    pub region: Region,
    pub pieces: Vec<PieceJson>,
}

/// A gash drawn on an edge: `inner` is seen from `side`, `outer` from the
/// other side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GashMark {
    pub edge: Edge,
    pub side: Side,
    pub inner: Label,
    pub outer: Label,
}

/// Decorations for [`Puzzle::render_svg`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overlay {
    pub scab: Vec<Cell>,
    pub temporary: Option<Cell>,
    pub gashes: Vec<GashMark>,
}

const SCALE: f64 = 48.0;

fn xy(p: Point, h: f64) -> (f64, f64) {
    let (x, y) = p.cartesian();
    (x * SCALE + SCALE / 2.0, h - y * SCALE + SCALE / 2.0)
}

fn svg(p: &Puzzle, ov: &Overlay) -> String {
    let pts: Vec<Point> = p.index.cells().iter().flat_map(|c| c.corners()).collect();
    let max_x = pts.iter().map(|q| q.cartesian().0).fold(0.0, f64::max);
    let min_x = pts.iter().map(|q| q.cartesian().0).fold(0.0, f64::min);
    let max_y = pts.iter().map(|q| q.cartesian().1).fold(0.0, f64::max);
    let h = max_y * SCALE;
    let w = (max_x - min_x) * SCALE + SCALE;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="{:.1} 0 {:.1} {:.1}">"#,
        w,
        h + SCALE,
        min_x * SCALE,
        w,
        h + SCALE
    );
    for t in p.tiles() {
        let fill = if t.cells().iter().any(|c| ov.scab.contains(c)) {
            "#f08080"
        } else if t.cells().iter().any(|c| ov.temporary == Some(*c)) {
            "#ffd27f"
        } else if t.is_equivariant() {
            "#c0c0c0"
        } else if matches!(t, Tile::Rhomb { .. }) {
            "#dde4ff"
        } else {
            "#ffffff"
        };
        let poly: Vec<String> = t
            .polygon()
            .into_iter()
            .map(|q| {
                let (x, y) = xy(q, h);
                format!("{x:.1},{y:.1}")
            })
            .collect();
        let _ = writeln!(s, r#"  <polygon points="{}" fill="{fill}" stroke="black" stroke-width="1"/>"#, poly.join(" "));
    }
    for &e in p.index.edges() {
        if p.tiles().iter().any(|t| matches!(t, Tile::Rhomb { inner, .. } if *inner == e)) {
            continue;
        }
        let m = e.midpoint2();
        let (x, y) = xy(Point::new(0, 0), h);
        let (mx, my) = m.cartesian();
        let (cx, cy) = (x + mx * SCALE / 2.0, y - my * SCALE / 2.0);
        if let Some(g) = ov.gashes.iter().find(|g| g.edge == e) {
            let n = g.side.direction(e.kind);
            let ang = std::f64::consts::PI / 6.0 * n.zeta_exponent() as f64;
            let (dx, dy) = (ang.cos() * 8.0, -ang.sin() * 8.0);
            let [a, b] = e.endpoints();
            let (ax, ay) = xy(a, h);
            let (bx, by) = xy(b, h);
            let _ = writeln!(s, r#"  <line x1="{ax:.1}" y1="{ay:.1}" x2="{bx:.1}" y2="{by:.1}" stroke="red" stroke-width="3"/>"#);
            for (l, sgn) in [(g.inner, 1.0), (g.outer, -1.0)] {
                let _ = writeln!(
                    s,
                    r#"  <text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle" dominant-baseline="middle" fill="red">{l}</text>"#,
                    cx + sgn * dx,
                    cy + sgn * dy
                );
            }
        } else if let Some(l) = p.label(e) {
            let _ = writeln!(
                s,
                r#"  <text x="{cx:.1}" y="{cy:.1}" font-size="12" text-anchor="middle" dominant-baseline="middle">{l}</text>"#
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// The puzzle with boundary `(w, w, w)`: position `(i, j)` holds the
/// vertical rhombus or triangle pair with labels `w_j` (slash) and `w_i`
/// (backslash).
pub fn restriction_puzzle(w: &String012) -> Result<Puzzle> {
    let n = w.len();
    let ls = w.labels();
    let t = tables();
    let mut tiles = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let (x, y) = ((i - 1) as i32, (j - i) as i32);
            let (wi, wj) = (ls[i - 1], ls[j - 1]);
            if y == 0 {
                tiles.push(Tile::tri(Cell::up(x, 0), Tri::up([wi; 3])));
            } else if wi > wj {
                tiles.push(Tile::vertical(x, y, wj, wi));
            } else {
                let up = t
                    .complete(true, [Some(wi), Some(wj), None])
                    .ok_or_else(|| Error::Theorem(format!("no up-triangle for ({wi},{wj})")))?;
                let down = t
                    .complete(false, [None, Some(wi), Some(wj)])
                    .ok_or_else(|| Error::Theorem(format!("no down-triangle for ({wi},{wj})")))?;
                tiles.push(Tile::tri(Cell::up(x, y), up));
                tiles.push(Tile::tri(Cell::down(x, y - 1), down));
            }
        }
    }
    Puzzle::new(Region::triangle(n), tiles)
}
