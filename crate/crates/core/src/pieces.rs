//! Puzzle pieces: the triangle and rhombus tables, rotation, duality and
//! two-side completion.
//!
//! Inside the library a placed triangle is a [`Tri`]: a parity and the
//! three labels listed by outward normal (normals `0, 2, 4` for an
//! up-triangle, `1, 3, 5` for a down-triangle). A placed rhombus is a
//! [`Rhomb`]: a class `r` in `0..3` naming its inner edge (horizontal,
//! slash, backslash) and two labels, `a` on the sides with normals
//! `r, r+3` and `b` on the sides with normals `r+2, r+5`. For a vertical
//! rhombus `a` sits on the backslash sides and `b` on the slash sides.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::lattice::Normal;

/// The default table, committed as a fixture.
pub const STANDARD_TABLE: &str = include_str!("../tables/pieces.txt");

/// Rotation in sixth-turns, counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Orientation(u8);

impl Orientation {
    pub const UPRIGHT: Orientation = Orientation(0);

    pub fn new(sixths: i32) -> Orientation {
        Orientation(sixths.rem_euclid(6) as u8)
    }

    pub fn sixths(self) -> i32 {
        self.0 as i32
    }

    pub fn compose(self, other: Orientation) -> Orientation {
        Orientation::new(self.sixths() + other.sixths())
    }
}

/// A placed triangle, labels listed by outward normal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tri {
    pub up: bool,
    pub labels: [Label; 3],
}

impl Tri {
    pub fn up(labels: [Label; 3]) -> Tri {
        Tri { up: true, labels }
    }

    /// Right-side-up triangle from its bottom, left and right labels.
    pub fn from_blr(b: Label, l: Label, r: Label) -> Tri {
        Tri::up([r, l, b])
    }

    pub fn normals(self) -> [Normal; 3] {
        let o = if self.up { 0 } else { 1 };
        [Normal::new(o), Normal::new(o + 2), Normal::new(o + 4)]
    }

    /// Slot of normal `n` in `labels`, if the triangle has that side.
    pub fn slot(self, n: Normal) -> Option<usize> {
        let k = n.index();
        if (k % 2 == 0) == self.up {
            Some(k / 2)
        } else {
            None
        }
    }

    pub fn label_at(self, n: Normal) -> Option<Label> {
        self.slot(n).map(|s| self.labels[s])
    }

    pub fn rotate(self, sixths: i32) -> Tri {
        let mut t = self;
        for _ in 0..sixths.rem_euclid(6) {
            t = if t.up {
                Tri { up: false, labels: t.labels }
            } else {
                let [a, b, c] = t.labels;
                Tri { up: true, labels: [c, a, b] }
            };
        }
        t
    }

    /// Reflection in a vertical line followed by label dualization.
    pub fn dual(self) -> Tri {
        let d = self.labels.map(Label::dual);
        if self.up {
            Tri { up: true, labels: [d[1], d[0], d[2]] }
        } else {
            Tri { up: false, labels: [d[0], d[2], d[1]] }
        }
    }

    fn key(self) -> usize {
        let [a, b, c] = self.labels;
        (a.index() << 6) | (b.index() << 3) | c.index()
    }

    /// The right-side-up rotation with labels `(bottom, left, right)`, if
    /// this is an up-triangle or a rotation of one.
    pub fn blr(self) -> (Label, Label, Label) {
        let t = if self.up { self } else { self.rotate(1) };
        (t.labels[2], t.labels[1], t.labels[0])
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (b, l, r) = self.blr();
        if self.up {
            write!(f, "u{b}{l}{r}")
        } else {
            let [a, b2, c] = self.labels;
            write!(f, "d{a}{b2}{c}")
        }
    }
}

/// A placed rhombus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rhomb {
    pub class: u8,
    pub a: Label,
    pub b: Label,
}

impl Rhomb {
    pub fn vertical(slash: Label, backslash: Label) -> Rhomb {
        Rhomb { class: 0, a: backslash, b: slash }
    }

    pub fn label_at(self, n: Normal) -> Option<Label> {
        let r = self.class as usize;
        let k = n.index();
        if k % 3 == r {
            Some(self.a)
        } else if k % 3 == (r + 2) % 3 {
            Some(self.b)
        } else {
            None
        }
    }

    /// The normal of the inner edge, seen from the up-cell.
    pub fn inner_kind_normal(self) -> Normal {
        Normal::new(self.class as i32 + 1)
    }

    pub fn rotate(self, sixths: i32) -> Rhomb {
        Rhomb {
            class: (self.class as i32 + sixths).rem_euclid(3) as u8,
            ..self
        }
    }

    pub fn dual(self) -> Rhomb {
        Rhomb {
            class: (-(self.class as i32)).rem_euclid(3) as u8,
            a: self.b.dual(),
            b: self.a.dual(),
        }
    }
}

/// Side of a right-side-up triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriSide {
    Left,
    Right,
    Horizontal,
}

impl TriSide {
    pub const ALL: [TriSide; 3] = [TriSide::Left, TriSide::Right, TriSide::Horizontal];

    /// Outward normal in the right-side-up frame.
    pub fn normal(self) -> Normal {
        match self {
            TriSide::Right => Normal::new(0),
            TriSide::Left => Normal::new(2),
            TriSide::Horizontal => Normal::new(4),
        }
    }
}

/// A triangle piece in the canonical frame together with its rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrianglePiece {
    pub left: Label,
    pub right: Label,
    pub horizontal: Label,
    pub orientation: Orientation,
}

impl TrianglePiece {
    pub fn placed(self) -> Tri {
        Tri::from_blr(self.horizontal, self.left, self.right).rotate(self.orientation.sixths())
    }

    pub fn rotate(self, sixths: i32) -> TrianglePiece {
        TrianglePiece {
            orientation: self.orientation.compose(Orientation::new(sixths)),
            ..self
        }
    }
}

/// A rhombus piece in the vertical frame together with its rotation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RhombusPiece {
    pub slash: Label,
    pub backslash: Label,
    pub orientation: Orientation,
}

impl RhombusPiece {
    pub fn placed(self) -> Rhomb {
        Rhomb::vertical(self.slash, self.backslash).rotate(self.orientation.sixths())
    }

    pub fn rotate(self, sixths: i32) -> RhombusPiece {
        RhombusPiece {
            orientation: self.orientation.compose(Orientation::new(sixths)),
            ..self
        }
    }

    /// Labels on the sides that are parallel to the slash and backslash
    /// directions after rotation, as `(slash-like, backslash-like)`.
    pub fn sides_by_normal(self) -> [(Normal, Label); 4] {
        let p = self.placed();
        let r = p.class as i32;
        [
            (Normal::new(r), p.a),
            (Normal::new(r + 3), p.a),
            (Normal::new(r + 2), p.b),
            (Normal::new(r + 5), p.b),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Triangle,
    Rhombus,
}

/// The validity tables, closed under rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceTables {
    triangles: Vec<(Label, Label, Label)>,
    rhombi: Vec<(Label, Label)>,
    up: Vec<bool>,
    down: Vec<bool>,
    rhomb: Vec<bool>,
}

impl PieceTables {
    /// Tables from canonical right-side-up triangles `(bottom, left,
    /// right)` and vertical rhombi `(slash, backslash)`.
    pub fn new(triangles: Vec<(Label, Label, Label)>, rhombi: Vec<(Label, Label)>) -> PieceTables {
        let mut up = vec![false; 512];
        let mut down = vec![false; 512];
        for &(b, l, r) in &triangles {
            for k in 0..6 {
                let t = Tri::from_blr(b, l, r).rotate(k);
                if t.up {
                    up[t.key()] = true;
                } else {
                    down[t.key()] = true;
                }
            }
        }
        let mut rhomb = vec![false; 64];
        for &(s, bs) in &rhombi {
            rhomb[(bs.index() << 3) | s.index()] = true;
        }
        PieceTables { triangles, rhombi, up, down, rhomb }
    }

    pub fn standard() -> PieceTables {
        PieceTables::parse(STANDARD_TABLE).expect("committed piece table parses")
    }

    /// Parses the plain-text fixture format.
    pub fn parse(text: &str) -> Result<PieceTables> {
        let mut triangles = Vec::new();
        let mut rhombi = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut words = line.split_whitespace();
            let kind = words.next().unwrap_or_default();
            let labels = words
                .map(|w| {
                    w.parse::<u8>()
                        .map_err(|_| Error::Parse(format!("line {}: bad label {w:?}", no + 1)))
                        .and_then(Label::new)
                })
                .collect::<Result<Vec<_>>>()?;
            match (kind, labels.as_slice()) {
                ("triangle", &[b, l, r]) => triangles.push((b, l, r)),
                ("rhombus", &[s, bs]) => rhombi.push((s, bs)),
                _ => return Err(Error::Parse(format!("line {}: {line:?}", no + 1))),
            }
        }
        Ok(PieceTables::new(triangles, rhombi))
    }

    pub fn load(path: &std::path::Path) -> Result<PieceTables> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        PieceTables::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from(
            "# Two-step puzzle pieces, one per line.\n\
             # triangle <bottom> <left> <right>   (right-side-up)\n\
             # rhombus <slash> <backslash>        (vertical; slash is the SW-NE pair)\n",
        );
        for (b, l, r) in &self.triangles {
            out.push_str(&format!("triangle {b} {l} {r}\n"));
        }
        for (s, bs) in &self.rhombi {
            out.push_str(&format!("rhombus {s} {bs}\n"));
        }
        out
    }

    pub fn triangles(&self) -> &[(Label, Label, Label)] {
        &self.triangles
    }

    pub fn rhombi(&self) -> &[(Label, Label)] {
        &self.rhombi
    }

    pub fn triangle_valid(&self, t: Tri) -> bool {
        if t.up {
            self.up[t.key()]
        } else {
            self.down[t.key()]
        }
    }

    pub fn rhombus_valid(&self, r: Rhomb) -> bool {
        self.rhomb[(r.a.index() << 3) | r.b.index()]
    }

    pub fn all_triangles(&self, up: bool) -> impl Iterator<Item = Tri> + '_ {
        let table = if up { &self.up } else { &self.down };
        (0..512).filter(move |&k| table[k]).map(move |k| Tri {
            up,
            labels: [k >> 6, (k >> 3) & 7, k & 7].map(|v| Label::new(v as u8).unwrap()),
        })
    }

    /// Valid `(a, b)` rhombus label pairs.
    pub fn rhombus_pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        (0..64)
            .filter(move |&k| self.rhomb[k])
            .map(|k| (Label::new((k >> 3) as u8).unwrap(), Label::new((k & 7) as u8).unwrap()))
    }

    /// Every valid triangle of the given parity that agrees with all known
    /// slots.
    pub fn matching(&self, up: bool, known: [Option<Label>; 3]) -> impl Iterator<Item = Tri> + '_ {
        self.all_triangles(up).filter(move |t| {
            known
                .iter()
                .zip(t.labels)
                .all(|(k, l)| k.is_none_or(|k| k == l))
        })
    }

    /// The unique valid triangle with the two given labels, by slot.
    pub fn complete(&self, up: bool, known: [Option<Label>; 3]) -> Option<Tri> {
        let mut it = self.matching(up, known);
        let first = it.next();
        debug_assert!(it.next().is_none() || known.iter().filter(|k| k.is_some()).count() < 2);
        first
    }

    /// Two-side completion in the right-side-up frame rotated by
    /// `orientation`; returns `None` unless exactly two sides are given or
    /// no piece fits.
    ///
    /// ```
    /// use twostep::pieces::{tables, Orientation, TriSide};
    /// use twostep::Label;
    /// let t = tables()
    ///     .complete_triangle(Orientation::UPRIGHT, &[(TriSide::Left, Label::ONE), (TriSide::Right, Label::ZERO)])
    ///     .unwrap();
    /// assert_eq!(t.horizontal.value(), 3);
    /// ```
    pub fn complete_triangle(
        &self,
        orientation: Orientation,
        known: &[(TriSide, Label)],
    ) -> Option<TrianglePiece> {
        if known.len() != 2 || known[0].0 == known[1].0 {
            return None;
        }
        let placed = Tri::up([Label::ZERO; 3]).rotate(orientation.sixths());
        let mut slots = [None; 3];
        for &(side, l) in known {
            let n = side.normal().rotate(orientation.sixths());
            slots[placed.slot(n)?] = Some(l);
        }
        let t = self.complete(placed.up, slots)?;
        let canon = t.rotate(-orientation.sixths());
        Some(TrianglePiece {
            right: canon.labels[0],
            left: canon.labels[1],
            horizontal: canon.labels[2],
            orientation,
        })
    }

    /// Checks the structural facts the tables must satisfy. An empty
    /// result means the transcription is consistent.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let mut seen = BTreeSet::new();
        for &(b, l, r) in &self.triangles {
            let base = Tri::from_blr(b, l, r);
            let orbit: BTreeSet<Tri> = [0, 2, 4].iter().map(|&k| base.rotate(k)).collect();
            if orbit.iter().any(|t| seen.contains(t)) {
                bad.push(format!("triangle {b}{l}{r} repeats a rotation of another entry"));
            }
            seen.extend(orbit);
        }
        if self.triangles.len() != 8 {
            bad.push(format!("expected 8 triangles, found {}", self.triangles.len()));
        }
        let pairs: BTreeSet<_> = self.rhombi.iter().collect();
        if pairs.len() != self.rhombi.len() {
            bad.push("rhombus table has a repeated entry".into());
        }
        if self.rhombi.len() != 8 {
            bad.push(format!("expected 8 rhombi, found {}", self.rhombi.len()));
        }
        for &(s, bs) in &self.rhombi {
            if s == bs {
                bad.push(format!("rhombus {s}{bs} has equal labels"));
            }
        }
        for l in Label::ALL {
            if !self.triangles.iter().any(|&(a, b, c)| a == l || b == l || c == l) {
                bad.push(format!("label {l} appears on no triangle"));
            }
        }
        let lemma = lemma_violations(self);
        if let Some(v) = lemma.first() {
            bad.push(format!("{} counterexamples to the three-triangle rule, e.g. {v}", lemma.len()));
        }
        for up in [true, false] {
            for i in 0..3 {
                for x in Label::ALL {
                    for y in Label::ALL {
                        let mut known = [None; 3];
                        known[i] = Some(x);
                        known[(i + 1) % 3] = Some(y);
                        let n = self.matching(up, known).count();
                        if n > 1 {
                            bad.push(format!("completion of {known:?} (up={up}) is not unique"));
                        }
                    }
                }
            }
        }
        for up in [true, false] {
            for t in self.all_triangles(up) {
                if !self.triangle_valid(t.dual()) {
                    bad.push(format!("dual of {t} is not valid"));
                }
            }
        }
        for (a, b) in self.rhombus_pairs() {
            let r = Rhomb { class: 0, a, b };
            if !self.rhombus_valid(r.dual()) {
                bad.push(format!("dual of rhombus {b}{a} is not valid"));
            }
        }
        bad
    }
}

fn lemma_violations(t: &PieceTables) -> Vec<String> {
    let mut out = Vec::new();
    let ok = |a: Label, b: Label, c: Label| t.triangle_valid(Tri::up([a, b, c]));
    for a in Label::ALL {
        for b in Label::ALL {
            for c in Label::ALL {
                for x in Label::ALL.into_iter().filter(|&x| x != a) {
                    if !ok(x, b, c) {
                        continue;
                    }
                    for y in Label::ALL.into_iter().filter(|&y| y != b) {
                        if !ok(a, y, c) {
                            continue;
                        }
                        for z in Label::ALL.into_iter().filter(|&z| z != c) {
                            if ok(a, b, z) {
                                out.push(format!("a={a} b={b} c={c} x={x} y={y} z={z}"));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

static TABLES: OnceLock<PieceTables> = OnceLock::new();

/// The process-wide tables. Defaults to [`PieceTables::standard`] unless
/// [`install`] ran first.
pub fn tables() -> &'static PieceTables {
    TABLES.get_or_init(PieceTables::standard)
}

/// Installs validated tables for the whole process. Fails if the tables
/// are inconsistent or if tables were already in use.
pub fn install(t: PieceTables) -> Result<()> {
    let report = t.validate();
    if !report.is_empty() {
        return Err(Error::Tables(report.join("; ")));
    }
    TABLES
        .set(t)
        .map_err(|_| Error::Tables("piece tables already initialized".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: u8) -> Label {
        Label::new(v).unwrap()
    }

    #[test]
    fn standard_tables_validate() {
        assert_eq!(PieceTables::standard().validate(), Vec::<String>::new());
    }

    #[test]
    fn missing_or_duplicated_entries_are_reported() {
        let std = PieceTables::standard();
        let mut tri = std.triangles().to_vec();
        tri.remove(0);
        assert!(!PieceTables::new(tri, std.rhombi().to_vec()).validate().is_empty());
        let mut tri = std.triangles().to_vec();
        tri.push((l(1), l(0), l(3)));
        assert!(!PieceTables::new(tri, std.rhombi().to_vec()).validate().is_empty());
    }

    #[test]
    fn fixture_round_trips() {
        let std = PieceTables::standard();
        assert_eq!(PieceTables::parse(&std.to_text()).unwrap(), std);
        assert!(PieceTables::parse("triangle 0 0").is_err());
        assert!(PieceTables::parse("rhombus 0 9").is_err());
    }

    #[test]
    fn completion_examples() {
        let t = PieceTables::standard();
        let up = Orientation::UPRIGHT;
        let p = t
            .complete_triangle(up, &[(TriSide::Left, l(0)), (TriSide::Right, l(0))])
            .unwrap();
        assert_eq!((p.horizontal, p.left, p.right), (l(0), l(0), l(0)));
        let p = t
            .complete_triangle(up, &[(TriSide::Left, l(1)), (TriSide::Right, l(0))])
            .unwrap();
        assert_eq!(p.horizontal, l(3));
        assert!(t
            .complete_triangle(up, &[(TriSide::Left, l(6)), (TriSide::Right, l(7))])
            .is_none());
        assert!(t.complete_triangle(up, &[(TriSide::Left, l(0))]).is_none());
    }

    #[test]
    fn rotations_and_duals() {
        let t = Tri::from_blr(l(3), l(1), l(0));
        assert_eq!(t.rotate(0), t);
        assert_eq!(t.rotate(3).rotate(3), t);
        assert_eq!(t.rotate(6), t);
        assert_eq!(t.dual().dual(), t);
        assert_eq!(t.dual(), Tri::from_blr(l(4), l(2), l(1)));
        let r = Rhomb::vertical(l(0), l(1));
        assert_eq!(r.rotate(3), r);
        assert_eq!(r.dual(), Rhomb::vertical(l(1), l(2)));
        // one sixth-turn moves the backslash label onto normals 1 and 4
        let p = RhombusPiece { slash: l(0), backslash: l(1), orientation: Orientation::UPRIGHT };
        let q = p.rotate(1).placed();
        assert_eq!(q.label_at(Normal::new(1)), Some(l(1)));
        assert_eq!(q.label_at(Normal::new(3)), Some(l(0)));
        assert_eq!(q.label_at(Normal::new(2)), None);
    }

    #[test]
    fn paper_names_read_back() {
        let t = PieceTables::standard();
        assert_eq!(Tri::from_blr(l(3), l(1), l(0)).to_string(), "u310");
        // u103 and u052 are rotations of 310 and 520
        assert!(t.triangle_valid(Tri::from_blr(l(1), l(0), l(3))));
        assert!(t.triangle_valid(Tri::from_blr(l(0), l(5), l(2))));
        assert!(t.triangle_valid(Tri::from_blr(l(7), l(4), l(0))));
        assert!(!t.triangle_valid(Tri::from_blr(l(7), l(5), l(3))));
    }
}
