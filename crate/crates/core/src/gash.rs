//! Directed gashes as abstract objects: a direction and two labels.
//!
//! A directed gash points toward the side carrying its *original* label;
//! the label on the other side is the *new* label.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::label::Label;
use crate::lattice::Normal;
use crate::pieces::{tables, Tri};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedGash {
    pub dir: Normal,
    pub orig: Label,
    pub new: Label,
}

impl DirectedGash {
    pub fn new(dir: Normal, orig: Label, new: Label) -> Result<DirectedGash> {
        if orig == new {
            return Err(Error::BadGash(format!("both labels are {orig}")));
        }
        Ok(DirectedGash { dir, orig, new })
    }

    /// All 336 directed gashes.
    pub fn all() -> Vec<DirectedGash> {
        let mut out = Vec::with_capacity(336);
        for dir in Normal::all() {
            for orig in Label::ALL {
                for new in Label::ALL {
                    if orig != new {
                        out.push(DirectedGash { dir, orig, new });
                    }
                }
            }
        }
        out
    }

    pub fn opposite(self) -> DirectedGash {
        DirectedGash { orig: self.new, new: self.orig, ..self }
    }

    pub fn rotate(self, sixths: i32) -> DirectedGash {
        DirectedGash { dir: self.dir.rotate(sixths), ..self }
    }

    pub fn dual(self) -> DirectedGash {
        DirectedGash { dir: self.dir.reflect(), orig: self.orig.dual(), new: self.new.dual() }
    }

    /// Gashes immediately reachable by propagating across one triangle.
    pub fn neighbors(self) -> Vec<DirectedGash> {
        let back = self.dir.opposite();
        let up = back.index() % 2 == 0;
        let mut out = BTreeSet::new();
        for q in tables().all_triangles(up) {
            let g = q.slot(back).unwrap();
            if q.labels[g] != self.orig {
                continue;
            }
            if let Some((q2, m)) = replacement(q, g, self.new) {
                out.insert(DirectedGash { dir: q.normals()[m], orig: q.labels[m], new: q2.labels[m] });
            }
        }
        out.into_iter().collect()
    }

    /// The class of this gash.
    pub fn class(self) -> &'static BTreeSet<DirectedGash> {
        &classes().by_gash[&self]
    }

    pub fn is_opposite_class(self, other: DirectedGash) -> bool {
        self.opposite().class().contains(&other)
    }
}

/// The piece replacing triangle `q` when slot `g` must carry `new`, and
/// the slot of the new gash. At most one exists.
pub fn replacement(q: Tri, g: usize, new: Label) -> Option<(Tri, usize)> {
    let mut found = None;
    for k in (0..3).filter(|&k| k != g) {
        let mut known = [None; 3];
        known[g] = Some(new);
        known[k] = Some(q.labels[k]);
        for q2 in tables().matching(q.up, known) {
            let m = 3 - g - k;
            debug_assert!(found.is_none(), "two replacements for {q}");
            found = Some((q2, m));
        }
    }
    found
}

/// Name in the form `gashDXY`: `X` original, `Y` new, and the direction
/// is normal `D + 4` (so `gash1..` points south-east).
impl fmt::Display for DirectedGash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gash{}{}{}", (self.dir.index() + 2) % 6, self.orig, self.new)
    }
}

impl FromStr for DirectedGash {
    type Err = Error;
    fn from_str(s: &str) -> Result<DirectedGash> {
        let bad = || Error::Parse(format!("{s:?} is not a gash name"));
        let d = s.strip_prefix("gash").ok_or_else(bad)?.as_bytes();
        if d.len() != 3 || !d.iter().all(u8::is_ascii_digit) || d[0] > b'5' {
            return Err(bad());
        }
        let dir = Normal::new(((d[0] - b'0') + 4) as i32);
        DirectedGash::new(dir, Label::new(d[1] - b'0')?, Label::new(d[2] - b'0')?)
    }
}

pub struct Classes {
    by_gash: BTreeMap<DirectedGash, &'static BTreeSet<DirectedGash>>,
    all: Vec<&'static BTreeSet<DirectedGash>>,
}

impl Classes {
    pub fn all(&self) -> &[&'static BTreeSet<DirectedGash>] {
        &self.all
    }
}

/// Partition of the 336 gashes into classes, computed from the tables.
pub fn classes() -> &'static Classes {
    static C: OnceLock<Classes> = OnceLock::new();
    C.get_or_init(|| {
        let mut by_gash = BTreeMap::new();
        let mut all = Vec::new();
        for g in DirectedGash::all() {
            if by_gash.contains_key(&g) {
                continue;
            }
            let mut seen = BTreeSet::from([g]);
            let mut stack = vec![g];
            while let Some(h) = stack.pop() {
                for k in h.neighbors() {
                    if seen.insert(k) {
                        stack.push(k);
                    }
                }
            }
            let leaked: &'static BTreeSet<DirectedGash> = Box::leak(Box::new(seen));
            for &h in leaked {
                by_gash.insert(h, leaked);
            }
            all.push(leaked);
        }
        Classes { by_gash, all }
    })
}

/// Class representative up to rotation and opposite: the least element of
/// the orbit of the class.
pub fn class_shape(g: DirectedGash) -> BTreeSet<DirectedGash> {
    let mut best: Option<BTreeSet<DirectedGash>> = None;
    for k in 0..6 {
        for opp in [false, true] {
            let set: BTreeSet<DirectedGash> = g
                .class()
                .iter()
                .map(|h| {
                    let h = h.rotate(k);
                    if opp {
                        h.opposite()
                    } else {
                        h
                    }
                })
                .collect();
            if best.as_ref().is_none_or(|b| set < *b) {
                best = Some(set);
            }
        }
    }
    best.unwrap()
}

/// The union of classes whose right gashes define the forward bijection.
pub fn forward_gashes() -> &'static BTreeSet<DirectedGash> {
    static G: OnceLock<BTreeSet<DirectedGash>> = OnceLock::new();
    G.get_or_init(|| {
        ["gash110", "gash120", "gash140", "gash210", "gash220", "gash240"]
            .iter()
            .flat_map(|n| n.parse::<DirectedGash>().unwrap().class().iter().copied())
            .collect()
    })
}

/// The forward set rotated by 180 degrees.
pub fn backward_gashes() -> &'static BTreeSet<DirectedGash> {
    static G: OnceLock<BTreeSet<DirectedGash>> = OnceLock::new();
    G.get_or_init(|| forward_gashes().iter().map(|g| g.rotate(3)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> DirectedGash {
        s.parse().unwrap()
    }

    fn set(names: &[&str]) -> BTreeSet<DirectedGash> {
        names.iter().map(|n| g(n)).collect()
    }

    #[test]
    fn names_round_trip() {
        for h in DirectedGash::all() {
            assert_eq!(g(&h.to_string()), h);
        }
        assert_eq!(g("gash110").dir, Normal::SE);
        assert!("gash611".parse::<DirectedGash>().is_err());
        assert!("gash100".parse::<DirectedGash>().is_err());
    }

    #[test]
    fn reachability_is_symmetric() {
        for h in DirectedGash::all() {
            for k in h.neighbors() {
                assert!(k.neighbors().contains(&h), "{h} -> {k}");
            }
        }
    }

    #[test]
    fn listed_classes() {
        assert_eq!(*g("gash110").class(), set(&["gash030", "gash110", "gash165", "gash213", "gash245", "gash346"]));
        assert_eq!(*g("gash120").class(), set(&["gash050", "gash061", "gash120", "gash217", "gash225"]));
        assert_eq!(*g("gash140").class(), set(&["gash070", "gash140", "gash223", "gash326"]));
        assert_eq!(
            *g("gash121").class(),
            set(&["gash573", "gash041", "gash053", "gash121", "gash157", "gash224"])
        );
        for s in ["gash160", "gash151", "gash172", "gash143", "gash163", "gash174", "gash176"] {
            assert_eq!(g(s).class().len(), 1, "{s}");
        }
    }

    #[test]
    fn classes_respect_symmetries() {
        for h in DirectedGash::all() {
            let opp: BTreeSet<_> = h.class().iter().map(|k| k.opposite()).collect();
            assert_eq!(opp, *h.opposite().class());
            let rot: BTreeSet<_> = h.class().iter().map(|k| k.rotate(1)).collect();
            assert_eq!(rot, *h.rotate(1).class());
            let dual: BTreeSet<_> = h.class().iter().map(|k| k.dual()).collect();
            assert_eq!(dual, *h.dual().class());
        }
    }

    #[test]
    fn partition_shapes() {
        let total: usize = classes().all().iter().map(|c| c.len()).sum();
        assert_eq!(total, 336);
        let shapes: BTreeSet<BTreeSet<DirectedGash>> = DirectedGash::all().into_iter().map(class_shape).collect();
        let mut sizes: Vec<usize> = shapes.iter().map(|s| s.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 1, 1, 1, 1, 1, 4, 5, 6, 6]);
    }
}
