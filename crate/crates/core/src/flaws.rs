//! Temporary puzzle pieces and scabs, derived by search over the piece
//! tables.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gash::DirectedGash;
use crate::label::Label;
use crate::lattice::Normal;
use crate::pieces::{tables, Rhomb, Tri, TriSide};

/// Resolutions of a right-side-up temporary triangle, indexed by the
/// preserved side in the order left, right, horizontal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Temporary {
    pub piece: Tri,
    pub resolutions: [Tri; 3],
}

impl Temporary {
    pub fn preserved(k: usize) -> TriSide {
        TriSide::ALL[k]
    }

    /// Gashes of resolution `k`, directed away from the piece.
    pub fn gashes(&self, k: usize) -> [DirectedGash; 2] {
        let keep = Self::preserved(k).normal();
        let r = self.resolutions[k];
        let ns: Vec<Normal> = self.piece.normals().into_iter().filter(|&n| n != keep).collect();
        [ns[0], ns[1]].map(|n| DirectedGash {
            dir: n,
            orig: self.piece.label_at(n).unwrap(),
            new: r.label_at(n).unwrap(),
        })
    }
}

fn valid(labels: [Label; 3]) -> bool {
    tables().triangle_valid(Tri::up(labels))
}

/// Solutions of the defining conditions for `t = up([x, y, z])`, as
/// `(r1, r2, r3)` with `r1` keeping `x`, `r2` keeping `z`, `r3` keeping
/// `y`. Primed labels must differ from the originals.
fn solutions(t: Tri) -> BTreeSet<(Tri, Tri, Tri)> {
    let [x, y, z] = t.labels;
    let mut out = BTreeSet::new();
    let others = |a: Label| Label::ALL.into_iter().filter(move |&b| b != a);
    for x1 in others(x) {
        for y1 in others(y) {
            for z1 in others(z) {
                if !valid([x1, y1, z1]) {
                    continue;
                }
                for x2 in others(x) {
                    for y2 in others(y) {
                        for z2 in others(z) {
                            let rs = ([x, y1, z2], [x1, y2, z], [x2, y, z1]);
                            if valid([x2, y2, z2]) && valid(rs.0) && valid(rs.1) && valid(rs.2) {
                                out.insert((Tri::up(rs.0), Tri::up(rs.1), Tri::up(rs.2)));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every right-side-up temporary triangle, in all three upright
/// rotations.
pub fn temporary_pieces() -> &'static [Temporary] {
    static T: OnceLock<Vec<Temporary>> = OnceLock::new();
    T.get_or_init(|| {
        let mut out = Vec::new();
        for x in Label::ALL {
            for y in Label::ALL {
                for z in Label::ALL {
                    let t = Tri::up([x, y, z]);
                    let sols = solutions(t);
                    let r1: BTreeSet<Tri> = sols.iter().map(|s| s.0).collect();
                    let r2: BTreeSet<Tri> = sols.iter().map(|s| s.1).collect();
                    let r3: BTreeSet<Tri> = sols.iter().map(|s| s.2).collect();
                    if sols.is_empty() {
                        continue;
                    }
                    assert!(
                        r1.len() == 1 && r2.len() == 1 && r3.len() == 1,
                        "temporary {t} has several resolutions"
                    );
                    let (r1, r2, r3) = *sols.first().unwrap();
                    out.push(Temporary { piece: t, resolutions: [r3, r1, r2] });
                }
            }
        }
        out
    })
}

/// Looks up a placed triangle (either parity). Returns the upright
/// rotation `k` (in `0..6`, smallest first) with `piece.rotate(-k)` in
/// the table, and the table entry.
pub fn find_temporary(t: Tri) -> Option<(i32, Temporary)> {
    let base = if t.up { 0 } else { 1 };
    [base, base + 2, base + 4].into_iter().find_map(|k| {
        let canon = t.rotate(-k);
        temporary_pieces().iter().find(|e| e.piece == canon).map(|e| (k, *e))
    })
}

/// The six temporary triangles up to rotation, as `(bottom, left, right)`.
pub fn temporary_shapes() -> BTreeSet<(u8, u8, u8)> {
    let mut out = BTreeSet::new();
    for e in temporary_pieces() {
        let orbit = [0, 2, 4].map(|k| {
            let (b, l, r) = e.piece.rotate(k).blr();
            (b.value(), l.value(), r.value())
        });
        out.insert(*orbit.iter().min().unwrap());
    }
    out
}

/// A scab in the vertical frame: the up triangle on top of the down
/// triangle, meeting along a horizontal edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scab {
    pub top: Tri,
    pub bottom: Tri,
}

/// The resolution of a scab: the equivariant piece and its gashes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScabResolution {
    pub piece: Rhomb,
    /// Outward normals of the two gashed sides.
    pub gashed: [Normal; 2],
}

impl Scab {
    /// Outer labels by outward normal `0, 2, 3, 5`.
    pub fn outer(self) -> [(Normal, Label); 4] {
        let n = Normal::new;
        [
            (n(0), self.top.label_at(n(0)).unwrap()),
            (n(2), self.top.label_at(n(2)).unwrap()),
            (n(3), self.bottom.label_at(n(3)).unwrap()),
            (n(5), self.bottom.label_at(n(5)).unwrap()),
        ]
    }

    pub fn rotate180(self) -> Scab {
        Scab { top: self.bottom.rotate(3), bottom: self.top.rotate(3) }
    }

    pub fn is_scab(self) -> bool {
        self.top.label_at(Normal::S) == self.bottom.label_at(Normal::N)
            && tables().triangle_valid(self.top)
            && tables().triangle_valid(self.bottom)
            && self.bottom != self.top.rotate(3)
    }

    /// Equivariant pieces agreeing with the scab on two sides meeting at
    /// an obtuse angle.
    pub fn resolutions(self) -> Vec<ScabResolution> {
        let o = self.outer();
        let at = |k: i32| o.iter().find(|(n, _)| *n == Normal::new(k)).unwrap().1;
        let mut out = Vec::new();
        // left vertex joins normals 2 and 3, the right vertex 0 and 5;
        // a sits on normals 0 and 3, b on 2 and 5
        for (a, b, gashed) in [(at(3), at(2), [0, 5]), (at(0), at(5), [2, 3])] {
            let q = Rhomb { class: 0, a, b };
            if tables().rhombus_valid(q) && gashed.iter().any(|&k| q.label_at(Normal::new(k)) != Some(at(k))) {
                out.push(ScabResolution { piece: q, gashed: gashed.map(Normal::new) });
            }
        }
        out
    }

    /// The unique resolution; an error signals an inconsistent table.
    pub fn resolution(self) -> Result<ScabResolution> {
        match self.resolutions().as_slice() {
            [r] => Ok(*r),
            rs => Err(Error::Tables(format!("scab {self:?} has {} resolutions", rs.len()))),
        }
    }

    /// The two directed gashes of the resolution.
    pub fn gashes(self) -> Result<[DirectedGash; 2]> {
        let r = self.resolution()?;
        let o = self.outer();
        let label = |n: Normal| o.iter().find(|(m, _)| *m == n).unwrap().1;
        Ok(r.gashed.map(|n| DirectedGash { dir: n, orig: label(n), new: r.piece.label_at(n).unwrap() }))
    }
}

/// All vertical scabs (each rotation class appears twice, as `s` and its
/// 180 degree rotation).
pub fn vertical_scabs() -> Vec<Scab> {
    let mut out = Vec::new();
    for top in tables().all_triangles(true) {
        for bottom in tables().all_triangles(false) {
            let s = Scab { top, bottom };
            if s.is_scab() {
                out.push(s);
            }
        }
    }
    out
}

/// Scabs up to rotation.
pub fn scab_shapes() -> BTreeSet<Scab> {
    vertical_scabs().into_iter().map(|s| s.min(s.rotate180())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_temporaries() {
        let want: BTreeSet<(u8, u8, u8)> = [(3, 3, 3), (4, 4, 4), (5, 5, 5), (6, 4, 5), (7, 5, 3), (1, 7, 6)]
            .into_iter()
            .map(|(b, l, r)| {
                let t = Tri::from_blr(Label::new(b).unwrap(), Label::new(l).unwrap(), Label::new(r).unwrap());
                let orbit = [0, 2, 4].map(|k| {
                    let (b, l, r) = t.rotate(k).blr();
                    (b.value(), l.value(), r.value())
                });
                *orbit.iter().min().unwrap()
            })
            .collect();
        assert_eq!(temporary_shapes(), want);
        for e in temporary_pieces() {
            assert!(!tables().triangle_valid(e.piece));
        }
    }

    #[test]
    fn resolutions_keep_one_label_and_use_smaller_ones() {
        for e in temporary_pieces() {
            let [x, y, z] = e.piece.labels;
            let [r3, r1, r2] = e.resolutions;
            for (r, keep) in [(r1, 0), (r2, 2), (r3, 1)] {
                assert_eq!(r.labels[keep], e.piece.labels[keep]);
                assert!(r.labels.iter().all(|&l| l <= r.labels[keep]), "{r}");
            }
            assert!(r1.labels[1] != y && r2.labels[0] != x && r3.labels[2] != z);
        }
    }

    #[test]
    fn temporary_gashes_are_opposite() {
        for e in temporary_pieces() {
            for k in 0..3 {
                let [g, h] = e.gashes(k);
                assert!(g.is_opposite_class(h), "{} {k}", e.piece);
            }
        }
    }

    #[test]
    fn seventeen_scabs_with_unique_resolutions() {
        let shapes = scab_shapes();
        assert_eq!(shapes.len(), 17);
        for s in vertical_scabs() {
            let [g, h] = s.gashes().unwrap();
            assert!(g.is_opposite_class(h), "{s:?}");
        }
    }

    #[test]
    fn worked_scab() {
        let l = |v| Label::new(v).unwrap();
        let s = vertical_scabs()
            .into_iter()
            .find(|s| {
                let mut v = s.outer().map(|(_, x)| x.value());
                v.sort();
                v == [1, 3, 4, 6]
            })
            .expect("scab present");
        let r = s.resolution().unwrap();
        assert_eq!(BTreeSet::from([r.piece.a, r.piece.b]), BTreeSet::from([l(3), l(4)]));
    }
}
