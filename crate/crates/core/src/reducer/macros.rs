//! Short compositions of primitive moves that remove one occurrence of a
//! color: the slide (a push followed by a triangle move) and the clasp (two
//! pushes and a triangle move). Each generator enumerates the few ways the
//! composition can be anchored and returns the ones that apply.

use std::collections::BTreeSet;

use crate::coloring::Color;
use crate::diagram::{CrossingId, Face, Port, SemiArcId};
use crate::moves::{ColoredDiagram, Move};

#[derive(Clone, Debug)]
pub struct Candidate {
    pub moves: Vec<Move>,
    pub result: ColoredDiagram,
}

/// Colors a composition may not leave behind. The color being removed may
/// show up midway, as long as a later slide takes it away again.
#[derive(Clone, Debug)]
pub struct Avoid {
    pub c: Color,
    pub forbidden: BTreeSet<Color>,
    pub p: u64,
}

impl Avoid {
    pub fn new(c: Color, forbidden: &[Color], p: u64) -> Self {
        Avoid { c, forbidden: forbidden.iter().copied().collect(), p }
    }

    fn bad(&self, x: i64) -> bool {
        let x = crate::coloring::modp::reduce(x, self.p);
        x == self.c || self.forbidden.contains(&x)
    }

    /// The slide of over color `a` across over color `b` along a `c` arc
    /// brings in `2a - b` and `2a - 2b + c`.
    pub fn slide_ok(&self, a: Color, b: Color) -> bool {
        let (a, b, c) = (a as i64, b as i64, self.c as i64);
        a != b && !self.bad(2 * a - b) && !self.bad(2 * a - 2 * b + c)
    }

    /// No forbidden color on a semiarc at the given crossings.
    fn clean_at(&self, cd: &ColoredDiagram, xs: &[CrossingId]) -> bool {
        xs.iter()
            .filter(|&&x| cd.diagram.has_crossing(x))
            .flat_map(|&x| incident(cd, x))
            .all(|s| !self.forbidden.contains(&cd.color(s)))
    }
}

fn faces_at(cd: &ColoredDiagram, x: CrossingId) -> Vec<Face> {
    let d = &cd.diagram;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..4 {
        let face = d.face_of(Port::new(x, i));
        let key = face.darts.iter().min().copied();
        if seen.insert(key) {
            out.push(face);
        }
    }
    out
}

pub(crate) fn new_crossings(before: &ColoredDiagram, after: &ColoredDiagram) -> Vec<CrossingId> {
    after.diagram.crossing_ids().filter(|&x| !before.diagram.has_crossing(x)).collect()
}

fn incident(cd: &ColoredDiagram, x: CrossingId) -> Vec<SemiArcId> {
    let mut v: Vec<_> = (0..4).map(|i| cd.diagram.at(Port::new(x, i))).collect();
    v.dedup();
    v
}

fn over_semiarcs(cd: &ColoredDiagram, x: CrossingId) -> Vec<SemiArcId> {
    let mut v = vec![cd.diagram.at(Port::new(x, 1)), cd.diagram.at(Port::new(x, 3))];
    v.dedup();
    v
}

/// Every push leaving a semiarc of `top` above a semiarc of `bottom` through
/// a face they share: `top` pushed over, or `bottom` pushed under.
fn pushes_above(cd: &ColoredDiagram, top: &[SemiArcId], bottom: &[SemiArcId]) -> Vec<Move> {
    let d = &cd.diagram;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in top {
        let Some(ends) = d.semiarc_ends(s) else { continue };
        for start in ends {
            let face = d.face_of(start);
            for &dt in &face.darts {
                let t = d.at(dt);
                if t == s || !bottom.contains(&t) {
                    continue;
                }
                let (ss, ts) = (d.dart_side(start), d.dart_side(dt));
                for m in [Move::R2PushOver { strand: ss, target: ts }, Move::R2PushUnder { strand: ts, target: ss }] {
                    if seen.insert(m) && cd.applicable(&m).unwrap_or(false) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Triangle moves on faces through every crossing of `must` and at least one
/// crossing of `any_of` (unless it is empty).
pub(crate) fn r3_through(cd: &ColoredDiagram, must: &[CrossingId], any_of: &[CrossingId]) -> Vec<Move> {
    let d = &cd.diagram;
    let Some(&x) = must.first() else { return Vec::new() };
    let mut out = Vec::new();
    for face in faces_at(cd, x) {
        if face.len() != 3 {
            continue;
        }
        let xs: Vec<_> = face.darts.iter().map(|p| p.crossing).collect();
        if !must.iter().all(|m| xs.contains(m)) || !(any_of.is_empty() || any_of.iter().any(|a| xs.contains(a))) {
            continue;
        }
        let m = Move::R3Slide { side: d.dart_side(face.darts[0]) };
        if cd.applicable(&m).unwrap_or(false) {
            out.push(m);
        }
    }
    out
}

/// A semiarc of `top` is pushed across a semiarc of `bottom`, then the
/// triangle through `anchors` and a new crossing is slid.
pub fn slides(cd: &ColoredDiagram, top: &[SemiArcId], bottom: &[SemiArcId], anchors: &[CrossingId]) -> Vec<Candidate> {
    let mut out = Vec::new();
    for push in pushes_above(cd, top, bottom) {
        let Ok(cd1) = cd.apply(&push) else { continue };
        let fresh = new_crossings(cd, &cd1);
        let r3s = r3_through(&cd1, anchors, &fresh);
        let mut cd1 = Some(cd1);
        for (k, r3) in r3s.iter().enumerate() {
            let mut result =
                if k + 1 == r3s.len() { cd1.take().expect("kept for the last") } else { cd1.clone().expect("kept") };
            if result.apply_mut(r3).is_ok() {
                out.push(Candidate { moves: vec![push, *r3], result });
            }
        }
    }
    out
}

/// Slides of the over strand at `p` across the over strand at `q`, for an
/// arc running under `p` and `q` with no crossing in between.
pub fn arc_slides(cd: &ColoredDiagram, p: CrossingId, q: CrossingId) -> Vec<Candidate> {
    slides(cd, &over_semiarcs(cd, p), &over_semiarcs(cd, q), &[p, q])
}

/// Slides of the over strand at a neighbor `y` of `x` across `x`.
pub fn neighbor_slides(cd: &ColoredDiagram, x: CrossingId, y: CrossingId) -> Vec<Candidate> {
    slides(cd, &over_semiarcs(cd, y), &incident(cd, x), &[x, y])
}

/// The clasp at `x` using the under semiarc at port `i`: that semiarc is
/// pushed over an adjacent over semiarc, its fingertip over the opposite
/// under semiarc, and the triangle through `x` is slid.
pub fn clasps(cd: &ColoredDiagram, x: CrossingId, i: u8) -> Vec<Candidate> {
    let d = &cd.diagram;
    let g = d.at(Port::new(x, i));
    let mut out = Vec::new();
    for k in [i + 1, i + 3] {
        let kr = d.at(Port::new(x, k));
        for p1 in pushes_above(cd, &[g], &[kr]) {
            let Ok(cd1) = cd.apply(&p1) else { continue };
            let fresh1 = new_crossings(cd, &cd1);
            let finger: Vec<_> = fresh1.iter().flat_map(|&y| incident(&cd1, y)).collect();
            let h = cd1.diagram.at(Port::new(x, i + 2));
            for p2 in pushes_above(&cd1, &finger, &[h]) {
                let Ok(cd2) = cd1.apply(&p2) else { continue };
                let mut fresh = fresh1.clone();
                fresh.extend(new_crossings(&cd1, &cd2));
                for r3 in r3_through(&cd2, &[x], &fresh) {
                    if let Ok(result) = cd2.apply(&r3) {
                        out.push(Candidate { moves: vec![p1, p2, r3], result });
                    }
                }
            }
        }
    }
    out
}

/// For an arc colored `c` under `p` and `q` with equal over colors: a clasp
/// at `p` using its other under semiarc, followed by a slide removing a
/// remaining `c` semiarc next to the new crossings.
pub fn clasp_then_slides(cd: &ColoredDiagram, p: CrossingId, e: SemiArcId, avoid: &Avoid) -> Vec<Candidate> {
    let d = &cd.diagram;
    let mut out = Vec::new();
    for i in [0u8, 2] {
        if d.at(Port::new(p, i)) == e {
            continue;
        }
        for first in clasps(cd, p, i) {
            out.extend(then_arc_slides(cd, first, avoid));
        }
    }
    out
}

/// A strand at a crossing next to `x` slid across `x`, then a slide
/// removing a `c` semiarc next to the new crossings.
pub fn reflect_then_slides(cd: &ColoredDiagram, x: CrossingId, avoid: &Avoid) -> Vec<Candidate> {
    let d = &cd.diagram;
    let mut ys: Vec<_> = (0..4).map(|i| d.other_end(Port::new(x, i)).crossing).filter(|&y| y != x).collect();
    ys.sort();
    ys.dedup();
    let mut out = Vec::new();
    for y in ys {
        for first in neighbor_slides(cd, x, y) {
            out.extend(then_arc_slides(cd, first, avoid));
        }
    }
    out
}

/// Follows `first` with a slide removing a `c` semiarc next to the crossings
/// it created. Skips `first` if it left a forbidden color next to them.
pub(crate) fn then_arc_slides(cd: &ColoredDiagram, first: Candidate, avoid: &Avoid) -> Vec<Candidate> {
    let c = avoid.c;
    let mid = &first.result;
    let fresh = new_crossings(cd, mid);
    let mut out = Vec::new();
    if !avoid.clean_at(mid, &fresh) {
        return out;
    }
    let mut near: Vec<SemiArcId> =
        fresh.iter().flat_map(|&x| incident(mid, x)).filter(|&s| mid.color(s) == c).collect();
    near.sort();
    near.dedup();
    for s in near {
        let Some([u, v]) = mid.diagram.semiarc_ends(s) else { continue };
        if u.is_over() || v.is_over() || u.crossing == v.crossing {
            continue;
        }
        for (x, y) in [(u.crossing, v.crossing), (v.crossing, u.crossing)] {
            if !avoid.slide_ok(mid.over_color(x), mid.over_color(y)) {
                continue;
            }
            for second in arc_slides(mid, x, y) {
                let mut moves = first.moves.clone();
                moves.extend(second.moves);
                out.push(Candidate { moves, result: second.result });
            }
        }
    }
    out
}

/// Single bigon removals and triangle slides at `x`.
pub fn local_primitives(cd: &ColoredDiagram, x: CrossingId) -> Vec<Candidate> {
    let d = &cd.diagram;
    let mut moves = Vec::new();
    for face in faces_at(cd, x) {
        let side = d.dart_side(face.darts[0]);
        match face.len() {
            2 => moves.push(Move::R2Remove { side }),
            3 => moves.push(Move::R3Slide { side }),
            _ => {}
        }
    }
    moves.into_iter().filter_map(|m| cd.apply(&m).ok().map(|result| Candidate { moves: vec![m], result })).collect()
}

/// Everything the search may try around `x`, in a fixed order.
pub fn around(cd: &ColoredDiagram, x: CrossingId) -> Vec<Candidate> {
    let d = &cd.diagram;
    let mut out = Vec::new();
    let (u0, o, u2) = cd.crossing_colors(x);
    if u0 != o || u2 != o {
        out.extend(clasps(cd, x, 0));
        out.extend(clasps(cd, x, 2));
    }
    let mut ys: Vec<_> = (0..4).map(|i| d.other_end(Port::new(x, i)).crossing).filter(|&y| y != x).collect();
    ys.sort();
    ys.dedup();
    for y in ys {
        out.extend(neighbor_slides(cd, x, y));
        out.extend(neighbor_slides(cd, y, x));
    }
    out.extend(local_primitives(cd, x));
    out
}
