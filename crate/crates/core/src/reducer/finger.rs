//! Fingers: a strand pushed face by face across the diagram until its tip
//! reaches a crossing, then passed over that crossing.
//!
//! Going over a semiarc colored `z` leaves `2y - z` on it; going under it
//! turns the finger color `y` into `2z - y`. Passing a finger colored `y`
//! over a crossing reflects all four of its colors through `y`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::macros::{new_crossings, r3_through, Candidate};
use crate::coloring::{modp, Color};
use crate::diagram::{CrossingId, Port, SemiArcId};
use crate::moves::{ColoredDiagram, Move};

/// A route for a finger: where it starts and which semiarcs it crosses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    /// Dart of the starting strand bounding the first face.
    pub start: Port,
    /// For each crossed semiarc: its dart in the face being left, and
    /// whether the finger goes over it.
    pub hops: Vec<(Port, bool)>,
    /// Finger color on arrival.
    pub color: Color,
}

struct Dual {
    face_of: HashMap<Port, usize>,
    faces: Vec<Vec<Port>>,
}

impl Dual {
    fn new(cd: &ColoredDiagram) -> Self {
        let faces: Vec<Vec<Port>> = cd.diagram.faces_unchecked().into_iter().map(|f| f.darts).collect();
        let mut face_of = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for &p in f {
                face_of.insert(p, i);
            }
        }
        Dual { face_of, faces }
    }
}

/// Routes, shortest first, ending in a corner face of `x` with a finger
/// color in `wanted`. Colors in `bad` may not appear on any new semiarc.
/// Semiarcs colored `c` are never crossed or used as the starting strand,
/// semiarcs at `x` are never crossed and only its under semiarcs may start
/// a finger. At most `max_hops` semiarcs are crossed.
pub fn routes(
    cd: &ColoredDiagram,
    x: CrossingId,
    wanted: &BTreeSet<Color>,
    bad: &BTreeSet<Color>,
    c: Color,
    max_hops: usize,
    limit: usize,
) -> Vec<Route> {
    let d = &cd.diagram;
    let dual = Dual::new(cd);
    let targets: BTreeSet<usize> = (0..4).map(|i| dual.face_of[&Port::new(x, i)]).collect();
    let touches_x = |s: SemiArcId| d.semiarc_ends(s).is_some_and(|e| e.iter().any(|q| q.crossing == x));
    let over_at_x = |s: SemiArcId| [1, 3].iter().any(|&i| d.at(Port::new(x, i)) == s);
    let spec = RouteSpec { targets, wanted, bad, c, max_hops, limit };
    search(cd, &dual, &spec, &touches_x, &over_at_x)
}

/// Routes ending in a face on either side of the semiarc `e`.
pub fn routes_to(
    cd: &ColoredDiagram,
    e: SemiArcId,
    wanted: &BTreeSet<Color>,
    bad: &BTreeSet<Color>,
    c: Color,
    max_hops: usize,
    limit: usize,
) -> Vec<Route> {
    let d = &cd.diagram;
    let Some(ends) = d.semiarc_ends(e) else { return Vec::new() };
    let dual = Dual::new(cd);
    let targets: BTreeSet<usize> =
        ends.iter().flat_map(|&q| [dual.face_of[&q], dual.face_of[&d.other_end(q)]]).collect();
    let targets = targets.into_iter().filter(|&f| dual.faces[f].iter().any(|&q| d.at(q) == e)).collect();
    let spec = RouteSpec { targets, wanted, bad, c, max_hops, limit };
    search(cd, &dual, &spec, &|s| s == e, &|s| s == e)
}

struct RouteSpec<'a> {
    targets: BTreeSet<usize>,
    wanted: &'a BTreeSet<Color>,
    bad: &'a BTreeSet<Color>,
    c: Color,
    max_hops: usize,
    limit: usize,
}

fn search(
    cd: &ColoredDiagram,
    dual: &Dual,
    spec: &RouteSpec,
    blocked: &dyn Fn(SemiArcId) -> bool,
    no_start: &dyn Fn(SemiArcId) -> bool,
) -> Vec<Route> {
    let d = &cd.diagram;
    let p = cd.p;
    let (c, max_hops) = (spec.c, spec.max_hops);

    // Faces within reach, by distance to the target faces.
    let mut dist: HashMap<usize, usize> = spec.targets.iter().map(|&f| (f, 0)).collect();
    let mut queue: VecDeque<usize> = spec.targets.iter().copied().collect();
    while let Some(f) = queue.pop_front() {
        let k = dist[&f];
        if k == max_hops {
            continue;
        }
        for &dart in &dual.faces[f] {
            let g = dual.face_of[&d.other_end(dart)];
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(g) {
                e.insert(k + 1);
                queue.push_back(g);
            }
        }
    }

    struct State {
        face: usize,
        color: Color,
        start: Port,
        hops: Vec<(Port, bool)>,
        visited: Vec<usize>,
    }
    let mut frontier = Vec::new();
    let mut faces: Vec<_> = dist.keys().copied().collect();
    faces.sort_by_key(|f| (dist[f], *f));
    for f in faces {
        for &dart in &dual.faces[f] {
            let w = d.at(dart);
            let color = cd.color(w);
            if color == c || no_start(w) {
                continue;
            }
            frontier.push(State { face: f, color, start: dart, hops: Vec::new(), visited: vec![f] });
        }
    }

    let mut out = Vec::new();
    let mut seen: BTreeSet<(usize, Color, usize)> = BTreeSet::new();
    for _ in 0..=max_hops {
        let mut next = Vec::new();
        for st in frontier {
            if spec.targets.contains(&st.face) && spec.wanted.contains(&st.color) {
                out.push(Route { start: st.start, hops: st.hops.clone(), color: st.color });
                if out.len() >= spec.limit {
                    return out;
                }
            }
            if st.hops.len() == max_hops {
                continue;
            }
            for &dart in &dual.faces[st.face] {
                let t = d.at(dart);
                let z = cd.color(t);
                if z == c || blocked(t) || t == d.at(st.start) {
                    continue;
                }
                let g = dual.face_of[&d.other_end(dart)];
                if st.visited.contains(&g) || dist.get(&g).is_none_or(|&k| k > max_hops - st.hops.len() - 1) {
                    continue;
                }
                for over in [true, false] {
                    let (piece, color) = if over {
                        (modp::reflect(z, st.color, p), st.color)
                    } else {
                        (modp::reflect(st.color, z, p), modp::reflect(st.color, z, p))
                    };
                    if piece == c || spec.bad.contains(&piece) {
                        continue;
                    }
                    if !seen.insert((g, color, st.hops.len() + 1)) {
                        continue;
                    }
                    let mut hops = st.hops.clone();
                    hops.push((dart, over));
                    let mut visited = st.visited.clone();
                    visited.push(g);
                    next.push(State { face: g, color, start: st.start, hops, visited });
                }
            }
        }
        frontier = next;
    }
    out
}

fn sides(s: SemiArcId) -> [crate::diagram::Side; 2] {
    [crate::diagram::Side::new(s, false), crate::diagram::Side::new(s, true)]
}

/// The strand piece between the two crossings a push just made.
fn tip_after(before: &ColoredDiagram, after: &ColoredDiagram, over: bool) -> Option<SemiArcId> {
    let fresh = new_crossings(before, after);
    let n1 = *fresh.first()?;
    Some(after.diagram.at(Port::new(n1, if over { 3 } else { 2 })))
}

/// Pushes the finger along `route`; returns the moves, the diagram and the tip.
pub fn extend(cd: &ColoredDiagram, route: &Route) -> Option<(Vec<Move>, ColoredDiagram, SemiArcId)> {
    let mut cur = cd.clone();
    let mut tip = cd.diagram.at(route.start);
    let mut moves = Vec::new();
    for &(dart, over) in &route.hops {
        let target = cur.diagram.dart_side(dart);
        let m = sides(tip).into_iter().find_map(|strand| {
            let m = if over { Move::R2PushOver { strand, target } } else { Move::R2PushUnder { strand, target } };
            cur.applicable(&m).unwrap_or(false).then_some(m)
        })?;
        let next = cur.apply(&m).ok()?;
        tip = tip_after(&cur, &next, over)?;
        moves.push(m);
        cur = next;
    }
    Some((moves, cur, tip))
}

/// Passes the finger `tip` over `x`: over one semiarc at `x`, over the next
/// one, then the triangle through `x`.
pub fn pass_over(cd: &ColoredDiagram, x: CrossingId, tip: SemiArcId) -> Vec<Candidate> {
    let d = &cd.diagram;
    let mut at_x: Vec<SemiArcId> = (0..4).map(|i| d.at(Port::new(x, i))).collect();
    at_x.dedup();
    let mut out = Vec::new();
    for &t in &at_x {
        for strand in sides(tip) {
            for target in sides(t) {
                let m1 = Move::R2PushOver { strand, target };
                if !cd.applicable(&m1).unwrap_or(false) {
                    continue;
                }
                let Ok(cd1) = cd.apply(&m1) else { continue };
                let Some(tip1) = tip_after(cd, &cd1, true) else { continue };
                let fresh1 = new_crossings(cd, &cd1);
                let at_x1: Vec<SemiArcId> = (0..4).map(|i| cd1.diagram.at(Port::new(x, i))).collect();
                for &t2 in &at_x1 {
                    for strand2 in sides(tip1) {
                        for target2 in sides(t2) {
                            let m2 = Move::R2PushOver { strand: strand2, target: target2 };
                            if !cd1.applicable(&m2).unwrap_or(false) {
                                continue;
                            }
                            let Ok(cd2) = cd1.apply(&m2) else { continue };
                            let mut fresh = fresh1.clone();
                            fresh.extend(new_crossings(&cd1, &cd2));
                            for r3 in r3_through(&cd2, &[x], &fresh) {
                                if let Ok(result) = cd2.apply(&r3) {
                                    out.push(Candidate { moves: vec![m1, m2, r3], result });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// A finger along `route` passed over `x`.
pub fn finger_over(cd: &ColoredDiagram, x: CrossingId, route: &Route) -> Vec<Candidate> {
    let Some((moves, mid, tip)) = extend(cd, route) else { return Vec::new() };
    pass_over(&mid, x, tip)
        .into_iter()
        .map(|cand| {
            let mut all = moves.clone();
            all.extend(cand.moves);
            Candidate { moves: all, result: cand.result }
        })
        .collect()
}

/// A finger along `route` pushed over the semiarc `e`, splitting it.
pub fn finger_across(cd: &ColoredDiagram, e: SemiArcId, route: &Route) -> Vec<Candidate> {
    let Some((moves, mid, tip)) = extend(cd, route) else { return Vec::new() };
    let mut out = Vec::new();
    for strand in sides(tip) {
        for target in sides(e) {
            let m = Move::R2PushOver { strand, target };
            if !mid.applicable(&m).unwrap_or(false) {
                continue;
            }
            if let Ok(result) = mid.apply(&m) {
                let mut all = moves.clone();
                all.push(m);
                out.push(Candidate { moves: all, result });
            }
        }
    }
    out
}
