use std::collections::{BTreeMap, BTreeSet};

use super::{ColoredDiagram, Move, MoveError};
use crate::coloring::{modp, Color};
use crate::diagram::{CrossingId, Port, SemiArcId, Side};

/// A checked move, with the pattern data the rewrite needs.
pub(super) enum Plan {
    R1Add { s: SemiArcId, ends: Option<(Port, Port)>, over_first: bool },
    Splice { removed: BTreeSet<CrossingId> },
    Push { over: bool, s: SemiArcId, t: SemiArcId, a_s: Port, b_s: Port, a_t: Port, b_t: Port },
    R3 { darts: [Port; 3], arrivals: [Port; 3] },
}

fn not_applicable<T>(why: impl Into<String>) -> Result<T, MoveError> {
    Err(MoveError::NotApplicable(why.into()))
}

fn side_ports(cd: &ColoredDiagram, side: Side) -> Result<(Port, Port), MoveError> {
    let d = &cd.diagram;
    if !d.has_semiarc(side.semiarc) {
        return Err(MoveError::UnknownSemiArc(side.semiarc));
    }
    let Some([p, q]) = d.semiarc_ends(side.semiarc) else {
        return not_applicable("closed loop has no face anchor");
    };
    Ok(if side.reversed { (q, p) } else { (p, q) })
}

pub(super) fn plan(cd: &ColoredDiagram, m: &Move) -> Result<Plan, MoveError> {
    let d = &cd.diagram;
    match *m {
        Move::R1Add { side, over_first } => {
            if !d.has_semiarc(side.semiarc) {
                return Err(MoveError::UnknownSemiArc(side.semiarc));
            }
            let ends = d.semiarc_ends(side.semiarc).map(|[p, q]| if side.reversed { (q, p) } else { (p, q) });
            Ok(Plan::R1Add { s: side.semiarc, ends, over_first })
        }
        Move::R1Remove { crossing } => {
            if !d.has_crossing(crossing) {
                return Err(MoveError::UnknownCrossing(crossing));
            }
            let kinked = (0..4).any(|i| {
                let port = Port::new(crossing, i);
                let far = d.other_end(port);
                far == port.next_ccw() || far == port.prev_ccw()
            });
            if !kinked {
                return not_applicable(format!("{crossing} has no kink loop"));
            }
            Ok(Plan::Splice { removed: BTreeSet::from([crossing]) })
        }
        Move::R2PushOver { strand, target } | Move::R2PushUnder { strand, target } => {
            let (a_s, b_s) = side_ports(cd, strand)?;
            let (a_t, b_t) = side_ports(cd, target)?;
            if strand.semiarc == target.semiarc {
                return not_applicable("strand and target coincide");
            }
            if !d.face_of(a_s).darts.contains(&a_t) {
                return not_applicable("strand and target share no face");
            }
            let over = matches!(m, Move::R2PushOver { .. });
            Ok(Plan::Push { over, s: strand.semiarc, t: target.semiarc, a_s, b_s, a_t, b_t })
        }
        Move::R2Remove { side } => {
            let (dart, _) = side_ports(cd, side)?;
            let face = d.face_of(dart);
            if face.len() != 2 {
                return not_applicable(format!("face has {} sides, not 2", face.len()));
            }
            let (x, y) = (face.darts[0], face.darts[1]);
            if x.crossing == y.crossing {
                return not_applicable("bigon with a single crossing");
            }
            let arrive = d.other_end(x);
            if arrive.is_over() != x.is_over() {
                return not_applicable("bigon strands alternate");
            }
            Ok(Plan::Splice { removed: BTreeSet::from([x.crossing, y.crossing]) })
        }
        Move::R3Slide { side } => {
            let (dart, _) = side_ports(cd, side)?;
            let face = d.face_of(dart);
            if face.len() != 3 {
                return not_applicable(format!("face has {} sides, not 3", face.len()));
            }
            let darts = [face.darts[0], face.darts[1], face.darts[2]];
            let xs: BTreeSet<_> = darts.iter().map(|p| p.crossing).collect();
            if xs.len() != 3 {
                return not_applicable("triangle repeats a crossing");
            }
            let arrivals = darts.map(|p| d.other_end(p));
            let has_top = darts.iter().zip(&arrivals).any(|(p, q)| p.is_over() && q.is_over());
            if !has_top {
                return not_applicable("triangle has no strand over both its crossings");
            }
            Ok(Plan::R3 { darts, arrivals })
        }
    }
}

pub(super) fn execute(out: &mut ColoredDiagram, plan: Plan) -> Result<(), MoveError> {
    match plan {
        Plan::R1Add { s, ends, over_first } => r1_add(out, s, ends, over_first),
        Plan::Splice { removed } => splice_out(out, &removed)?,
        Plan::Push { over, s, t, a_s, b_s, a_t, b_t } => push(out, over, [s, t], [a_s, b_s, a_t, b_t]),
        Plan::R3 { darts, arrivals } => r3(out, darts, arrivals)?,
    }
    out.sync_capacity();
    Ok(())
}

fn r1_add(out: &mut ColoredDiagram, s: SemiArcId, ends: Option<(Port, Port)>, over_first: bool) {
    let x = out.color(s);
    let d = &mut out.diagram;
    let k = d.alloc_crossing();
    let lp = d.alloc_semiarc();
    // Compass ports of the new crossing: the strand arrives from W, leaves E
    // into the loop, returns from S and leaves N.
    let [n, w, s_, e] = if over_first { [0, 1, 2, 3] } else { [1, 2, 3, 0] }.map(|i| Port::new(k, i));
    d.connect(lp, e, s_);
    match ends {
        None => d.connect(s, w, n),
        Some((a, b)) => {
            let s2 = d.alloc_semiarc();
            d.connect(s, a, w);
            d.connect(s2, n, b);
            out.set_color(s2, x);
        }
    }
    out.set_color(lp, x);
}

fn push(out: &mut ColoredDiagram, over: bool, [s, t]: [SemiArcId; 2], [a_s, b_s, a_t, b_t]: [Port; 4]) {
    let p = out.p;
    let (y, x) = (out.color(s), out.color(t));
    let d = &mut out.diagram;
    let n1 = d.alloc_crossing();
    let n2 = d.alloc_crossing();
    let s_mid = d.alloc_semiarc();
    let s2 = d.alloc_semiarc();
    let t_mid = d.alloc_semiarc();
    let t2 = d.alloc_semiarc();
    let at = |c: CrossingId, i: u8| Port::new(c, i);
    if over {
        d.connect(s, a_s, at(n1, 1));
        d.connect(s_mid, at(n1, 3), at(n2, 3));
        d.connect(s2, at(n2, 1), b_s);
        d.connect(t, a_t, at(n2, 0));
        d.connect(t_mid, at(n2, 2), at(n1, 0));
        d.connect(t2, at(n1, 2), b_t);
        out.set_color(s_mid, y);
        out.set_color(s2, y);
        out.set_color(t_mid, modp::reflect(x, y, p));
        out.set_color(t2, x);
    } else {
        d.connect(s, a_s, at(n1, 0));
        d.connect(s_mid, at(n1, 2), at(n2, 2));
        d.connect(s2, at(n2, 0), b_s);
        d.connect(t, a_t, at(n2, 3));
        d.connect(t_mid, at(n2, 1), at(n1, 3));
        d.connect(t2, at(n1, 1), b_t);
        out.set_color(s_mid, modp::reflect(y, x, p));
        out.set_color(s2, y);
        out.set_color(t_mid, x);
        out.set_color(t2, x);
    }
}

/// Deletes `removed` and joins each pair of loose ends along the strand
/// that used to run through the deleted crossings.
fn splice_out(out: &mut ColoredDiagram, removed: &BTreeSet<CrossingId>) -> Result<(), MoveError> {
    let d = &out.diagram;
    let inside = |x: CrossingId| removed.contains(&x);
    let mut touched: BTreeSet<SemiArcId> = BTreeSet::new();
    let mut boundary: Vec<(Port, Port)> = Vec::new();
    for &x in removed {
        for i in 0..4 {
            let port = Port::new(x, i);
            touched.insert(d.at(port));
            let far = d.other_end(port);
            if !inside(far.crossing) {
                boundary.push((far, port));
            }
        }
    }
    boundary.sort();

    let mut joins: Vec<(SemiArcId, Port, Port, Color)> = Vec::new();
    let mut paired: BTreeSet<Port> = BTreeSet::new();
    for &(outer, first) in &boundary {
        if paired.contains(&outer) {
            continue;
        }
        let mut ids = vec![d.at(outer)];
        let mut cur = first;
        let end = loop {
            let next = cur.opposite();
            ids.push(d.at(next));
            let far = d.other_end(next);
            if !inside(far.crossing) {
                break far;
            }
            cur = far;
        };
        let (c0, c1) = (out.color(d.at(outer)), out.color(d.at(end)));
        if c0 != c1 {
            return Err(MoveError::ColorMismatch(c0, c1));
        }
        paired.insert(outer);
        paired.insert(end);
        let id = *ids.iter().min().expect("nonempty path");
        joins.push((id, outer, end, c0));
    }

    let loop_color = if boundary.is_empty() {
        let colors: BTreeSet<Color> = touched.iter().map(|&s| out.color(s)).collect();
        if colors.len() != 1 {
            let v: Vec<Color> = colors.into_iter().collect();
            return Err(MoveError::ColorMismatch(v[0], v[1]));
        }
        colors.into_iter().next()
    } else {
        None
    };

    let d = &mut out.diagram;
    for &s in &touched {
        d.free_semiarc(s);
    }
    for &x in removed {
        d.free_crossing(x);
    }
    for &(id, a, b, _) in &joins {
        d.connect(id, a, b);
    }
    for (id, _, _, c) in joins {
        out.set_color(id, c);
    }
    if let Some(c) = loop_color {
        let id = *touched.iter().next().expect("removed crossings have semiarcs");
        out.diagram.set_closed_loop(id);
        out.set_color(id, c);
    }
    Ok(())
}

/// Inverts a triangle. Triangle edge k runs from `darts[k]` at X_k to
/// `arrivals[k]` at X_{k+1}. Each strand meets the other two in reverse
/// order afterwards; every crossing keeps its rotation and the triangle
/// moves to the opposite corner of each crossing.
fn r3(out: &mut ColoredDiagram, darts: [Port; 3], arrivals: [Port; 3]) -> Result<(), MoveError> {
    let d = &out.diagram;
    let edges = darts.map(|p| d.at(p));
    let mut sigma: BTreeMap<Port, Port> = BTreeMap::new();
    for k in 0..3 {
        sigma.insert(darts[k].opposite(), arrivals[k]);
        sigma.insert(arrivals[k].opposite(), darts[k]);
    }
    let outer: BTreeSet<SemiArcId> = darts
        .iter()
        .flat_map(|p| (0..4).map(move |i| Port::new(p.crossing, i)))
        .map(|p| d.at(p))
        .filter(|s| !edges.contains(s))
        .collect();
    let rewired: Vec<(SemiArcId, Port, Port)> = outer
        .iter()
        .map(|&s| {
            let [a, b] = d.semiarc_ends(s).expect("semiarc with ends");
            let map = |p: Port| sigma.get(&p).copied().unwrap_or(p);
            (s, map(a), map(b))
        })
        .collect();
    let d = &mut out.diagram;
    for (s, a, b) in rewired {
        d.connect(s, a, b);
    }
    for k in 0..3 {
        d.connect(edges[k], darts[k].opposite(), arrivals[k].opposite());
    }

    // Recompute the triangle colors from the untouched outer colors.
    let mut known: BTreeMap<SemiArcId, Color> = BTreeMap::new();
    for &s in &outer {
        known.insert(s, out.color(s));
    }
    let crossings: Vec<CrossingId> = darts.iter().map(|p| p.crossing).collect();
    let p = out.p;
    for _ in 0..6 {
        for &x in &crossings {
            let ports = out.diagram.crossing(x).expect("live crossing");
            let [u0, o1, u2, o3] = ports;
            let over = known.get(&o1).or_else(|| known.get(&o3)).copied();
            if let Some(b) = over {
                known.entry(o1).or_insert(b);
                known.entry(o3).or_insert(b);
                match (known.get(&u0).copied(), known.get(&u2).copied()) {
                    (Some(a), None) => {
                        known.insert(u2, modp::reflect(a, b, p));
                    }
                    (None, Some(c)) => {
                        known.insert(u0, modp::reflect(c, b, p));
                    }
                    _ => {}
                }
            }
        }
    }
    for e in edges {
        match known.get(&e) {
            Some(&c) => out.set_color(e, c),
            None => return Err(MoveError::NotApplicable("triangle colors underdetermined".into())),
        }
    }
    Ok(())
}
