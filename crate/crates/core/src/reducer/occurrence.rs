//! Where a color shows up in a colored diagram.

use serde::Serialize;

use crate::coloring::Color;
use crate::diagram::{CrossingId, Port, SemiArcId};
use crate::moves::ColoredDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum OccurrenceKind {
    /// A crossing `{c|c|c}`.
    Case1,
    /// A crossing whose over-arc is colored `c` and whose under-arcs are not.
    Case2,
    /// An arc colored `c` ending under two crossings whose over colors differ from `c`.
    Case3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub kind: OccurrenceKind,
    pub c: Color,
    /// Case 1 and 2: the crossing. Case 3: the two end crossings, the one
    /// with the smaller over color first.
    pub crossings: Vec<CrossingId>,
    /// Case 3 only: the semiarcs of the arc, in order from the first crossing.
    pub semiarcs: Vec<SemiArcId>,
    /// Case 1: least over color met where a `c` semiarc at the crossing
    /// ends under another crossing. Case 2: least under color.
    /// Case 3: over color at the first crossing.
    pub a: Option<Color>,
    /// Case 3: over color at the second crossing.
    pub b: Option<Color>,
}

impl Occurrence {
    /// Ordering key: least site crossing, then kind.
    pub fn site_key(&self) -> (usize, OccurrenceKind) {
        let x = self.crossings.iter().map(|x| x.0).min().unwrap_or(usize::MAX);
        (x, self.kind)
    }
}

/// `(number of crossings with over color c, number of semiarcs colored c)`.
/// Every elimination step must decrease it lexicographically.
pub fn measure(cd: &ColoredDiagram, c: Color) -> (usize, usize) {
    let overs = cd.diagram.crossing_ids().filter(|&x| cd.over_color(x) == c).count();
    (overs, cd.semiarcs_with_color(c).count())
}

fn case1_neighbor(cd: &ColoredDiagram, x: CrossingId, c: Color) -> Option<Color> {
    let d = &cd.diagram;
    (0..4)
        .map(|i| d.other_end(Port::new(x, i)))
        .filter(|far| !far.is_over() && far.crossing != x)
        .map(|far| cd.over_color(far.crossing))
        .filter(|&a| a != c)
        .min()
}

pub fn classify_occurrences(cd: &ColoredDiagram, c: Color) -> Vec<Occurrence> {
    let d = &cd.diagram;
    let mut out = Vec::new();
    for x in d.crossing_ids() {
        let (u0, o, u2) = cd.crossing_colors(x);
        if o != c {
            continue;
        }
        if u0 == c && u2 == c {
            out.push(Occurrence {
                kind: OccurrenceKind::Case1,
                c,
                crossings: vec![x],
                semiarcs: Vec::new(),
                a: case1_neighbor(cd, x, c),
                b: None,
            });
        } else {
            out.push(Occurrence {
                kind: OccurrenceKind::Case2,
                c,
                crossings: vec![x],
                semiarcs: Vec::new(),
                a: Some(u0.min(u2)),
                b: None,
            });
        }
    }
    if d.crossing_count() > 0 {
        for arc in d.arcs_unchecked().arcs {
            let Some([p0, p1]) = arc.ends else { continue };
            if cd.color(arc.semiarcs[0]) != c {
                continue;
            }
            let (a, b) = (cd.over_color(p0.crossing), cd.over_color(p1.crossing));
            if a == c || b == c {
                continue;
            }
            let (mut xs, mut ss) = (vec![p0.crossing, p1.crossing], arc.semiarcs.clone());
            let (a, b) = if a <= b {
                (a, b)
            } else {
                xs.reverse();
                ss.reverse();
                (b, a)
            };
            out.push(Occurrence {
                kind: OccurrenceKind::Case3,
                c,
                crossings: xs,
                semiarcs: ss,
                a: Some(a),
                b: Some(b),
            });
        }
    }
    out.sort_by_key(|o| o.site_key());
    out
}
