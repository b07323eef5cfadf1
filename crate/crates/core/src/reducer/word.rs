//! Clearing a `c` arc by rewriting the over colors met along its strand.
//!
//! Follow the under strand through the arc: it meets over strands colored
//! `o1, o2, ...` and its pieces are `h0, 2o1 - h0, ...`. Two rewrites change
//! the word: sliding the strand at position `i` over the one at `i + 1`
//! turns `[o1, o2]` into `[2o1 - o2, o1]` (or `[o2, 2o2 - o1]` the other way
//! round), and pushing a finger of color `y` across a piece inserts `[y, y]`.
//! The arc is cleared once every piece avoids the removed colors. Pieces may
//! pass through removed colors on the way; new over pieces may not.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use super::finger;
use super::macros::{self, Candidate};
use super::occurrence::Occurrence;
use crate::coloring::{modp, Color};
use crate::diagram::{CrossingId, Port, SemiArcId};
use crate::moves::ColoredDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordOp {
    /// A finger of color `y` pushed across the piece before position `at`.
    Insert { at: usize, y: Color },
    /// The strands at `at` and `at + 1` slid past each other, the first one
    /// on top if `first_on_top`.
    Slide { at: usize, first_on_top: bool },
}

/// Pieces of the under strand for the word `word` starting from `h0`.
pub fn pieces(h0: Color, word: &[Color], p: u64) -> Vec<Color> {
    let mut out = vec![h0];
    for &o in word {
        out.push(modp::reflect(*out.last().expect("nonempty"), o, p));
    }
    out
}

/// Applies `op` to a word, or `None` if it brings in an over piece in `bad`.
pub fn apply_op(word: &[Color], op: WordOp, bad: &BTreeSet<Color>, p: u64) -> Option<Vec<Color>> {
    let mut w = word.to_vec();
    match op {
        WordOp::Insert { at, y } => {
            if bad.contains(&y) || at > w.len() {
                return None;
            }
            w.splice(at..at, [y, y]);
        }
        WordOp::Slide { at, first_on_top } => {
            let (o1, o2) = (*w.get(at)?, *w.get(at + 1)?);
            if o1 == o2 {
                return None;
            }
            let pair = if first_on_top { [modp::reflect(o2, o1, p), o1] } else { [o2, modp::reflect(o1, o2, p)] };
            if bad.contains(&pair[0]) || bad.contains(&pair[1]) {
                return None;
            }
            w[at] = pair[0];
            w[at + 1] = pair[1];
        }
    }
    Some(w)
}

/// Shortest rewrites first, at most one insertion and `max_ops` operations,
/// ending with no piece in `bad`. At most `limit` plans.
pub fn word_plans(
    h0: Color,
    word: &[Color],
    bad: &BTreeSet<Color>,
    p: u64,
    max_ops: usize,
    limit: usize,
) -> Vec<Vec<WordOp>> {
    let done = |w: &[Color]| pieces(h0, w, p).iter().all(|x| !bad.contains(x));
    let mut out = Vec::new();
    let mut seen = HashSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([(word.to_vec(), Vec::<WordOp>::new())]);
    while let Some((w, ops)) = queue.pop_front() {
        if done(&w) {
            if !ops.is_empty() {
                out.push(ops);
                if out.len() >= limit {
                    break;
                }
            }
            continue;
        }
        if ops.len() == max_ops {
            continue;
        }
        let inserted = ops.iter().any(|op| matches!(op, WordOp::Insert { .. }));
        let mut next: Vec<WordOp> = (0..w.len().saturating_sub(1))
            .flat_map(|at| [true, false].map(|first_on_top| WordOp::Slide { at, first_on_top }))
            .collect();
        if !inserted {
            next.extend((0..=w.len()).flat_map(|at| (0..p).map(move |y| WordOp::Insert { at, y })));
        }
        for op in next {
            let Some(w2) = apply_op(&w, op, bad, p) else { continue };
            if seen.insert(w2.clone()) {
                let mut ops2 = ops.clone();
                ops2.push(op);
                queue.push_back((w2, ops2));
            }
        }
    }
    out
}

pub const MAX_OPS: usize = 5;
const PLAN_LIMIT: usize = 16;

type PlanKey = (Color, Color, Color, Vec<Color>);
type Plans = Arc<Vec<Vec<WordOp>>>;

/// [`word_plans`] for an arc colored `c` between over colors `a` and `b`,
/// memoized.
pub fn arc_plans(a: Color, b: Color, c: Color, forbidden: &[Color], p: u64) -> Plans {
    static CACHE: OnceLock<Mutex<HashMap<PlanKey, Plans>>> = OnceLock::new();
    let key = (a, b, c, forbidden.to_vec());
    let cache = CACHE.get_or_init(Default::default);
    if let Some(found) = cache.lock().expect("plan cache").get(&key) {
        return found.clone();
    }
    let bad: BTreeSet<Color> = forbidden.iter().copied().chain([c]).collect();
    let plans = Arc::new(word_plans(modp::reflect(c, a, p), &[a, b], &bad, p, MAX_OPS, PLAN_LIMIT));
    cache.lock().expect("plan cache").insert(key, plans.clone());
    plans
}

/// The under strand seen from a fixed port: its crossings in order, the
/// semiarc arriving at each, whether the piece in front of it is a single
/// semiarc, and the semiarc after the last one.
struct Strand {
    crossings: Vec<CrossingId>,
    entry: Vec<SemiArcId>,
    simple: Vec<bool>,
    last: SemiArcId,
}

fn walk(cd: &ColoredDiagram, anchor: Port, k: usize) -> Option<Strand> {
    let d = &cd.diagram;
    let mut cur = anchor;
    let (mut crossings, mut entry, mut simples) = (Vec::new(), Vec::new(), Vec::new());
    let mut simple = true;
    for _ in 0..4 * d.crossing_count() + 4 {
        let far = d.other_end(cur);
        if far == anchor {
            return None;
        }
        if far.is_over() {
            simple = false;
        } else {
            crossings.push(far.crossing);
            entry.push(d.at(far));
            simples.push(simple);
            simple = true;
        }
        cur = far.opposite();
        if crossings.len() == k {
            return Some(Strand { crossings, entry, simple: simples, last: d.at(cur) });
        }
    }
    None
}

fn word_of(cd: &ColoredDiagram, s: &Strand) -> Vec<Color> {
    s.crossings.iter().map(|&x| cd.over_color(x)).collect()
}

/// Per operation, how many geometric realizations are followed.
const BRANCH: usize = 2;

struct Run {
    anchor: Port,
    c: Color,
    bad: BTreeSet<Color>,
    max_hops: usize,
    routes: usize,
}

impl Run {
    fn step(&self, cd: &ColoredDiagram, word: &[Color], op: WordOp) -> Vec<Candidate> {
        let Some(s) = walk(cd, self.anchor, word.len()) else { return Vec::new() };
        let Some(target) = apply_op(word, op, &self.bad, cd.p) else { return Vec::new() };
        let cands = match op {
            WordOp::Slide { at, first_on_top } => {
                if !s.simple[at + 1] {
                    return Vec::new();
                }
                let (x, y) = (s.crossings[at], s.crossings[at + 1]);
                if first_on_top {
                    macros::arc_slides(cd, x, y)
                } else {
                    macros::arc_slides(cd, y, x)
                }
            }
            WordOp::Insert { at, y } => {
                let e = if at == word.len() { s.last } else { s.entry[at] };
                let wanted = BTreeSet::from([y]);
                let mut out = Vec::new();
                for route in finger::routes_to(cd, e, &wanted, &self.bad, self.c, self.max_hops, self.routes) {
                    out.extend(finger::finger_across(cd, e, &route));
                }
                out
            }
        };
        cands
            .into_iter()
            .filter(|cand| {
                walk(&cand.result, self.anchor, target.len()).is_some_and(|s2| word_of(&cand.result, &s2) == target)
            })
            .take(BRANCH)
            .collect()
    }

    fn run(&self, cd: &ColoredDiagram, word: &[Color], plan: &[WordOp], out: &mut Vec<Candidate>) {
        let Some((&op, rest)) = plan.split_first() else {
            out.push(Candidate { moves: Vec::new(), result: cd.clone() });
            return;
        };
        let Some(next_word) = apply_op(word, op, &self.bad, cd.p) else { return };
        for first in self.step(cd, word, op) {
            let mut tails = Vec::new();
            self.run(&first.result, &next_word, rest, &mut tails);
            for tail in tails {
                let mut moves = first.moves.clone();
                moves.extend(tail.moves);
                out.push(Candidate { moves, result: tail.result });
            }
            if !out.is_empty() {
                return;
            }
        }
    }
}

/// Realizations of the first word plan that can be carried out, for a
/// Case 3 occurrence whose arc is a single semiarc. Fingers cross at most
/// `max_hops` semiarcs on the way.
pub fn word_rewrites(
    cd: &ColoredDiagram,
    occ: &Occurrence,
    forbidden: &[Color],
    max_hops: usize,
    routes: usize,
) -> Vec<Candidate> {
    let d = &cd.diagram;
    let (Some(a), Some(b)) = (occ.a, occ.b) else { return Vec::new() };
    if occ.semiarcs.len() != 1 {
        return Vec::new();
    }
    let (x0, e) = (occ.crossings[0], occ.semiarcs[0]);
    let ports: Vec<u8> = [0u8, 2].into_iter().filter(|&i| d.at(Port::new(x0, i)) == e).collect();
    let [i] = ports[..] else { return Vec::new() };
    let anchor = d.other_end(Port::new(x0, i + 2));
    if occ.crossings.contains(&anchor.crossing) {
        return Vec::new();
    }
    let run = Run { anchor, c: occ.c, bad: forbidden.iter().copied().chain([occ.c]).collect(), max_hops, routes };
    let Some(s) = walk(cd, anchor, 2) else { return Vec::new() };
    if s.crossings != occ.crossings {
        return Vec::new();
    }
    let mut out = Vec::new();
    for plan in arc_plans(a, b, occ.c, forbidden, cd.p).iter() {
        run.run(cd, &[a, b], plan, &mut out);
        if !out.is_empty() {
            break;
        }
    }
    out
}
