//! Bounded breadth-first search over slides, clasps and single local moves,
//! used when none of the direct deformations for an occurrence works.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

use super::macros::{self, Candidate};
use super::occurrence::{measure, Occurrence};
use crate::coloring::Color;
use crate::diagram::CrossingId;
use crate::moves::{ColoredDiagram, Move};
use crate::par::{self, Execution};

pub const DEFAULT_DEPTH: usize = 8;
pub const DEFAULT_NODE_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchLimits {
    /// Maximum number of primitive moves in a returned sequence.
    pub depth: usize,
    /// Maximum number of generated nodes.
    pub nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { depth: DEFAULT_DEPTH, nodes: DEFAULT_NODE_CAP }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: usize,
    pub levels: usize,
    pub frontier: usize,
    pub deepest: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search exhausted after {} nodes over {} levels (frontier {}, deepest sequence {})", .0.nodes, .0.levels, .0.frontier, .0.deepest)]
    Exhausted(SearchStats),
}

/// No forbidden color anywhere and the `c` measure went down.
pub fn goal_reached(before: (usize, usize), after: &ColoredDiagram, c: Color, forbidden: &[Color]) -> bool {
    measure(after, c) < before && !after.diagram.semiarc_ids().any(|s| forbidden.contains(&after.color(s)))
}

fn fingerprint(cd: &ColoredDiagram) -> u64 {
    let mut h = DefaultHasher::new();
    cd.hash(&mut h);
    h.finish()
}

fn replay(root: &ColoredDiagram, moves: &[Move]) -> ColoredDiagram {
    let mut cd = root.clone();
    for m in moves {
        cd.apply_mut(m).expect("search replays only moves it has applied");
    }
    cd
}

struct Child {
    moves: Vec<Move>,
    fingerprint: u64,
    goal: bool,
}

fn expand(
    root: &ColoredDiagram,
    site: &[CrossingId],
    moves: &[Move],
    c: Color,
    forbidden: &[Color],
    depth: usize,
) -> Vec<Child> {
    let cd = replay(root, moves);
    let before = measure(root, c);
    let mut focus: Vec<CrossingId> = site.iter().copied().filter(|&x| cd.diagram.has_crossing(x)).collect();
    focus.extend(macros::new_crossings(root, &cd));
    let mut out = Vec::new();
    for x in focus {
        for Candidate { moves: extra, result } in macros::around(&cd, x) {
            if moves.len() + extra.len() > depth {
                continue;
            }
            let mut seq = moves.to_vec();
            seq.extend(extra);
            out.push(Child {
                goal: goal_reached(before, &result, c, forbidden),
                fingerprint: fingerprint(&result),
                moves: seq,
            });
        }
    }
    out
}

/// Breadth-first over compositions anchored at the occurrence and at the
/// crossings the sequence has created. Returns the first sequence, in
/// generation order, reaching [`goal_reached`].
pub fn local_search(
    cd: &ColoredDiagram,
    occ: &Occurrence,
    forbidden: &[Color],
    limits: SearchLimits,
    exec: Execution,
) -> Result<Vec<Move>, SearchError> {
    let c = occ.c;
    let mut stats = SearchStats::default();
    let mut seen = HashSet::from([fingerprint(cd)]);
    let mut frontier: Vec<Vec<Move>> = vec![Vec::new()];
    while !frontier.is_empty() {
        stats.levels += 1;
        stats.frontier = frontier.len();
        let children = par::map(&frontier, exec, |moves| expand(cd, &occ.crossings, moves, c, forbidden, limits.depth));
        let mut next = Vec::new();
        for child in children.into_iter().flatten() {
            if !seen.insert(child.fingerprint) {
                continue;
            }
            stats.nodes += 1;
            stats.deepest = stats.deepest.max(child.moves.len());
            if child.goal {
                return Ok(child.moves);
            }
            if stats.nodes >= limits.nodes {
                return Err(SearchError::Exhausted(stats));
            }
            if child.moves.len() < limits.depth {
                next.push(child.moves);
            }
        }
        frontier = next;
    }
    stats.frontier = 0;
    Err(SearchError::Exhausted(stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::corpus;
    use crate::reducer::classify_occurrences;

    #[test]
    fn impossible_goal_exhausts() {
        let cd = corpus::entry("T(2,17)").unwrap().colored17().unwrap();
        let occ = classify_occurrences(&cd, 16).remove(0);
        let everything: Vec<Color> = (0..17).filter(|&x| x != 16).collect();
        let limits = SearchLimits { depth: 2, nodes: 2_000 };
        for exec in [Execution::Sequential, Execution::Parallel] {
            match local_search(&cd, &occ, &everything, limits, exec) {
                Err(SearchError::Exhausted(stats)) => assert!(stats.nodes > 0),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let cd = corpus::entry("T(2,17)").unwrap().colored17().unwrap();
        let occ = classify_occurrences(&cd, 16).remove(0);
        let limits = SearchLimits { depth: 3, nodes: 3_000 };
        let seq = local_search(&cd, &occ, &[], limits, Execution::Sequential);
        let par = local_search(&cd, &occ, &[], limits, Execution::Parallel);
        assert_eq!(format!("{seq:?}"), format!("{par:?}"));
    }
}
