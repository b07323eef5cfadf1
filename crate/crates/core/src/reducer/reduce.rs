//! The elimination loop.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::finger;
use super::formulas::{exclusions_for_a, exclusions_for_b};
use super::macros::{self, Avoid, Candidate};
use super::occurrence::{classify_occurrences, measure, Occurrence, OccurrenceKind};
use super::schedule::{EliminationSchedule, P};
use super::search::{goal_reached, local_search, SearchError, SearchLimits, SearchStats};
use super::word;
use crate::coloring::{modp, Color, ColoringError, FoxColoring};
use crate::diagram::{Diagram, Port};
use crate::moves::{ColoredDiagram, Move, MoveError, MoveTrace, TraceStep};
use crate::par::Execution;

pub const DEFAULT_STEP_BUDGET: usize = 10_000;

/// Finger routes tried per site crossing.
const ROUTE_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceConfig {
    pub limits: SearchLimits,
    /// Maximum number of primitive moves per schedule step.
    pub step_budget: usize,
    pub exec: Execution,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig { limits: SearchLimits::default(), step_budget: DEFAULT_STEP_BUDGET, exec: Execution::default() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("trivial coloring")]
    TrivialColoring,
    #[error("the reducer works modulo 17, got {0}")]
    WrongModulus(u64),
    #[error("invalid coloring")]
    InvalidColoring,
    #[error("step {step}: color {present} is present before its removal is due")]
    ForbiddenPresent { step: usize, present: Color },
    #[error("step {step} (color {color}): no deformation found for {occurrence:?}: {source}")]
    Stuck { step: usize, color: Color, occurrence: Box<Occurrence>, source: SearchError },
    #[error("step {step} (color {color}): move budget of {budget} exhausted")]
    Budget { step: usize, color: Color, budget: usize, occurrence: Box<Occurrence> },
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub color: Color,
    pub moves: usize,
    pub eliminations: usize,
    pub searches: usize,
    pub crossings: usize,
    pub palette: BTreeSet<Color>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub initial_palette: BTreeSet<Color>,
    pub steps: Vec<StepReport>,
    pub final_palette: BTreeSet<Color>,
    pub total_moves: usize,
    pub initial_checksum: String,
    pub final_checksum: String,
}

/// Where the reduction stands: the colored diagram, how many schedule steps
/// are done, and every move applied so far.
#[derive(Clone, Debug)]
pub struct ReductionState {
    pub diagram: ColoredDiagram,
    pub completed: usize,
    pub trace: MoveTrace,
    pub report: ReductionReport,
    pub config: ReduceConfig,
}

impl ReductionState {
    pub fn new(diagram: ColoredDiagram, config: ReduceConfig) -> Result<Self, ReduceError> {
        if diagram.p != P {
            return Err(ReduceError::WrongModulus(diagram.p));
        }
        if !diagram.is_valid_coloring() {
            return Err(ReduceError::InvalidColoring);
        }
        if diagram.is_trivial() {
            return Err(ReduceError::TrivialColoring);
        }
        let checksum = diagram.checksum();
        let report = ReductionReport {
            initial_palette: diagram.palette(),
            final_palette: diagram.palette(),
            initial_checksum: checksum.clone(),
            final_checksum: checksum,
            ..Default::default()
        };
        Ok(ReductionState { diagram, completed: 0, trace: MoveTrace::default(), report, config })
    }

    pub fn is_done(&self) -> bool {
        self.completed == EliminationSchedule.len()
    }

    fn push_moves(&mut self, moves: &[Move]) -> Result<(), ReduceError> {
        for m in moves {
            self.diagram.apply_mut(m)?;
            debug_assert!(self.diagram.is_valid_coloring());
            self.trace.steps.push(TraceStep { mv: *m, checksum: self.diagram.checksum() });
        }
        Ok(())
    }
}

fn under_ports_by_preference(cd: &ColoredDiagram, occ: &Occurrence, excluded: &BTreeSet<Color>) -> Vec<u8> {
    let x = occ.crossings[0];
    let mut ports = vec![0u8, 2];
    ports.sort_by_key(|&i| {
        let a = cd.port_color(Port::new(x, i));
        (excluded.contains(&a), a)
    });
    ports
}

/// A family of candidate deformations, generated on demand.
type Tier<'a> = Box<dyn FnOnce() -> Vec<Candidate> + 'a>;

/// The deformations the case analysis prescribes for `occ`, most preferred
/// family first. Fingers used on a `c` arc cross at most `depth - 5` semiarcs.
fn direct_tiers<'a>(
    cd: &'a ColoredDiagram,
    occ: &'a Occurrence,
    forbidden: &'a [Color],
    depth: usize,
) -> Vec<Tier<'a>> {
    let c = occ.c;
    let d = &cd.diagram;
    match occ.kind {
        OccurrenceKind::Case1 => {
            let x = occ.crossings[0];
            let mut neighbors: Vec<_> = (0..4)
                .map(|i| d.other_end(Port::new(x, i)))
                .filter(|far| !far.is_over() && far.crossing != x && cd.over_color(far.crossing) != c)
                .map(|far| (cd.over_color(far.crossing), far.crossing))
                .collect();
            let excluded = exclusions_for_a(c, forbidden);
            neighbors.sort_by_key(|&(a, y)| (excluded.contains(&a), a, y));
            neighbors.dedup();
            vec![Box::new(move || neighbors.into_iter().flat_map(|(_, y)| macros::neighbor_slides(cd, x, y)).collect())]
        }
        OccurrenceKind::Case2 => {
            let excluded = exclusions_for_a(c, forbidden);
            let x = occ.crossings[0];
            let ports = under_ports_by_preference(cd, occ, &excluded);
            vec![Box::new(move || ports.into_iter().flat_map(|i| macros::clasps(cd, x, i)).collect())]
        }
        OccurrenceKind::Case3 => {
            if occ.semiarcs.len() != 1 {
                return Vec::new();
            }
            let (p, q) = (occ.crossings[0], occ.crossings[1]);
            let (a, b) = (occ.a.unwrap_or(c), occ.b.unwrap_or(c));
            let e = occ.semiarcs[0];
            let avoid = Avoid::new(c, forbidden, P);
            let mut tiers: Vec<Tier<'a>> = Vec::new();
            if a != b {
                let mut orders: Vec<_> =
                    [(p, q, a, b), (q, p, b, a)].into_iter().filter(|&(_, _, a, b)| avoid.slide_ok(a, b)).collect();
                orders.sort_by_key(|&(_, _, a, b)| (exclusions_for_b(a, c, forbidden).contains(&b), a));
                tiers.push(Box::new(move || {
                    orders.into_iter().flat_map(|(p, q, _, _)| macros::arc_slides(cd, p, q)).collect()
                }));
            }
            tiers.push(Box::new(move || word::word_rewrites(cd, occ, forbidden, depth.saturating_sub(5), ROUTE_LIMIT)));
            let avoid2 = avoid.clone();
            tiers.push(Box::new(move || {
                [p, q].into_iter().flat_map(|x| macros::clasp_then_slides(cd, x, e, &avoid)).collect()
            }));
            tiers.push(Box::new(move || {
                [p, q].into_iter().flat_map(|x| macros::reflect_then_slides(cd, x, &avoid2)).collect()
            }));
            tiers
        }
    }
}

fn allowed(colors: &[i64], bad: &BTreeSet<Color>) -> bool {
    colors.iter().all(|&x| !bad.contains(&modp::reduce(x, P)))
}

/// A finger brought in from farther away and passed over the site
/// crossing, for when the neighboring strands all have the wrong colors.
fn finger_tiers<'a>(
    cd: &'a ColoredDiagram,
    occ: &'a Occurrence,
    forbidden: &'a [Color],
    depth: usize,
) -> Vec<Tier<'a>> {
    let c = occ.c;
    let ci = c as i64;
    let bad: BTreeSet<Color> = forbidden.iter().copied().chain([c]).collect();
    match occ.kind {
        OccurrenceKind::Case1 | OccurrenceKind::Case2 => {
            let x = occ.crossings[0];
            let a = cd.crossing_colors(x).0 as i64;
            let wanted: BTreeSet<Color> = (0..P)
                .filter(|&y| {
                    !bad.contains(&y)
                        && allowed(&[2 * y as i64 - a, 2 * y as i64 - ci, 2 * y as i64 - 2 * ci + a], &bad)
                })
                .collect();
            vec![Box::new(move || {
                finger::routes(cd, x, &wanted, &bad, c, depth.saturating_sub(3), ROUTE_LIMIT)
                    .iter()
                    .flat_map(|route| finger::finger_over(cd, x, route))
                    .collect()
            })]
        }
        OccurrenceKind::Case3 => Vec::new(),
    }
}

/// How promising a diagram is for the rest of the schedule, smaller is
/// better: semiarcs in colors still to be removed, then crossings.
fn outlook(cd: &ColoredDiagram, step: usize) -> (usize, usize) {
    let d = &cd.diagram;
    let later = &EliminationSchedule.colors()[step - 1..];
    let load = d.semiarc_ids().filter(|&x| later.contains(&cd.color(x))).count();
    (load, d.crossing_count())
}

/// Walks the tiers in order and returns, from the first one with a goal,
/// the goal with the best [`outlook`]. Earliest wins ties.
fn pick(tiers: Vec<Tier>, before: (usize, usize), step: usize, forbidden: &[Color]) -> Option<Vec<Move>> {
    let c = EliminationSchedule.color(step);
    tiers.into_iter().find_map(|tier| {
        tier()
            .into_iter()
            .filter(|cand| goal_reached(before, &cand.result, c, forbidden))
            .map(|cand| (outlook(&cand.result, step), cand.moves))
            .min_by_key(|(k, _)| *k)
            .map(|(_, moves)| moves)
    })
}

/// Kinks and bigons that can be removed right away. Removing them merges
/// semiarcs of equal color and brings in nothing new.
fn slack(cd: &ColoredDiagram) -> Vec<Move> {
    let d = &cd.diagram;
    let mut out = Vec::new();
    for x in d.crossing_ids() {
        if (0..4).any(|i| d.other_end(Port::new(x, i)).crossing == x) {
            out.push(Move::R1Remove { crossing: x });
        }
        for i in 0..4 {
            let dart = Port::new(x, i);
            if d.face_successor(d.face_successor(dart)) == dart && d.other_end(dart).crossing != x {
                out.push(Move::R2Remove { side: d.dart_side(dart) });
            }
        }
    }
    out
}

/// Removes kinks and bigons until none is left. Returns the number of moves.
fn tidy(state: &mut ReductionState) -> Result<usize, ReduceError> {
    let mut count = 0;
    loop {
        let mut progress = false;
        for m in slack(&state.diagram) {
            if state.diagram.applicable(&m).unwrap_or(false) {
                state.push_moves(&[m])?;
                count += 1;
                progress = true;
            }
        }
        if !progress {
            return Ok(count);
        }
    }
}

/// Runs the next schedule step: removes its color entirely without bringing
/// back any color removed earlier.
pub fn eliminate_color(mut state: ReductionState) -> Result<ReductionState, ReduceError> {
    let sched = EliminationSchedule;
    let step = state.completed + 1;
    let c = sched.color(step);
    let forbidden = sched.forbidden_before(step);
    if let Some(&present) = state.diagram.palette().iter().find(|x| forbidden.contains(x)) {
        return Err(ReduceError::ForbiddenPresent { step, present });
    }
    let mut report =
        StepReport { step, color: c, moves: 0, eliminations: 0, searches: 0, crossings: 0, palette: BTreeSet::new() };
    loop {
        let occs = classify_occurrences(&state.diagram, c);
        let Some(first) = occs.first().cloned() else { break };
        let before = measure(&state.diagram, c);
        let depth = state.config.limits.depth;
        let mut found = occs.iter().find_map(|occ| {
            let mut tiers = direct_tiers(&state.diagram, occ, forbidden, depth);
            tiers.extend(finger_tiers(&state.diagram, occ, forbidden, depth));
            pick(tiers, before, step, forbidden)
        });
        if found.is_none() {
            let mut last_err = None;
            for occ in &occs {
                report.searches += 1;
                match local_search(&state.diagram, occ, forbidden, state.config.limits, state.config.exec) {
                    Ok(moves) => {
                        found = Some(moves);
                        break;
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            if found.is_none() {
                let source = last_err.unwrap_or(SearchError::Exhausted(SearchStats::default()));
                return Err(ReduceError::Stuck { step, color: c, occurrence: Box::new(first), source });
            }
        }
        let moves = found.expect("set above");
        if report.moves + moves.len() > state.config.step_budget {
            return Err(ReduceError::Budget {
                step,
                color: c,
                budget: state.config.step_budget,
                occurrence: Box::new(first),
            });
        }
        state.push_moves(&moves)?;
        report.moves += moves.len();
        report.eliminations += 1;
    }
    if report.eliminations > 0 {
        report.moves += tidy(&mut state)?;
    }
    let palette = state.diagram.palette();
    debug_assert!(!palette.contains(&c) && forbidden.iter().all(|f| !palette.contains(f)));
    report.crossings = state.diagram.diagram.crossing_count();
    report.palette = palette.clone();
    state.report.total_moves += report.moves;
    state.report.steps.push(report);
    state.report.final_palette = palette;
    state.report.final_checksum = state.diagram.checksum();
    state.completed = step;
    Ok(state)
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub diagram: ColoredDiagram,
    pub trace: MoveTrace,
    pub report: ReductionReport,
}

/// Runs the whole schedule on a semiarc-colored diagram.
pub fn reduce_colored(cd: &ColoredDiagram, config: ReduceConfig) -> Result<Reduction, ReduceError> {
    let mut state = ReductionState::new(cd.clone(), config)?;
    while !state.is_done() {
        state = eliminate_color(state)?;
    }
    Ok(Reduction { diagram: state.diagram, trace: state.trace, report: state.report })
}

/// Takes a nontrivially 17-colored diagram to one colored from
/// `{0, 2, 3, 4, 8, 12}`.
pub fn reduce_to_six(d: &Diagram, col: &FoxColoring) -> Result<(Diagram, FoxColoring, MoveTrace), ReduceError> {
    if col.p != P {
        return Err(ReduceError::WrongModulus(col.p));
    }
    let cd = ColoredDiagram::from_fox(d.clone(), col)?;
    let r = reduce_colored(&cd, ReduceConfig::default())?;
    let fox = r.diagram.to_fox()?;
    Ok((r.diagram.diagram, fox, r.trace))
}
