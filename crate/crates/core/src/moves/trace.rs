use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ColoredDiagram, Move, MoveError};
use crate::diagram::{Port, SemiArcId, Side};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(rename = "move")]
    pub mv: Move,
    /// Canonical checksum of the colored diagram after the move.
    pub checksum: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("move {index} ({mv}) failed: {source}")]
    Move { index: usize, mv: Move, source: MoveError },
    #[error("checksum mismatch after move {index}: expected {expected}, got {got}")]
    Checksum { index: usize, expected: String, got: String },
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn moves(&self) -> impl Iterator<Item = &Move> {
        self.steps.iter().map(|s| &s.mv)
    }

    pub fn extend(&mut self, other: MoveTrace) {
        self.steps.extend(other.steps);
    }

    /// Re-applies every move from `start`, checking each recorded checksum.
    pub fn replay(&self, start: &ColoredDiagram) -> Result<ColoredDiagram, SequenceError> {
        let mut cur = start.clone();
        for (index, step) in self.steps.iter().enumerate() {
            cur = cur.apply(&step.mv).map_err(|source| SequenceError::Move { index, mv: step.mv, source })?;
            let got = cur.checksum();
            if got != step.checksum {
                return Err(SequenceError::Checksum { index, expected: step.checksum.clone(), got });
            }
        }
        Ok(cur)
    }
}

/// Applies `moves` in order, recording a checksum after each.
pub fn apply_sequence(cd: &ColoredDiagram, moves: &[Move]) -> Result<(ColoredDiagram, MoveTrace), SequenceError> {
    let mut cur = cd.clone();
    let mut trace = MoveTrace::default();
    for (index, &mv) in moves.iter().enumerate() {
        cur = cur.apply(&mv).map_err(|source| SequenceError::Move { index, mv, source })?;
        trace.steps.push(TraceStep { mv, checksum: cur.checksum() });
    }
    Ok((cur, trace))
}

fn sides(ids: impl IntoIterator<Item = SemiArcId>) -> Vec<Side> {
    ids.into_iter().flat_map(|s| [Side::new(s, false), Side::new(s, true)]).collect()
}

/// A move undoing `m`, found among the inverse-kind moves anchored where
/// `m` changed the diagram and confirmed by canonical checksum.
pub fn inverse(before: &ColoredDiagram, m: &Move, after: &ColoredDiagram) -> Option<Move> {
    let (b, a) = (&before.diagram, &after.diagram);
    let fresh: Vec<_> = a.crossing_ids().filter(|&x| !b.has_crossing(x)).collect();
    let changed: BTreeSet<SemiArcId> = a
        .semiarc_ids()
        .filter(|&s| !b.has_semiarc(s) || b.semiarc_ends(s) != a.semiarc_ends(s) || before.color(s) != after.color(s))
        .collect();
    let near_fresh: BTreeSet<SemiArcId> =
        fresh.iter().flat_map(|&x| (0..4).map(move |i| a.at(Port::new(x, i)))).collect();
    let candidates: Vec<Move> = match m {
        Move::R1Add { .. } => fresh.iter().map(|&crossing| Move::R1Remove { crossing }).collect(),
        Move::R2PushOver { .. } | Move::R2PushUnder { .. } => {
            sides(near_fresh).into_iter().map(|side| Move::R2Remove { side }).collect()
        }
        Move::R3Slide { side } => {
            let x = b.side_dart(*side).ok()?.crossing;
            let around: BTreeSet<SemiArcId> = b
                .face_of(b.side_dart(*side).ok()?)
                .darts
                .iter()
                .map(|p| p.crossing)
                .chain([x])
                .flat_map(|c| (0..4).map(move |i| a.at(Port::new(c, i))))
                .collect();
            sides(around).into_iter().map(|side| Move::R3Slide { side }).collect()
        }
        Move::R1Remove { .. } => sides(changed)
            .into_iter()
            .flat_map(|side| [true, false].map(|over_first| Move::R1Add { side, over_first }))
            .collect(),
        Move::R2Remove { .. } => {
            let ss = sides(changed);
            let mut out = Vec::new();
            for &strand in &ss {
                for &target in &ss {
                    out.push(Move::R2PushOver { strand, target });
                    out.push(Move::R2PushUnder { strand, target });
                }
            }
            out
        }
    };
    let goal = before.checksum();
    candidates.into_iter().find(|c| after.apply(c).is_ok_and(|r| r.checksum() == goal))
}
