//! Colored Reidemeister moves on semiarc-colored diagrams.
//!
//! Every move is anchored at a [`Side`]: a semiarc read in one direction,
//! naming the face on its right. Pushes require the strand and the target to
//! border the same face, which keeps every rewrite planar.

mod primitives;
mod trace;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{modp, Color, ColoringError, FoxColoring};
use crate::diagram::{CrossingId, Diagram, DiagramError, Port, SemiArcId, Side};

pub use trace::{apply_sequence, inverse, MoveTrace, SequenceError, TraceStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    /// Insert a monochrome kink into a semiarc, the loop lying in the face
    /// on the right of `side`. `over_first`: the strand passes over on its
    /// first visit to the new crossing.
    R1Add {
        side: Side,
        over_first: bool,
    },
    R1Remove {
        crossing: CrossingId,
    },
    /// Push a finger of `strand` over `target`; both sides must share a face.
    R2PushOver {
        strand: Side,
        target: Side,
    },
    R2PushUnder {
        strand: Side,
        target: Side,
    },
    /// Remove the two crossings bounding the bigon on the right of `side`.
    R2Remove {
        side: Side,
    },
    /// Slide across the triangular face on the right of `side`.
    R3Slide {
        side: Side,
    },
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::R1Add { .. } => "r1-add",
            Move::R1Remove { .. } => "r1-remove",
            Move::R2PushOver { .. } => "r2-push-over",
            Move::R2PushUnder { .. } => "r2-push-under",
            Move::R2Remove { .. } => "r2-remove",
            Move::R3Slide { .. } => "r3-slide",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Side| format!("{}{}", s.semiarc, if s.reversed { "'" } else { "" });
        match self {
            Move::R1Add { side: s, over_first } => write!(f, "r1-add({}, over_first={over_first})", side(s)),
            Move::R1Remove { crossing } => write!(f, "r1-remove({crossing})"),
            Move::R2PushOver { strand, target } => write!(f, "r2-push-over({}, {})", side(strand), side(target)),
            Move::R2PushUnder { strand, target } => write!(f, "r2-push-under({}, {})", side(strand), side(target)),
            Move::R2Remove { side: s } => write!(f, "r2-remove({})", side(s)),
            Move::R3Slide { side: s } => write!(f, "r3-slide({})", side(s)),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("unknown semiarc {0}")]
    UnknownSemiArc(SemiArcId),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("merge color mismatch: {0} vs {1}")]
    ColorMismatch(Color, Color),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A diagram with a color on every semiarc.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ColoredDiagram {
    pub diagram: Diagram,
    pub p: u64,
    colors: Vec<Option<Color>>,
}

impl Clone for ColoredDiagram {
    fn clone(&self) -> Self {
        ColoredDiagram {
            diagram: self.diagram.clone(),
            p: self.p,
            colors: crate::diagram::clone_with_slack(&self.colors),
        }
    }
}

impl ColoredDiagram {
    /// Colors each semiarc with the color of its arc.
    pub fn from_fox(diagram: Diagram, col: &FoxColoring) -> Result<Self, ColoringError> {
        let arcs = diagram.arcs()?;
        if col.colors.len() != arcs.len() {
            return Err(ColoringError::MissingAssignment { expected: arcs.len(), got: col.colors.len() });
        }
        let mut colors = vec![None; diagram.semiarc_capacity()];
        for s in diagram.semiarc_ids() {
            colors[s.0] = Some(col.colors[arcs.arc_of(s).0] % col.p);
        }
        Ok(ColoredDiagram { diagram, p: col.p, colors })
    }

    /// Builds from explicit per-semiarc colors (indexed by semiarc id).
    pub fn from_semiarc_colors(diagram: Diagram, p: u64, colors: Vec<Color>) -> Self {
        let mut cs = vec![None; diagram.semiarc_capacity()];
        for s in diagram.semiarc_ids() {
            cs[s.0] = Some(colors[s.0] % p);
        }
        ColoredDiagram { diagram, p, colors: cs }
    }

    pub fn color(&self, s: SemiArcId) -> Color {
        self.colors[s.0].expect("colored semiarc")
    }

    pub(crate) fn set_color(&mut self, s: SemiArcId, c: Color) {
        if self.colors.len() <= s.0 {
            self.colors.resize(s.0 + 1, None);
        }
        self.colors[s.0] = Some(c % self.p);
    }

    pub(crate) fn sync_capacity(&mut self) {
        let cap = self.diagram.semiarc_capacity();
        self.colors.resize(cap, None);
        for (i, c) in self.colors.iter_mut().enumerate() {
            if !self.diagram.has_semiarc(SemiArcId(i)) {
                *c = None;
            }
        }
    }

    pub fn port_color(&self, port: Port) -> Color {
        self.color(self.diagram.at(port))
    }

    /// `(a, b, c)`: under color at port 0, over color, under color at port 2.
    pub fn crossing_colors(&self, x: CrossingId) -> (Color, Color, Color) {
        (self.port_color(Port::new(x, 0)), self.port_color(Port::new(x, 1)), self.port_color(Port::new(x, 2)))
    }

    pub fn over_color(&self, x: CrossingId) -> Color {
        self.port_color(Port::new(x, 1))
    }

    /// Both over ports agree and `a + c ≡ 2b` at every crossing.
    pub fn is_valid_coloring(&self) -> bool {
        self.diagram.semiarc_ids().all(|s| self.colors.get(s.0).copied().flatten().is_some_and(|c| c < self.p))
            && self.diagram.crossing_ids().all(|x| {
                let (a, b, c) = self.crossing_colors(x);
                b == self.port_color(Port::new(x, 3)) && (a + c) % self.p == (2 * b) % self.p
            })
    }

    /// The arc coloring carried by the semiarc colors.
    pub fn to_fox(&self) -> Result<FoxColoring, ColoringError> {
        let arcs = self.diagram.arcs()?;
        let colors = arcs.arcs.iter().map(|a| self.color(a.semiarcs[0])).collect();
        Ok(FoxColoring { p: self.p, colors })
    }

    pub fn palette(&self) -> BTreeSet<Color> {
        self.diagram.semiarc_ids().map(|s| self.color(s)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.palette().len() <= 1
    }

    pub fn semiarcs_with_color(&self, c: Color) -> impl Iterator<Item = SemiArcId> + '_ {
        self.diagram.semiarc_ids().filter(move |&s| self.color(s) == c)
    }

    /// Renumbers crossings and semiarcs densely, preserving relative order.
    pub fn compact(&self) -> ColoredDiagram {
        let d = &self.diagram;
        let mut cmap = vec![usize::MAX; d.crossing_capacity()];
        for (i, x) in d.crossing_ids().enumerate() {
            cmap[x.0] = i;
        }
        let mut smap = vec![usize::MAX; d.semiarc_capacity()];
        for (i, s) in d.semiarc_ids().enumerate() {
            smap[s.0] = i;
        }
        let crossings = d
            .crossings()
            .map(|x| crate::diagram::Crossing {
                id: CrossingId(cmap[x.id.0]),
                ports: x.ports.map(|s| SemiArcId(smap[s.0])),
            })
            .collect();
        let semiarcs = d
            .semiarcs()
            .map(|s| crate::diagram::SemiArc {
                id: SemiArcId(smap[s.id.0]),
                ends: s.ends.map(|e| e.map(|p| Port::new(CrossingId(cmap[p.crossing.0]), p.index))),
            })
            .collect();
        let diagram = Diagram::from_parts(crossings, semiarcs);
        let colors = d.semiarc_ids().map(|s| Some(self.color(s))).collect();
        ColoredDiagram { diagram, p: self.p, colors }
    }

    pub fn checksum(&self) -> String {
        crate::codec::canonical::canonical_checksum(self)
    }

    pub fn applicable(&self, m: &Move) -> Result<bool, MoveError> {
        match primitives::plan(self, m) {
            Ok(_) => Ok(true),
            Err(MoveError::NotApplicable(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Every applicable move, in a fixed order. Quadratic in the number of
    /// semiarcs; meant for small diagrams.
    pub fn applicable_moves(&self) -> Vec<Move> {
        let d = &self.diagram;
        let sides: Vec<Side> = d.semiarc_ids().flat_map(|s| [Side::new(s, false), Side::new(s, true)]).collect();
        let mut out: Vec<Move> = d.crossing_ids().map(|crossing| Move::R1Remove { crossing }).collect();
        for &side in &sides {
            out.extend([Move::R1Add { side, over_first: true }, Move::R1Add { side, over_first: false }]);
            out.extend([Move::R2Remove { side }, Move::R3Slide { side }]);
            for &target in &sides {
                out.extend([Move::R2PushOver { strand: side, target }, Move::R2PushUnder { strand: side, target }]);
            }
        }
        out.retain(|m| self.applicable(m).unwrap_or(false));
        out
    }

    pub fn apply(&self, m: &Move) -> Result<ColoredDiagram, MoveError> {
        let mut out = self.clone();
        out.apply_mut(m)?;
        Ok(out)
    }

    /// Applies `m` in place. On error the diagram is left unchanged.
    pub fn apply_mut(&mut self, m: &Move) -> Result<(), MoveError> {
        let plan = primitives::plan(self, m)?;
        primitives::execute(self, plan)
    }
}

/// `2y - x`: the color of a target segment after a strand of color `y`
/// passes over it.
pub fn pushed_color(x: Color, y: Color, p: u64) -> Color {
    modp::reflect(x, y, p)
}

/// Checks applicability of `m` on an arc-colored diagram.
pub fn applicable(d: &Diagram, m: &Move) -> Result<bool, MoveError> {
    let p = 3;
    let col = FoxColoring::constant(p, d.arcs()?.len(), 0);
    ColoredDiagram::from_fox(d.clone(), &col)?.applicable(m)
}

/// Applies `m` to an arc-colored diagram.
pub fn apply(d: &Diagram, col: &FoxColoring, m: &Move) -> Result<(Diagram, FoxColoring), MoveError> {
    let cd = ColoredDiagram::from_fox(d.clone(), col)?.apply(m)?;
    let fox = cd.to_fox()?;
    Ok((cd.diagram, fox))
}

#[cfg(test)]
mod tests;
