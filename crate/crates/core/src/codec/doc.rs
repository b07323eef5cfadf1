//! JSON documents for colored diagrams and reduction traces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::pd::{self, PdError};
use crate::coloring::{ColoringError, FoxColoring};
use crate::diagram::Diagram;
use crate::moves::{ColoredDiagram, MoveTrace, SequenceError};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("document has no coloring")]
    NoColoring,
    #[error("coloring keys do not match the {arcs} arcs of the diagram")]
    ColoringKeys { arcs: usize },
    #[error("coloring is not valid mod {0}")]
    InvalidColoring(u64),
    #[error(transparent)]
    Replay(#[from] SequenceError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub provenance: String,
}

/// `crossings` holds 1-based edge labels, ports counterclockwise from an
/// under port. `coloring` maps arc id to color; it may be absent when the
/// document only describes a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredDiagramDoc {
    pub modulus: u64,
    pub crossings: Vec<[u64; 4]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coloring: BTreeMap<usize, u64>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl ColoredDiagramDoc {
    pub fn diagram(&self) -> Result<Diagram, DocError> {
        let terms: Vec<Vec<u64>> = self.crossings.iter().map(|t| t.to_vec()).collect();
        let d = Diagram::from_edge_tuples(&pd::relabel(&terms)?).map_err(PdError::from)?;
        d.ensure_valid().map_err(PdError::from)?;
        Ok(d)
    }

    pub fn fox_coloring(&self, d: &Diagram) -> Result<FoxColoring, DocError> {
        let arcs = d.arcs().map_err(ColoringError::from)?.len();
        if self.coloring.is_empty() {
            return Err(DocError::NoColoring);
        }
        if self.coloring.len() != arcs || self.coloring.keys().copied().ne(0..arcs) {
            return Err(DocError::ColoringKeys { arcs });
        }
        Ok(FoxColoring { p: self.modulus, colors: self.coloring.values().map(|c| c % self.modulus).collect() })
    }

    /// Parses, checks that the coloring is valid and returns the colored diagram.
    pub fn colored(&self) -> Result<ColoredDiagram, DocError> {
        let d = self.diagram()?;
        let col = self.fox_coloring(&d)?;
        if !crate::coloring::validate_coloring(&d, &col)? {
            return Err(DocError::InvalidColoring(self.modulus));
        }
        Ok(ColoredDiagram::from_fox(d, &col)?)
    }

    pub fn from_json(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Serializes a colored diagram, renumbering ids densely first.
pub fn serialize(cd: &ColoredDiagram, metadata: Metadata) -> ColoredDiagramDoc {
    let cd = cd.compact();
    let crossings = cd.diagram.crossings().map(|x| x.ports.map(|s| s.0 as u64 + 1)).collect();
    let fox = cd.to_fox().expect("valid diagram");
    ColoredDiagramDoc { modulus: cd.p, crossings, coloring: fox.colors.into_iter().enumerate().collect(), metadata }
}

/// A reduction trace: the starting document plus move records.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFile {
    pub initial: ColoredDiagramDoc,
    pub initial_checksum: String,
    #[serde(flatten)]
    pub trace: MoveTrace,
    pub final_checksum: String,
}

impl TraceFile {
    pub fn new(start: &ColoredDiagram, trace: MoveTrace, end: &ColoredDiagram, metadata: Metadata) -> Self {
        TraceFile {
            initial: serialize(start, metadata),
            initial_checksum: start.checksum(),
            trace,
            final_checksum: end.checksum(),
        }
    }

    /// Rebuilds the starting diagram and replays every move, checking all
    /// checksums including the final one.
    pub fn replay(&self) -> Result<ColoredDiagram, DocError> {
        let start = self.initial.colored()?;
        let got = start.checksum();
        if got != self.initial_checksum {
            return Err(SequenceError::Checksum { index: 0, expected: self.initial_checksum.clone(), got }.into());
        }
        let end = self.trace.replay(&start)?;
        let got = end.checksum();
        if got != self.final_checksum {
            let index = self.trace.len();
            return Err(SequenceError::Checksum { index, expected: self.final_checksum.clone(), got }.into());
        }
        Ok(end)
    }
}
