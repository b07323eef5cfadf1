//! Fox p-colorings of knot diagrams, colored Reidemeister moves, and a
//! constructive reducer taking any nontrivially 17-colored diagram to one
//! whose palette lies in `{0, 2, 3, 4, 8, 12}`.

pub mod codec;
pub mod coloring;
pub mod diagram;
pub mod moves;
pub mod par;
pub mod reducer;

pub use coloring::{ColoringSpace, FoxColoring};
pub use diagram::{Arc, ArcId, Crossing, CrossingId, Diagram, Port, SemiArc, SemiArcId, Side};
pub use moves::{ColoredDiagram, Move, MoveTrace};
pub use par::Execution;
