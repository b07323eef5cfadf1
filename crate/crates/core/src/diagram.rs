//! Unoriented knot diagrams stored as combinatorial maps.
//!
//! A [`Diagram`] is a set of 4-valent crossings whose ports are listed in
//! counterclockwise order, plus the semiarcs (edges) joining ports. Ports 0
//! and 2 carry the under-strand, ports 1 and 3 the over-strand. The cyclic
//! port order is the rotation system; faces are traced from it and planarity
//! is checked through the Euler characteristic rather than enforced.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SemiArcId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub usize);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

impl fmt::Display for SemiArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// One of the four slots of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Port {
    pub crossing: CrossingId,
    pub index: u8,
}

impl Port {
    pub fn new(crossing: CrossingId, index: u8) -> Self {
        Port { crossing, index: index % 4 }
    }

    /// The port straight across the crossing (same strand).
    pub fn opposite(self) -> Port {
        Port::new(self.crossing, self.index + 2)
    }

    /// Next port counterclockwise.
    pub fn next_ccw(self) -> Port {
        Port::new(self.crossing, self.index + 1)
    }

    pub fn prev_ccw(self) -> Port {
        Port::new(self.crossing, self.index + 3)
    }

    pub fn is_over(self) -> bool {
        self.index % 2 == 1
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing, self.index)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: CrossingId,
    pub ports: [SemiArcId; 4],
}

/// An edge between two ports. `ends == None` is the closed loop of the
/// crossingless unknot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SemiArc {
    pub id: SemiArcId,
    pub ends: Option<[Port; 2]>,
}

/// A maximal over-passing path: consecutive semiarcs joined through over
/// ports, terminated at under ports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: ArcId,
    pub semiarcs: Vec<SemiArcId>,
    /// The two under ports where the arc terminates; `None` for the unknot.
    pub ends: Option<[Port; 2]>,
}

/// Arcs of a diagram together with the semiarc-to-arc lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcMap {
    pub arcs: Vec<Arc>,
    of_semiarc: Vec<Option<ArcId>>,
}

impl ArcMap {
    pub fn arc_of(&self, s: SemiArcId) -> ArcId {
        self.of_semiarc[s.0].expect("semiarc belongs to an arc")
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// A face as the cyclic sequence of darts bounding it. A dart is a port
/// read as "the semiarc at this port, traversed away from the crossing";
/// the face lies to the right of every dart in its cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Port>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// A semiarc read in one direction; identifies the face on its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Side {
    pub semiarc: SemiArcId,
    #[serde(default)]
    pub reversed: bool,
}

impl Side {
    pub fn new(semiarc: SemiArcId, reversed: bool) -> Self {
        Side { semiarc, reversed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A crossing port names a semiarc that does not exist.
    DanglingPort {
        port: Port,
        semiarc: SemiArcId,
    },
    /// A port is claimed by more than one semiarc endpoint, or by none.
    PortMultiplicity {
        port: Port,
        count: usize,
    },
    /// A semiarc endpoint and the crossing port disagree.
    EndpointMismatch {
        semiarc: SemiArcId,
        port: Port,
    },
    /// A semiarc endpoint names a crossing that does not exist.
    MissingCrossing {
        semiarc: SemiArcId,
        crossing: CrossingId,
    },
    ComponentCount(usize),
    NonPlanar {
        euler: i64,
    },
    /// Closed loops are only allowed as the whole crossingless unknot.
    StrayLoop(SemiArcId),
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingPort { port, semiarc } => {
                write!(f, "dangling port {port} references missing {semiarc}")
            }
            Violation::PortMultiplicity { port, count } => {
                write!(f, "port multiplicity: {port} used {count} times")
            }
            Violation::EndpointMismatch { semiarc, port } => {
                write!(f, "endpoint mismatch: {semiarc} claims {port}")
            }
            Violation::MissingCrossing { semiarc, crossing } => {
                write!(f, "{semiarc} ends at missing crossing {crossing}")
            }
            Violation::ComponentCount(n) => write!(f, "component count = {n}"),
            Violation::NonPlanar { euler } => write!(f, "non-planar rotation system (euler = {euler})"),
            Violation::StrayLoop(s) => write!(f, "closed loop {s} alongside crossings"),
            Violation::Empty => write!(f, "empty diagram"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("edge label {label} appears {count} times (expected 2)")]
    LabelMultiplicity { label: usize, count: usize },
    #[error("unknown semiarc {0}")]
    UnknownSemiArc(SemiArcId),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
}

/// A knot diagram. Ids are slot indices; freed slots are reused smallest
/// first so rewrites allocate ids deterministically.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Option<[SemiArcId; 4]>>,
    semiarcs: Vec<Option<Option<[Port; 2]>>>,
}

/// Slots reserved on clone: clones are usually rewritten right away.
pub(crate) const CLONE_SLACK: usize = 8;

pub(crate) fn clone_with_slack<T: Clone>(v: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(v.len() + CLONE_SLACK);
    out.extend_from_slice(v);
    out
}

impl Clone for Diagram {
    fn clone(&self) -> Self {
        Diagram { crossings: clone_with_slack(&self.crossings), semiarcs: clone_with_slack(&self.semiarcs) }
    }
}

impl Diagram {
    /// The crossingless unknot: one closed semiarc.
    pub fn unknot() -> Self {
        Diagram { crossings: Vec::new(), semiarcs: vec![Some(None)] }
    }

    /// Builds a diagram verbatim, without any consistency checks, so that
    /// defective structures can be handed to [`Diagram::validate`].
    pub fn from_parts(crossings: Vec<Crossing>, semiarcs: Vec<SemiArc>) -> Self {
        let mut d = Diagram { crossings: Vec::new(), semiarcs: Vec::new() };
        for c in crossings {
            if d.crossings.len() <= c.id.0 {
                d.crossings.resize(c.id.0 + 1, None);
            }
            d.crossings[c.id.0] = Some(c.ports);
        }
        for s in semiarcs {
            if d.semiarcs.len() <= s.id.0 {
                d.semiarcs.resize(s.id.0 + 1, None);
            }
            d.semiarcs[s.id.0] = Some(s.ends);
        }
        d
    }

    /// Builds a diagram from crossings given as 4-tuples of 0-based edge
    /// labels in counterclockwise order starting at an under port. Edge `e`
    /// becomes semiarc `e`; every label must appear exactly twice.
    pub fn from_edge_tuples(tuples: &[[usize; 4]]) -> Result<Self, DiagramError> {
        if tuples.is_empty() {
            return Ok(Diagram::unknot());
        }
        let n_edges = tuples.iter().flatten().copied().max().map_or(0, |m| m + 1);
        let mut ends: Vec<Vec<Port>> = vec![Vec::new(); n_edges];
        for (ci, t) in tuples.iter().enumerate() {
            for (pi, &e) in t.iter().enumerate() {
                ends[e].push(Port::new(CrossingId(ci), pi as u8));
            }
        }
        let mut semiarcs = Vec::with_capacity(n_edges);
        for (e, ports) in ends.iter().enumerate() {
            if ports.len() != 2 {
                return Err(DiagramError::LabelMultiplicity { label: e, count: ports.len() });
            }
            semiarcs.push(Some(Some([ports[0], ports[1]])));
        }
        let crossings = tuples.iter().map(|t| Some(t.map(SemiArcId))).collect();
        Ok(Diagram { crossings, semiarcs })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.iter().flatten().count()
    }

    pub fn semiarc_count(&self) -> usize {
        self.semiarcs.iter().flatten().count()
    }

    /// One past the largest semiarc id in use; the length of any per-semiarc table.
    pub fn semiarc_capacity(&self) -> usize {
        self.semiarcs.len()
    }

    pub fn crossing_capacity(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_unknot_loop(&self) -> bool {
        self.crossing_count() == 0
    }

    pub fn crossings(&self) -> impl Iterator<Item = Crossing> + '_ {
        self.crossings.iter().enumerate().filter_map(|(i, c)| c.map(|ports| Crossing { id: CrossingId(i), ports }))
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.crossings().map(|c| c.id)
    }

    pub fn semiarcs(&self) -> impl Iterator<Item = SemiArc> + '_ {
        self.semiarcs.iter().enumerate().filter_map(|(i, s)| s.map(|ends| SemiArc { id: SemiArcId(i), ends }))
    }

    pub fn semiarc_ids(&self) -> impl Iterator<Item = SemiArcId> + '_ {
        self.semiarcs().map(|s| s.id)
    }

    pub fn crossing(&self, id: CrossingId) -> Option<[SemiArcId; 4]> {
        self.crossings.get(id.0).copied().flatten()
    }

    pub fn has_crossing(&self, id: CrossingId) -> bool {
        self.crossing(id).is_some()
    }

    pub fn has_semiarc(&self, id: SemiArcId) -> bool {
        matches!(self.semiarcs.get(id.0), Some(Some(_)))
    }

    pub fn semiarc_ends(&self, id: SemiArcId) -> Option<[Port; 2]> {
        self.semiarcs.get(id.0).copied().flatten().flatten()
    }

    /// Semiarc attached at a port. Panics on a missing crossing; callers
    /// work on validated diagrams.
    pub fn at(&self, port: Port) -> SemiArcId {
        self.crossings[port.crossing.0].expect("live crossing")[port.index as usize]
    }

    /// The far endpoint of the semiarc leaving `port`.
    pub fn other_end(&self, port: Port) -> Port {
        let s = self.at(port);
        let [a, b] = self.semiarc_ends(s).expect("semiarc with ends");
        if a == port {
            b
        } else {
            a
        }
    }

    /// Face successor: walk the semiarc at `dart` to its far port and turn
    /// to the next port counterclockwise there.
    pub fn face_successor(&self, dart: Port) -> Port {
        self.other_end(dart).next_ccw()
    }

    /// Inverse of [`Diagram::face_successor`].
    pub fn face_predecessor(&self, dart: Port) -> Port {
        self.other_end(dart.prev_ccw())
    }

    /// The starting dart of a side.
    pub fn side_dart(&self, side: Side) -> Result<Port, DiagramError> {
        let ends = self.semiarc_ends(side.semiarc).ok_or(DiagramError::UnknownSemiArc(side.semiarc))?;
        Ok(if side.reversed { ends[1] } else { ends[0] })
    }

    /// The side whose starting dart is `dart`.
    pub fn dart_side(&self, dart: Port) -> Side {
        let s = self.at(dart);
        let ends = self.semiarc_ends(s).expect("semiarc with ends");
        Side::new(s, ends[0] != dart)
    }

    /// All darts of the face containing `dart`, starting from it.
    pub fn face_of(&self, dart: Port) -> Face {
        let mut darts = vec![dart];
        let mut cur = self.face_successor(dart);
        while cur != dart {
            darts.push(cur);
            cur = self.face_successor(cur);
        }
        Face { darts }
    }

    pub(crate) fn set_port(&mut self, port: Port, s: SemiArcId) {
        self.crossings[port.crossing.0].as_mut().expect("live crossing")[port.index as usize] = s;
    }

    /// Rewires semiarc `s` between two ports, updating both crossings.
    pub(crate) fn connect(&mut self, s: SemiArcId, a: Port, b: Port) {
        if self.semiarcs.len() <= s.0 {
            self.semiarcs.resize(s.0 + 1, None);
        }
        self.semiarcs[s.0] = Some(Some([a, b]));
        self.set_port(a, s);
        self.set_port(b, s);
    }

    pub(crate) fn alloc_semiarc(&mut self) -> SemiArcId {
        let slot = self.semiarcs.iter().position(Option::is_none);
        match slot {
            Some(i) => {
                self.semiarcs[i] = Some(Some([Port::new(CrossingId(usize::MAX), 0); 2]));
                SemiArcId(i)
            }
            None => {
                self.semiarcs.push(Some(Some([Port::new(CrossingId(usize::MAX), 0); 2])));
                SemiArcId(self.semiarcs.len() - 1)
            }
        }
    }

    pub(crate) fn alloc_crossing(&mut self) -> CrossingId {
        let placeholder = [SemiArcId(usize::MAX); 4];
        match self.crossings.iter().position(Option::is_none) {
            Some(i) => {
                self.crossings[i] = Some(placeholder);
                CrossingId(i)
            }
            None => {
                self.crossings.push(Some(placeholder));
                CrossingId(self.crossings.len() - 1)
            }
        }
    }

    pub(crate) fn free_semiarc(&mut self, s: SemiArcId) {
        self.semiarcs[s.0] = None;
        while matches!(self.semiarcs.last(), Some(None)) {
            self.semiarcs.pop();
        }
    }

    pub(crate) fn free_crossing(&mut self, c: CrossingId) {
        self.crossings[c.0] = None;
        while matches!(self.crossings.last(), Some(None)) {
            self.crossings.pop();
        }
    }

    pub(crate) fn set_closed_loop(&mut self, s: SemiArcId) {
        if self.semiarcs.len() <= s.0 {
            self.semiarcs.resize(s.0 + 1, None);
        }
        self.semiarcs[s.0] = Some(None);
    }

    /// Reports every structural violation; empty iff the diagram is a valid
    /// planar single-component knot diagram.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n_cross = self.crossing_count();
        if n_cross == 0 {
            let loops = self.semiarcs().filter(|s| s.ends.is_none()).count();
            if self.semiarc_count() == 0 {
                violations.push(Violation::Empty);
            } else if loops != 1 || self.semiarc_count() != 1 {
                violations.push(Violation::ComponentCount(self.semiarc_count()));
            }
            return ValidationReport { violations };
        }

        // Count endpoint claims per port.
        let mut claims = vec![[0usize; 4]; self.crossings.len()];
        for s in self.semiarcs() {
            let Some(ends) = s.ends else {
                violations.push(Violation::StrayLoop(s.id));
                continue;
            };
            for p in ends {
                match self.crossing(p.crossing) {
                    None => violations.push(Violation::MissingCrossing { semiarc: s.id, crossing: p.crossing }),
                    Some(ports) => {
                        claims[p.crossing.0][p.index as usize] += 1;
                        if ports[p.index as usize] != s.id {
                            violations.push(Violation::EndpointMismatch { semiarc: s.id, port: p });
                        }
                    }
                }
            }
        }
        for c in self.crossings() {
            for i in 0..4u8 {
                let port = Port::new(c.id, i);
                let s = c.ports[i as usize];
                if !self.has_semiarc(s) {
                    violations.push(Violation::DanglingPort { port, semiarc: s });
                }
                let count = claims[c.id.0][i as usize];
                if count != 1 {
                    violations.push(Violation::PortMultiplicity { port, count });
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }

        let components = self.component_count();
        if components != 1 {
            violations.push(Violation::ComponentCount(components));
        }
        let euler = self.euler_characteristic_unchecked();
        if euler != 2 {
            violations.push(Violation::NonPlanar { euler });
        }
        ValidationReport { violations }
    }

    pub fn ensure_valid(&self) -> Result<(), DiagramError> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(DiagramError::Invalid(v.to_string())),
        }
    }

    /// Number of closed strands, following each strand straight through
    /// every crossing. Requires a consistent port matching.
    pub fn component_count(&self) -> usize {
        if self.is_unknot_loop() {
            return self.semiarc_count();
        }
        let mut seen = vec![false; self.semiarcs.len()];
        let mut components = 0;
        for s in self.semiarcs() {
            if seen[s.id.0] {
                continue;
            }
            components += 1;
            let Some([start, _]) = s.ends else { continue };
            // port -> opposite(other_end(port)) is a permutation of ports,
            // so the walk returns to `start`.
            let mut port = start;
            loop {
                seen[self.at(port).0] = true;
                port = self.other_end(port).opposite();
                if port == start {
                    break;
                }
            }
        }
        components
    }

    /// Face cycles of the rotation system. The crossingless unknot has two
    /// faces with no darts.
    pub fn faces(&self) -> Result<Vec<Face>, DiagramError> {
        self.ensure_valid_structure()?;
        Ok(self.faces_unchecked())
    }

    pub(crate) fn faces_unchecked(&self) -> Vec<Face> {
        if self.is_unknot_loop() {
            return vec![Face { darts: Vec::new() }, Face { darts: Vec::new() }];
        }
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut faces = Vec::new();
        for c in self.crossing_ids() {
            for i in 0..4u8 {
                if seen[c.0][i as usize] {
                    continue;
                }
                let face = self.face_of(Port::new(c, i));
                for d in &face.darts {
                    seen[d.crossing.0][d.index as usize] = true;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// V - E + F over the rotation system; 2 for every planar diagram.
    pub fn euler_characteristic(&self) -> Result<i64, DiagramError> {
        self.ensure_valid_structure()?;
        Ok(self.euler_characteristic_unchecked())
    }

    pub(crate) fn euler_characteristic_unchecked(&self) -> i64 {
        if self.is_unknot_loop() {
            // A vertexless circle splits the sphere into two discs.
            return 2;
        }
        let v = self.crossing_count() as i64;
        let e = self.semiarc_count() as i64;
        let f = self.faces_unchecked().len() as i64;
        v - e + f
    }

    pub fn is_planar(&self) -> bool {
        self.euler_characteristic().map(|e| e == 2).unwrap_or(false)
    }

    /// Structural checks only (port matching), so faces and Euler
    /// characteristic can be computed on non-planar or multi-component maps.
    fn ensure_valid_structure(&self) -> Result<(), DiagramError> {
        let report = self.validate();
        let structural =
            report.violations.iter().find(|v| !matches!(v, Violation::NonPlanar { .. } | Violation::ComponentCount(_)));
        match structural {
            None => Ok(()),
            Some(v) => Err(DiagramError::Invalid(v.to_string())),
        }
    }

    /// Partition of the semiarcs into arcs, ids ordered by least member.
    pub fn arcs(&self) -> Result<ArcMap, DiagramError> {
        self.ensure_valid()?;
        Ok(self.arcs_unchecked())
    }

    pub(crate) fn arcs_unchecked(&self) -> ArcMap {
        let mut of_semiarc: Vec<Option<ArcId>> = vec![None; self.semiarcs.len()];
        let mut arcs = Vec::new();
        for s in self.semiarcs() {
            if of_semiarc[s.id.0].is_some() {
                continue;
            }
            let id = ArcId(arcs.len());
            let Some(ends) = s.ends else {
                of_semiarc[s.id.0] = Some(id);
                arcs.push(Arc { id, semiarcs: vec![s.id], ends: None });
                continue;
            };
            // Walk backwards through over ports to the terminal under port.
            // Every knot diagram with crossings has at least one under port
            // per strand, so the walk ends.
            let mut start = ends[0];
            while start.is_over() {
                start = self.other_end(start.opposite());
            }
            let first_end = start;
            let mut members = Vec::new();
            let mut port = start;
            let last_end = loop {
                let cur = self.at(port);
                members.push(cur);
                of_semiarc[cur.0] = Some(id);
                let far = self.other_end(port);
                if !far.is_over() {
                    break far;
                }
                port = far.opposite();
            };
            arcs.push(Arc { id, semiarcs: members, ends: Some([first_end, last_end]) });
        }
        ArcMap { arcs, of_semiarc }
    }

    /// Connected sum: cut semiarc `e1` here and `e2` in `other`, then join
    /// the loose ends crosswise. Ids of `other` are shifted past this
    /// diagram's; the shift is returned alongside. Of the two crosswise
    /// joins the planar one is kept.
    pub fn connected_sum(
        &self,
        e1: SemiArcId,
        other: &Diagram,
        e2: SemiArcId,
    ) -> Result<(Diagram, usize, usize), DiagramError> {
        let [p1, q1] = self.semiarc_ends(e1).ok_or(DiagramError::UnknownSemiArc(e1))?;
        let [p2, q2] = other.semiarc_ends(e2).ok_or(DiagramError::UnknownSemiArc(e2))?;
        let (xo, so) = (self.crossings.len(), self.semiarcs.len());
        let shift_port = |p: Port| Port::new(CrossingId(p.crossing.0 + xo), p.index);
        let mut base = self.clone();
        base.crossings.extend(other.crossings.iter().map(|c| c.map(|ports| ports.map(|s| SemiArcId(s.0 + so)))));
        base.semiarcs.extend(other.semiarcs.iter().map(|s| s.map(|e| e.map(|e| e.map(shift_port)))));
        let (p2, q2) = (shift_port(p2), shift_port(q2));
        let e2 = SemiArcId(e2.0 + so);
        for (a, b) in [(q2, p2), (p2, q2)] {
            let mut d = base.clone();
            d.connect(e1, p1, a);
            d.connect(e2, b, q1);
            if d.validate().is_valid() {
                return Ok((d, xo, so));
            }
        }
        Err(DiagramError::Invalid("no planar connected sum".into()))
    }

    /// Crossings reachable from `center` within `radius` semiarc hops.
    pub fn neighborhood(&self, centers: &[CrossingId], radius: usize) -> BTreeSet<CrossingId> {
        let mut set: BTreeSet<CrossingId> = centers.iter().copied().filter(|c| self.has_crossing(*c)).collect();
        let mut frontier: Vec<CrossingId> = set.iter().copied().collect();
        for _ in 0..radius {
            let mut next = Vec::new();
            for c in frontier {
                for i in 0..4 {
                    let n = self.other_end(Port::new(c, i)).crossing;
                    if set.insert(n) {
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        // X(1,4,2,5), X(3,6,4,1), X(5,2,6,3) shifted to 0-based labels.
        Diagram::from_edge_tuples(&[[0, 3, 1, 4], [2, 5, 3, 0], [4, 1, 5, 2]]).unwrap()
    }

    fn kink() -> Diagram {
        Diagram::from_edge_tuples(&[[0, 1, 1, 0]]).unwrap()
    }

    #[test]
    fn kink_is_valid_with_three_faces() {
        let d = kink();
        assert!(d.validate().is_valid(), "{:?}", d.validate());
        assert_eq!(d.faces().unwrap().len(), 3);
        assert_eq!(d.euler_characteristic().unwrap(), 2);
        assert_eq!(d.arcs().unwrap().len(), 1);
    }

    #[test]
    fn trefoil_arcs_and_faces() {
        let d = trefoil();
        assert!(d.validate().is_valid());
        let arcs = d.arcs().unwrap();
        assert_eq!(arcs.len(), 3);
        assert!(arcs.arcs.iter().all(|a| a.semiarcs.len() == 2));
        assert_eq!(d.faces().unwrap().len(), 5);
        let total: usize = d.faces().unwrap().iter().map(Face::len).sum();
        assert_eq!(total, 2 * d.semiarc_count());
    }

    #[test]
    fn unknot_loop() {
        let d = Diagram::unknot();
        assert!(d.validate().is_valid());
        assert_eq!(d.arcs().unwrap().len(), 1);
        assert_eq!(d.faces().unwrap().len(), 2);
        assert_eq!(d.euler_characteristic().unwrap(), 2);
    }

    #[test]
    fn port_referenced_twice_is_reported() {
        let d = Diagram::from_parts(
            vec![Crossing { id: CrossingId(0), ports: [SemiArcId(0), SemiArcId(1), SemiArcId(1), SemiArcId(0)] }],
            vec![
                SemiArc { id: SemiArcId(0), ends: Some([Port::new(CrossingId(0), 0), Port::new(CrossingId(0), 0)]) },
                SemiArc { id: SemiArcId(1), ends: Some([Port::new(CrossingId(0), 1), Port::new(CrossingId(0), 2)]) },
            ],
        );
        let report = d.validate();
        assert!(report.violations.iter().any(|v| matches!(v, Violation::PortMultiplicity { count: 2, .. })));
        assert!(report.violations.iter().any(|v| v.to_string().contains("port multiplicity")));
    }

    #[test]
    fn two_trefoils_are_two_components() {
        let t = [[0, 3, 1, 4], [2, 5, 3, 0], [4, 1, 5, 2]];
        let mut tuples = t.to_vec();
        tuples.extend(t.iter().map(|x| x.map(|e| e + 6)));
        let d = Diagram::from_edge_tuples(&tuples).unwrap();
        let report = d.validate();
        assert!(report.violations.contains(&Violation::ComponentCount(2)));
        assert!(report.violations.iter().any(|v| v.to_string() == "component count = 2"));
    }

    #[test]
    fn miswired_rotation_is_non_planar() {
        // Trefoil with the ports of one crossing listed clockwise: the under
        // pair stays 0/2 but the cyclic order is reversed.
        let d = Diagram::from_edge_tuples(&[[0, 4, 1, 3], [2, 5, 3, 0], [4, 1, 5, 2]]).unwrap();
        let euler = d.euler_characteristic().unwrap();
        assert_ne!(euler, 2);
        assert!(!d.is_planar());
        assert!(d.validate().violations.iter().any(|v| matches!(v, Violation::NonPlanar { .. })));
    }

    #[test]
    fn face_predecessor_inverts_successor() {
        let d = trefoil();
        for c in d.crossing_ids() {
            for i in 0..4 {
                let p = Port::new(c, i);
                assert_eq!(d.face_predecessor(d.face_successor(p)), p);
            }
        }
    }
}
