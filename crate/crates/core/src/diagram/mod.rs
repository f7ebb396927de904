//! Oriented planar link diagrams.
//!
//! A diagram is a list of 4-valent crossings whose slots hold edge labels,
//! listed counterclockwise starting at the incoming under-edge (PD
//! convention), plus a count of crossing-free circles. Slot 0 is the incoming
//! under-strand and slot 2 the outgoing one; the over-strand occupies slots 1
//! and 3 and its direction fixes the crossing sign:
//!
//! ```text
//!        c (2)
//!          ^
//!  d (3) --+--> b (1)      over-strand d -> b : positive (right-handed)
//!          |               over-strand b -> d : negative
//!        a (0)
//! ```
//!
//! Diagrams are immutable values: every operation returns a new diagram and
//! edge labels survive operations wherever an edge survives, so callers can
//! track base points through moves.

mod braid;
mod canon;
mod faces;
mod moves;
mod ops;
mod pd;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use braid::BraidWord;
pub use canon::CanonicalKey;
pub use faces::{Dart, Face, FaceMap};
pub use moves::KinkSide;
pub use ops::LabelMap;

pub type EdgeId = u32;
pub type CrossingId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("diagram is not planar: {0}")]
    NonPlanar(String),
    #[error("bad valence: {0}")]
    BadValence(String),
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("no crossing with id {0}")]
    UnknownCrossing(CrossingId),
    #[error("no edge labelled {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is not on the outer face")]
    EdgeNotOnOuterFace(EdgeId),
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("move precondition failed: {0}")]
    MovePreconditionFailed(String),
    #[error("component selection is empty")]
    EmptySelection,
    #[error("component index {0} out of range")]
    ComponentOutOfRange(usize),
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: CrossingId,
    pub slots: [EdgeId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(id: CrossingId, slots: [EdgeId; 4], sign: Sign) -> Self {
        Crossing { id, slots, sign }
    }

    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// Same crossing with the over- and under-strand exchanged.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.slots;
        match self.sign {
            Sign::Positive => Crossing::new(self.id, [d, a, b, c], Sign::Negative),
            Sign::Negative => Crossing::new(self.id, [b, c, d, a], Sign::Positive),
        }
    }
}

/// Tail and head of an edge as `(crossing index, slot)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEnds {
    pub tail: (usize, usize),
    pub head: (usize, usize),
}

/// One closed strand of the diagram, edges in traversal order starting at
/// its least label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

impl Diagram {
    /// Validates and builds a diagram.
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let d = Diagram { crossings, free_loops };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_parts(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        Diagram { crossings, free_loops }
    }

    pub fn unlink(n: usize) -> Self {
        Diagram::from_parts(Vec::new(), n)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn crossing_index(&self, id: CrossingId) -> Option<usize> {
        self.crossings.iter().position(|c| c.id == id)
    }

    pub fn crossing(&self, id: CrossingId) -> Result<&Crossing, DiagramError> {
        self.crossings
            .iter()
            .find(|c| c.id == id)
            .ok_or(DiagramError::UnknownCrossing(id))
    }

    pub fn max_label(&self) -> EdgeId {
        self.crossings
            .iter()
            .flat_map(|c| c.slots)
            .max()
            .unwrap_or(0)
    }

    pub fn max_crossing_id(&self) -> CrossingId {
        self.crossings.iter().map(|c| c.id).max().unwrap_or(0)
    }

    pub fn edge_labels(&self) -> BTreeSet<EdgeId> {
        self.crossings.iter().flat_map(|c| c.slots).collect()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.crossings.iter().any(|c| c.slots.contains(&e))
    }

    /// Tail and head of every edge. Assumes a validated diagram.
    pub fn edge_ends(&self) -> HashMap<EdgeId, EdgeEnds> {
        let mut tails = HashMap::with_capacity(self.crossings.len() * 2);
        let mut heads = HashMap::with_capacity(self.crossings.len() * 2);
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.is_incoming(s) {
                    heads.insert(c.slots[s], (ci, s));
                } else {
                    tails.insert(c.slots[s], (ci, s));
                }
            }
        }
        tails
            .into_iter()
            .filter_map(|(e, tail)| heads.get(&e).map(|&head| (e, EdgeEnds { tail, head })))
            .collect()
    }

    /// For every `(crossing, slot)` the other occurrence of its edge label.
    pub(crate) fn partners(&self) -> Vec<[(usize, usize); 4]> {
        let mut first: HashMap<EdgeId, (usize, usize)> = HashMap::with_capacity(self.crossings.len() * 2);
        let mut out = vec![[(usize::MAX, 0); 4]; self.crossings.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if let Some(&(cj, sj)) = first.get(&c.slots[s]) {
                    out[ci][s] = (cj, sj);
                    out[cj][sj] = (ci, s);
                } else {
                    first.insert(c.slots[s], (ci, s));
                }
            }
        }
        out
    }

    /// The edge following `e` along the orientation.
    pub fn next_edge(&self, ends: &HashMap<EdgeId, EdgeEnds>, e: EdgeId) -> EdgeId {
        let (ci, s) = ends[&e].head;
        self.crossings[ci].slots[(s + 2) % 4]
    }

    /// Components that pass through crossings, ordered by least edge label.
    /// Free loops are not included; see [`Diagram::component_count`].
    pub fn components(&self) -> Vec<Component> {
        let ends = self.edge_ends();
        let mut labels: Vec<EdgeId> = ends.keys().copied().collect();
        labels.sort_unstable();
        let mut seen = std::collections::HashSet::with_capacity(labels.len());
        let mut out = Vec::new();
        for &start in &labels {
            if seen.contains(&start) {
                continue;
            }
            let mut edges = Vec::new();
            let mut e = start;
            loop {
                seen.insert(e);
                edges.push(e);
                e = self.next_edge(&ends, e);
                if e == start {
                    break;
                }
            }
            out.push(Component { edges });
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.free_loops
    }

    /// Crossing indices grouped by connected piece of the underlying graph.
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let partners = self.partners();
        for (ci, row) in partners.iter().enumerate() {
            for &(cj, _) in row {
                if cj == usize::MAX {
                    continue;
                }
                let (a, b) = (find(&mut parent, ci), find(&mut parent, cj));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_slot: HashMap<usize, usize> = HashMap::new();
        for ci in 0..n {
            let r = find(&mut parent, ci);
            let slot = *root_slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[slot].push(ci);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        match (self.crossings.is_empty(), self.free_loops) {
            (true, n) => n <= 1,
            (false, 0) => self.pieces().len() == 1,
            (false, _) => false,
        }
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let mut occ: HashMap<EdgeId, Vec<(usize, usize)>> = HashMap::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                occ.entry(c.slots[s]).or_default().push((ci, s));
            }
        }
        let mut ids = BTreeSet::new();
        for c in &self.crossings {
            if !ids.insert(c.id) {
                return Err(DiagramError::Syntax(format!("duplicate crossing id {}", c.id)));
            }
        }
        let mut labels: Vec<_> = occ.keys().copied().collect();
        labels.sort_unstable();
        for e in labels {
            let o = &occ[&e];
            if o.len() != 2 {
                return Err(DiagramError::BadValence(format!(
                    "edge {e} has {} endpoints, expected 2",
                    o.len()
                )));
            }
            let ins = o
                .iter()
                .filter(|&&(ci, s)| self.crossings[ci].is_incoming(s))
                .count();
            if ins != 1 {
                return Err(DiagramError::InconsistentOrientation(format!(
                    "edge {e} has {ins} heads"
                )));
            }
        }
        if !self.crossings.is_empty() {
            let fm = self.face_map();
            for piece in self.pieces() {
                let v = piece.len() as i64;
                let f = fm.faces_in_piece(&piece) as i64;
                if v - 2 * v + f != 2 {
                    return Err(DiagramError::NonPlanar(format!(
                        "piece with {v} crossings has {f} faces (V - E + F = {})",
                        v - 2 * v + f
                    )));
                }
            }
        }
        Ok(())
    }

    /// Re-runs validation; used by tests and after moves.
    pub fn check(&self) -> Result<(), DiagramError> {
        self.validate()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}
