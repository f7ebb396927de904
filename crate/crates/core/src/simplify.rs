//! Reduction of untangled diagrams to crossingless ones by Reidemeister
//! moves that never add crossings.
//!
//! An f-gon is a disk cut out by at most two strand arcs: a 1-gon is an arc
//! from a crossing back to itself, a 2-gon two arcs joining two crossings.
//! Each step picks an innermost f-gon `X` (one containing no other) and
//! removes it by R1 or R2 when nothing crosses it, and otherwise applies R3
//! to a triangle inside `X` with a side on its boundary, which pushes one
//! crossing out of `X`. Regions are taken on the plane obtained by
//! puncturing a chosen outer face of each connected piece.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{CanonicalKey, CrossingId, Diagram, DiagramError, EdgeId, Face, FaceMap};
use crate::skein::{check_base_points, is_untangled, BasePoints, SkeinError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplifyError {
    #[error("diagram is not untangled with respect to the base points")]
    NotUntangled,
    #[error("no applicable move: {0}")]
    Stuck(String),
    #[error("3-gon inside an f-gon with no base point does not support R3: {0}")]
    UnsupportedTriangle(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Skein(#[from] SkeinError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "move")]
pub enum Move {
    R1 { crossing: CrossingId },
    R2 { crossings: [CrossingId; 2] },
    R3 { face: Vec<EdgeId> },
}

impl Move {
    /// Replays the move through the public move API.
    pub fn apply(&self, d: &Diagram) -> Result<Diagram, DiagramError> {
        match self {
            Move::R1 { crossing } => d.apply_r1_remove(*crossing),
            Move::R2 { crossings: [a, b] } => d.apply_r2_remove(*a, *b),
            Move::R3 { face } => {
                let f = face_with_edges(d, face).ok_or_else(|| {
                    DiagramError::MovePreconditionFailed(format!("no face with edges {face:?}"))
                })?;
                d.apply_r3(&f)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    #[serde(flatten)]
    pub mv: Move,
    pub crossings_after: usize,
}

impl MoveRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("move serializes")
    }
}

/// The face whose boundary uses exactly these edges.
pub fn face_with_edges(d: &Diagram, edges: &[EdgeId]) -> Option<Face> {
    let want: BTreeSet<EdgeId> = edges.iter().copied().collect();
    d.face_map()
        .faces
        .into_iter()
        .find(|f| f.edges.iter().copied().collect::<BTreeSet<_>>() == want && f.degree() == edges.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FGonWitness {
    /// Number of corners: 0 for a free loop, 1 or 2 otherwise.
    pub kind: usize,
    pub corners: Vec<CrossingId>,
    /// Faces making up the disk, as indices into the face map.
    pub faces: Vec<usize>,
    /// Edges of the bounding arcs.
    pub boundary: Vec<EdgeId>,
    pub innermost: bool,
}

impl FGonWitness {
    pub fn is_empty(&self) -> bool {
        self.faces.len() == 1
    }
}

struct Walk {
    /// `(crossing, slot entered)` for each step.
    steps: Vec<(usize, usize)>,
    edges: Vec<EdgeId>,
    /// Slot of the start crossing through which the walk came back.
    returned: Option<usize>,
}

fn walk(d: &Diagram, partners: &[[(usize, usize); 4]], p: usize, s: usize) -> Walk {
    let mut steps = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let (mut c, mut out) = (p, s);
    loop {
        edges.push(d.crossings()[c].slots[out]);
        let (nc, ns) = partners[c][out];
        if nc == p {
            return Walk { steps, edges, returned: Some(ns) };
        }
        if !seen.insert(nc) {
            edges.pop();
            return Walk { steps, edges, returned: None };
        }
        steps.push((nc, ns));
        c = nc;
        out = (ns + 2) % 4;
    }
}

fn quadrant(a: usize, b: usize) -> Option<usize> {
    if (a + 1) % 4 == b {
        Some(a)
    } else if (b + 1) % 4 == a {
        Some(b)
    } else {
        None
    }
}

fn flood(fm: &FaceMap, partners: &[[(usize, usize); 4]], start: usize, wall: &HashSet<EdgeId>, d: &Diagram) -> BTreeSet<usize> {
    let mut inside = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(f) = stack.pop() {
        for dart in &fm.faces[f].darts {
            let e = d.crossings()[dart.crossing].slots[dart.slot];
            if wall.contains(&e) {
                continue;
            }
            let (c2, s2) = partners[dart.crossing][dart.slot];
            let g = fm.dart_face[c2][s2];
            if inside.insert(g) {
                stack.push(g);
            }
        }
    }
    inside
}

/// Outer face of every connected piece: left of its least edge, or of
/// `marker` for the piece containing it.
fn outer_faces(d: &Diagram, fm: &FaceMap, marker: Option<EdgeId>) -> BTreeSet<usize> {
    let ends = d.edge_ends();
    let mut out = BTreeSet::new();
    for piece in d.pieces() {
        let edges: BTreeSet<EdgeId> = piece.iter().flat_map(|&c| d.crossings()[c].slots).collect();
        let e = match marker {
            Some(m) if edges.contains(&m) => m,
            _ => *edges.iter().next().expect("piece has edges"),
        };
        let (c, s) = ends[&e].tail;
        out.insert(fm.dart_face[c][s]);
    }
    out
}

/// Every 1-gon and 2-gon of the diagram not containing an outer face.
pub fn find_fgons(d: &Diagram, marker: Option<EdgeId>) -> Vec<FGonWitness> {
    let fm = d.face_map();
    let partners = d.partners();
    let outer = outer_faces(d, &fm, marker);
    let mut found: Vec<FGonWitness> = Vec::new();
    let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let ids: Vec<CrossingId> = d.crossings().iter().map(|c| c.id).collect();
    let mut push = |kind: usize, corners: Vec<usize>, wall: HashSet<EdgeId>, start: usize, check: Option<usize>| {
        let region = flood(&fm, &partners, start, &wall, d);
        if region.iter().any(|f| outer.contains(f)) {
            return;
        }
        if let Some(q) = check {
            // the corner at q must be a single quadrant
            let n = (0..4).filter(|&k| region.contains(&fm.dart_face[q][k])).count();
            if n != 1 {
                return;
            }
        }
        let faces: Vec<usize> = region.into_iter().collect();
        if !seen.insert((kind, faces.clone())) {
            return;
        }
        let mut boundary: Vec<EdgeId> = wall.into_iter().collect();
        boundary.sort_unstable();
        let mut corners: Vec<CrossingId> = corners.iter().map(|&c| ids[c]).collect();
        corners.sort_unstable();
        found.push(FGonWitness { kind, corners, faces, boundary, innermost: false });
    };
    for p in 0..d.crossing_count() {
        let walks: Vec<Walk> = (0..4).map(|s| walk(d, &partners, p, s)).collect();
        for s in 0..4 {
            let w = &walks[s];
            if let Some(t) = w.returned {
                if let Some(qd) = quadrant(s, t) {
                    let wall = w.edges.iter().copied().collect();
                    push(1, vec![p], wall, fm.dart_face[p][qd], None);
                }
            }
            let (w1, w2) = (&walks[s], &walks[(s + 1) % 4]);
            let in2: Vec<usize> = w2.steps.iter().map(|x| x.0).collect();
            let meet = w1
                .steps
                .iter()
                .enumerate()
                .find_map(|(i, &(c, _))| in2.iter().position(|&x| x == c).map(|j| (i, j)));
            if let Some((i, j)) = meet {
                let (q, t1) = w1.steps[i];
                let t2 = w2.steps[j].1;
                if quadrant(t1, t2).is_none() {
                    continue;
                }
                let wall = w1.edges[..=i].iter().chain(&w2.edges[..=j]).copied().collect();
                push(2, vec![p, q], wall, fm.dart_face[p][s], Some(q));
            }
        }
    }
    let sets: Vec<BTreeSet<usize>> = found.iter().map(|f| f.faces.iter().copied().collect()).collect();
    for (i, f) in found.iter_mut().enumerate() {
        f.innermost = !sets
            .iter()
            .enumerate()
            .any(|(j, s)| j != i && s.len() < sets[i].len() && s.is_subset(&sets[i]));
    }
    found.sort_by(|a, b| a.faces.cmp(&b.faces).then(a.kind.cmp(&b.kind)));
    found
}

/// An innermost f-gon; a free loop counts as a 0-gon.
pub fn find_innermost_fgon(d: &Diagram) -> Option<FGonWitness> {
    if d.free_loops() > 0 {
        return Some(FGonWitness { kind: 0, corners: vec![], faces: vec![], boundary: vec![], innermost: true });
    }
    find_fgons(d, None).into_iter().find(|f| f.innermost)
}

/// Triangles inside `x` with a side on its boundary.
pub fn find_empty_triangles(d: &Diagram, x: &FGonWitness) -> Vec<Face> {
    let fm = d.face_map();
    x.faces
        .iter()
        .map(|&i| &fm.faces[i])
        .filter(|f| f.degree() == 3 && f.edges.iter().any(|e| x.boundary.contains(e)))
        .filter(|f| f.darts.iter().map(|d| d.crossing).collect::<BTreeSet<_>>().len() == 3)
        .cloned()
        .collect()
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub diagram: Diagram,
    pub base_points: BasePoints,
    pub moves: Vec<MoveRecord>,
}

struct State {
    d: Diagram,
    bp: BasePoints,
    moves: Vec<MoveRecord>,
    visited: HashSet<(CanonicalKey, Vec<EdgeId>)>,
}

impl State {
    fn record(&mut self, d: Diagram, bp: BasePoints, mv: Move) {
        self.moves.push(MoveRecord { mv, crossings_after: d.crossing_count() });
        self.d = d;
        self.bp = bp;
    }

    fn try_r1(&mut self, id: CrossingId) -> bool {
        match self.d.r1_remove_tracked(id) {
            Ok((nd, map)) => {
                let bp = self.bp.iter().filter_map(|&e| map.get(e)).collect();
                self.record(nd, bp, Move::R1 { crossing: id });
                true
            }
            Err(_) => false,
        }
    }

    fn try_r2(&mut self, a: CrossingId, b: CrossingId) -> bool {
        match self.d.r2_remove_tracked(a, b) {
            Ok((nd, map)) => {
                let bp = self.bp.iter().filter_map(|&e| map.get(e)).collect();
                self.record(nd, bp, Move::R2 { crossings: [a, b] });
                true
            }
            Err(_) => false,
        }
    }

    /// R3 on `f` if the result is still untangled and not seen before.
    fn try_r3(&mut self, f: &Face) -> bool {
        let Ok(nd) = self.d.apply_r3(f) else { return false };
        if !is_untangled(&nd, &self.bp) {
            return false;
        }
        let key = (nd.canonical_key(), self.bp.clone());
        if !self.visited.insert(key) {
            return false;
        }
        let bp = self.bp.clone();
        self.record(nd, bp, Move::R3 { face: f.edges.clone() });
        true
    }

    fn id(&self, c: usize) -> CrossingId {
        self.d.crossings()[c].id
    }

    fn remove_fgon(&mut self, x: &FGonWitness) -> bool {
        if !x.is_empty() {
            return false;
        }
        match x.corners.as_slice() {
            [p] => self.try_r1(*p),
            [p, q] => self.try_r2(*p, *q),
            _ => false,
        }
    }

    fn shrink_fgon(&mut self, x: &FGonWitness) -> Result<bool, SimplifyError> {
        let tris = find_empty_triangles(&self.d, x);
        let fm = self.d.face_map();
        let touched: HashSet<EdgeId> = x
            .faces
            .iter()
            .flat_map(|&i| fm.faces[i].edges.iter().copied())
            .collect();
        let clear = !self.bp.iter().any(|e| touched.contains(e));
        for f in &tris {
            if !self.d.r3_supported(f) {
                if clear {
                    return Err(SimplifyError::UnsupportedTriangle(format!("face {:?}", f.edges)));
                }
                continue;
            }
            if self.try_r3(f) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn any_move(&mut self) -> bool {
        let kink = self
            .d
            .crossings()
            .iter()
            .find(|c| (0..4).any(|k| c.slots[k] == c.slots[(k + 1) % 4]))
            .map(|c| c.id);
        if let Some(id) = kink {
            return self.try_r1(id);
        }
        let fm = self.d.face_map();
        for f in &fm.faces {
            if f.degree() == 2 && self.d.bigon_is_legal(f) {
                let (a, b) = (self.id(f.darts[0].crossing), self.id(f.darts[1].crossing));
                if self.try_r2(a, b) {
                    return true;
                }
            }
        }
        for f in &fm.faces {
            if self.d.r3_supported(f) && self.try_r3(f) {
                return true;
            }
        }
        false
    }
}

/// Reduces an untangled diagram to one without crossings. Free loops are
/// kept. `outer_edge` picks the outer face as the left side of that edge;
/// by default each piece uses its least edge.
pub fn reduce_untangled(d: &Diagram, bp: &[EdgeId], outer_edge: Option<EdgeId>) -> Result<Reduction, SimplifyError> {
    check_base_points(d, bp)?;
    if !is_untangled(d, bp) {
        return Err(SimplifyError::NotUntangled);
    }
    let mut st = State { d: d.clone(), bp: bp.to_vec(), moves: Vec::new(), visited: HashSet::new() };
    st.visited.insert((d.canonical_key(), st.bp.clone()));
    while st.d.crossing_count() > 0 {
        let fgons = find_fgons(&st.d, outer_edge);
        let mut done = false;
        for x in fgons.iter().filter(|x| x.innermost) {
            if st.remove_fgon(x) || st.shrink_fgon(x)? {
                done = true;
                break;
            }
        }
        if !done {
            for x in fgons.iter().filter(|x| !x.innermost) {
                if st.remove_fgon(x) || st.shrink_fgon(x)? {
                    done = true;
                    break;
                }
            }
        }
        if !done && !st.any_move() {
            return Err(SimplifyError::Stuck(format!(
                "{} crossings left: {}",
                st.d.crossing_count(),
                st.d.to_pd()
            )));
        }
    }
    Ok(Reduction { diagram: st.d, base_points: st.bp, moves: st.moves })
}
