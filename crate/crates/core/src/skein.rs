//! Base points, untangled diagrams and resolving trees.
//!
//! Traversing a diagram component by component, each from its base point, a
//! crossing is *bad* if it is first reached along its under-strand. A diagram
//! without bad crossings is untangled and represents a trivial link. The
//! resolving tree branches at the first bad crossing into the diagram with
//! that crossing switched (same base points) and the diagram with it
//! smoothed (fresh base points), until every leaf is untangled.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::algebra::{AlgebraError, ConwayAlgebra};
use crate::diagram::{CrossingId, Diagram, DiagramError, EdgeId, LabelMap, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("resolving tree exceeds {0} nodes")]
    TreeTooLarge(usize),
    #[error("bad base points: {0}")]
    BadBasePoints(String),
    #[error("{0} components is too many for a weighted simplex")]
    TooManyComponents(usize),
}

/// Which sign of crossing the relation `w(L) = w(switched) | w(smoothed)`
/// applies to. `Modern` uses it at right-handed crossings; `Old` at
/// left-handed ones, matching the older convention for the Conway
/// polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    Old,
    #[default]
    Modern,
}

impl Convention {
    /// Value at a crossing of sign `sign` from the values of the switched and
    /// smoothed diagrams.
    pub fn combine<A: ConwayAlgebra>(
        self,
        alg: &A,
        sign: Sign,
        switched: &A::Value,
        smoothed: &A::Value,
    ) -> Result<A::Value, AlgebraError> {
        match (self, sign) {
            (Convention::Modern, Sign::Positive) | (Convention::Old, Sign::Negative) => {
                alg.pipe(switched, smoothed)
            }
            _ => alg.star(switched, smoothed),
        }
    }
}

impl std::fmt::Display for Convention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convention::Old => "old",
            Convention::Modern => "modern",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "old" => Ok(Convention::Old),
            "modern" => Ok(Convention::Modern),
            _ => Err(format!("unknown convention {s:?}")),
        }
    }
}

/// One base point per component through a crossing, in traversal order.
pub type BasePoints = Vec<EdgeId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BaseStrategy {
    /// Components by least label, each based at its least label.
    #[default]
    LowestEdge,
    /// Component order and base edges drawn from a generator seeded by the
    /// seed and the diagram, so equal inputs give equal choices.
    Seeded(u64),
}

impl BaseStrategy {
    pub fn choose(&self, d: &Diagram) -> BasePoints {
        let comps = d.components();
        match *self {
            BaseStrategy::LowestEdge => comps.iter().map(|c| c.edges[0]).collect(),
            BaseStrategy::Seeded(seed) => {
                let mut h = DefaultHasher::new();
                seed.hash(&mut h);
                d.crossings().hash(&mut h);
                let mut rng = StdRng::seed_from_u64(h.finish());
                let mut bp: Vec<EdgeId> = comps
                    .iter()
                    .map(|c| c.edges[rng.gen_range(0..c.edges.len())])
                    .collect();
                bp.shuffle(&mut rng);
                bp
            }
        }
    }
}

pub fn check_base_points(d: &Diagram, bp: &[EdgeId]) -> Result<(), SkeinError> {
    let comps = d.components();
    if bp.len() != comps.len() {
        return Err(SkeinError::BadBasePoints(format!(
            "{} base points for {} components",
            bp.len(),
            comps.len()
        )));
    }
    let mut hit = vec![false; comps.len()];
    for &e in bp {
        let k = comps
            .iter()
            .position(|c| c.edges.contains(&e))
            .ok_or(SkeinError::Diagram(DiagramError::UnknownEdge(e)))?;
        if std::mem::replace(&mut hit[k], true) {
            return Err(SkeinError::BadBasePoints(format!("two base points on component {k}")));
        }
    }
    Ok(())
}

/// Bad crossings in the order they are reached.
pub fn bad_crossings(d: &Diagram, bp: &[EdgeId]) -> Vec<CrossingId> {
    let ends = d.edge_ends();
    let mut seen = HashSet::with_capacity(d.crossing_count());
    let mut bad = Vec::new();
    for &start in bp {
        let mut e = start;
        loop {
            let (c, s) = ends[&e].head;
            if seen.insert(c) && s == 0 {
                bad.push(d.crossings()[c].id);
            }
            e = d.next_edge(&ends, e);
            if e == start {
                break;
            }
        }
    }
    bad
}

pub fn first_bad(d: &Diagram, bp: &[EdgeId]) -> Option<CrossingId> {
    let ends = d.edge_ends();
    let mut seen = HashSet::with_capacity(d.crossing_count());
    for &start in bp {
        let mut e = start;
        loop {
            let (c, s) = ends[&e].head;
            if seen.insert(c) && s == 0 {
                return Some(d.crossings()[c].id);
            }
            e = d.next_edge(&ends, e);
            if e == start {
                break;
            }
        }
    }
    None
}

pub fn bad_count(d: &Diagram, bp: &[EdgeId]) -> usize {
    bad_crossings(d, bp).len()
}

pub fn is_untangled(d: &Diagram, bp: &[EdgeId]) -> bool {
    first_bad(d, bp).is_none()
}

/// Switches every bad crossing, giving an untangled diagram.
pub fn make_untangled(d: &Diagram, bp: &[EdgeId]) -> Result<Diagram, SkeinError> {
    check_base_points(d, bp)?;
    let mut out = d.clone();
    for id in bad_crossings(d, bp) {
        out = out.switch(id)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolvingTree {
    Leaf {
        components: usize,
    },
    Node {
        crossing: CrossingId,
        sign: Sign,
        switched: Box<ResolvingTree>,
        smoothed: Box<ResolvingTree>,
    },
}

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

impl ResolvingTree {
    pub fn build(d: &Diagram, strategy: &BaseStrategy, cap: usize) -> Result<Self, SkeinError> {
        Self::build_from(d, &strategy.choose(d), strategy, cap)
    }

    pub fn build_from(
        d: &Diagram,
        bp: &[EdgeId],
        strategy: &BaseStrategy,
        cap: usize,
    ) -> Result<Self, SkeinError> {
        check_base_points(d, bp)?;
        let mut count = 0;
        grow(d, bp, strategy, cap, false, &mut count)
    }

    /// Like `build_from`, but kinks and removable bigons are stripped from
    /// every child before it is resolved further.
    pub fn build_compressed(
        d: &Diagram,
        bp: &[EdgeId],
        strategy: &BaseStrategy,
        cap: usize,
    ) -> Result<Self, SkeinError> {
        check_base_points(d, bp)?;
        let mut count = 0;
        grow(d, bp, strategy, cap, true, &mut count)
    }

    pub fn node_count(&self) -> usize {
        match self {
            ResolvingTree::Leaf { .. } => 1,
            ResolvingTree::Node { switched, smoothed, .. } => 1 + switched.node_count() + smoothed.node_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ResolvingTree::Leaf { .. } => 0,
            ResolvingTree::Node { switched, smoothed, .. } => 1 + switched.depth().max(smoothed.depth()),
        }
    }

    pub fn fold<A: ConwayAlgebra>(&self, alg: &A, conv: Convention) -> Result<A::Value, AlgebraError> {
        match self {
            ResolvingTree::Leaf { components } => alg.constant(*components),
            ResolvingTree::Node { sign, switched, smoothed, .. } => {
                let s = switched.fold(alg, conv)?;
                let m = smoothed.fold(alg, conv)?;
                conv.combine(alg, *sign, &s, &m)
            }
        }
    }

    pub fn to_json(&self) -> Json {
        match self {
            ResolvingTree::Leaf { components } => json!({ "leaf": components }),
            ResolvingTree::Node { crossing, sign, switched, smoothed } => json!({
                "crossing": crossing,
                "sign": sign.symbol(),
                "switched": switched.to_json(),
                "smoothed": smoothed.to_json(),
            }),
        }
    }

    /// Graphviz rendering; leaves are labelled `a<n>`, inner nodes by
    /// crossing id and sign, edges by the operation taken.
    pub fn to_dot(&self) -> String {
        fn walk(t: &ResolvingTree, next: &mut usize, out: &mut String) -> usize {
            let me = *next;
            *next += 1;
            match t {
                ResolvingTree::Leaf { components } => {
                    let _ = writeln!(out, "  n{me} [shape=box, label=\"a{components}\"];");
                }
                ResolvingTree::Node { crossing, sign, switched, smoothed } => {
                    let _ = writeln!(out, "  n{me} [label=\"{crossing} ({sign})\"];");
                    let a = walk(switched, next, out);
                    let _ = writeln!(out, "  n{me} -> n{a} [label=\"switch\"];");
                    let b = walk(smoothed, next, out);
                    let _ = writeln!(out, "  n{me} -> n{b} [label=\"smooth\"];");
                }
            }
            me
        }
        let mut out = String::from("digraph resolving_tree {\n");
        let mut next = 0;
        walk(self, &mut next, &mut out);
        out.push_str("}\n");
        out
    }
}

fn remap(bp: &[EdgeId], map: &LabelMap) -> BasePoints {
    bp.iter().filter_map(|&e| map.get(e)).collect()
}

/// Strips R1 kinks and removable bigons, carrying base points along.
pub fn strip_kinks_and_bigons(d: &Diagram, bp: &[EdgeId]) -> (Diagram, BasePoints) {
    let mut d = d.clone();
    let mut bp = bp.to_vec();
    loop {
        let kink = d
            .crossings()
            .iter()
            .find(|c| (0..4).any(|k| c.slots[k] == c.slots[(k + 1) % 4]))
            .map(|c| c.id);
        if let Some(id) = kink {
            let (nd, map) = d.r1_remove_tracked(id).expect("kink is removable");
            bp = remap(&bp, &map);
            d = nd;
            continue;
        }
        let fm = d.face_map();
        let bigon = fm.faces.iter().find(|f| f.degree() == 2 && d.bigon_is_legal(f));
        if let Some(f) = bigon {
            let idx = [f.darts[0].crossing, f.darts[1].crossing];
            let (nd, map) = d.splice_straight(&idx);
            bp = remap(&bp, &map);
            d = nd;
            continue;
        }
        return (d, bp);
    }
}

fn grow(
    d: &Diagram,
    bp: &[EdgeId],
    strategy: &BaseStrategy,
    cap: usize,
    compress: bool,
    count: &mut usize,
) -> Result<ResolvingTree, SkeinError> {
    *count += 1;
    if *count > cap {
        return Err(SkeinError::TreeTooLarge(cap));
    }
    let Some(p) = first_bad(d, bp) else {
        return Ok(ResolvingTree::Leaf { components: d.component_count() });
    };
    let sign = d.crossing(p)?.sign;
    let sw = d.switch(p)?;
    let sm = d.smooth(p)?;
    let sm_bp = strategy.choose(&sm);
    let (switched, smoothed) = if compress {
        let (sw, sw_bp) = strip_kinks_and_bigons(&sw, bp);
        let (sm, sm_bp) = strip_kinks_and_bigons(&sm, &sm_bp);
        (grow(&sw, &sw_bp, strategy, cap, true, count)?, grow(&sm, &sm_bp, strategy, cap, true, count)?)
    } else {
        (grow(&sw, bp, strategy, cap, false, count)?, grow(&sm, &sm_bp, strategy, cap, false, count)?)
    };
    Ok(ResolvingTree::Node {
        crossing: p,
        sign,
        switched: Box::new(switched),
        smoothed: Box::new(smoothed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TermAlgebra;
    use crate::diagram::BraidWord;

    #[test]
    fn braid_closures_untangle() {
        let d = "2: 1 1 1".parse::<BraidWord>().unwrap().closure();
        let bp = BaseStrategy::LowestEdge.choose(&d);
        assert!(!is_untangled(&d, &bp));
        let u = make_untangled(&d, &bp).unwrap();
        assert!(is_untangled(&u, &bp));
    }

    #[test]
    fn unknot_tree_is_leaf() {
        let t = ResolvingTree::build(&Diagram::unlink(2), &BaseStrategy::LowestEdge, 10).unwrap();
        assert_eq!(t, ResolvingTree::Leaf { components: 2 });
        assert_eq!(t.to_json().to_string(), r#"{"leaf":2}"#);
    }

    #[test]
    fn trefoil_tree_folds() {
        let d = "2: 1 1 1".parse::<BraidWord>().unwrap().closure();
        let t = ResolvingTree::build(&d, &BaseStrategy::LowestEdge, 100).unwrap();
        assert!(t.node_count() >= 3);
        let v = t.fold(&TermAlgebra, Convention::Modern).unwrap();
        assert!(v.to_string().contains('|'));
        assert!(t.to_dot().starts_with("digraph"));
    }

    #[test]
    fn node_cap() {
        let d = "2: 1 1 1 1 1".parse::<BraidWord>().unwrap().closure();
        assert!(matches!(
            ResolvingTree::build(&d, &BaseStrategy::LowestEdge, 2),
            Err(SkeinError::TreeTooLarge(2))
        ));
    }

    #[test]
    fn base_point_validation() {
        let d = "2: 1 1".parse::<BraidWord>().unwrap().closure();
        assert!(check_base_points(&d, &[1]).is_err());
        let bp = BaseStrategy::Seeded(7).choose(&d);
        check_base_points(&d, &bp).unwrap();
    }

    #[test]
    fn figure_eight_compressed_tree() {
        let d = Diagram::parse_pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)").unwrap();
        let s = BaseStrategy::LowestEdge;
        let t = ResolvingTree::build_compressed(&d, &s.choose(&d), &s, 100).unwrap();
        assert_eq!(t.node_count(), 5);
        assert_eq!(t.fold(&TermAlgebra, Convention::Modern).unwrap().to_string(), "a1*(a2|a1)");
        let full = ResolvingTree::build(&d, &s, 100).unwrap();
        assert!(full.node_count() > 5);
    }
}
