use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Crossing, CrossingId, Diagram, DiagramError, EdgeId, Sign};

/// Where the edges of a diagram went after an operation that removed
/// crossings. Labels that were not merged map to themselves.
#[derive(Clone, Debug, Default)]
pub struct LabelMap {
    merged: HashMap<EdgeId, EdgeId>,
    alive: HashSet<EdgeId>,
}

impl LabelMap {
    /// New label of `e`, or `None` when its strand lost all its crossings or
    /// was deleted.
    pub fn get(&self, e: EdgeId) -> Option<EdgeId> {
        let r = self.merged.get(&e).copied().unwrap_or(e);
        self.alive.contains(&r).then_some(r)
    }
}

struct Labels {
    parent: HashMap<EdgeId, EdgeId>,
}

impl Labels {
    fn find(&mut self, e: EdgeId) -> EdgeId {
        let p = *self.parent.get(&e).unwrap_or(&e);
        if p == e {
            return e;
        }
        let r = self.find(p);
        self.parent.insert(e, r);
        r
    }

    fn union(&mut self, a: EdgeId, b: EdgeId) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent.insert(ra.max(rb), ra.min(rb));
        }
    }
}

impl Diagram {
    /// Drops the crossings at `drop` and joins each pair `(into, out_of)` of
    /// edges that met there. Every merged class that no longer touches a
    /// crossing becomes a free loop.
    pub(crate) fn rebuild(
        &self,
        drop: &BTreeSet<usize>,
        merges: &[(EdgeId, EdgeId)],
        extra_free: usize,
    ) -> (Diagram, LabelMap) {
        let mut uf = Labels { parent: HashMap::new() };
        for &(a, b) in merges {
            uf.union(a, b);
        }
        let mut crossings = Vec::with_capacity(self.crossings.len() - drop.len());
        let mut alive = HashSet::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            if drop.contains(&ci) {
                continue;
            }
            let mut c = *c;
            for e in c.slots.iter_mut() {
                *e = uf.find(*e);
                alive.insert(*e);
            }
            crossings.push(c);
        }
        let mut merged = HashMap::new();
        let mut classes = BTreeSet::new();
        for &(a, b) in merges {
            for e in [a, b] {
                let r = uf.find(e);
                merged.insert(e, r);
                classes.insert(r);
            }
        }
        let loops = classes.iter().filter(|r| !alive.contains(r)).count();
        (
            Diagram::from_parts(crossings, self.free_loops + loops + extra_free),
            LabelMap { merged, alive },
        )
    }

    fn index_of(&self, id: CrossingId) -> Result<usize, DiagramError> {
        self.crossing_index(id).ok_or(DiagramError::UnknownCrossing(id))
    }

    /// Exchanges over- and under-strand at one crossing.
    pub fn switch(&self, id: CrossingId) -> Result<Diagram, DiagramError> {
        let i = self.index_of(id)?;
        let mut crossings = self.crossings.clone();
        crossings[i] = crossings[i].switched();
        Ok(Diagram::from_parts(crossings, self.free_loops))
    }

    /// Orientation-respecting smoothing at one crossing.
    pub fn smooth(&self, id: CrossingId) -> Result<Diagram, DiagramError> {
        Ok(self.smooth_tracked(id)?.0)
    }

    pub fn smooth_tracked(&self, id: CrossingId) -> Result<(Diagram, LabelMap), DiagramError> {
        let i = self.index_of(id)?;
        let [a, b, c, d] = self.crossings[i].slots;
        let merges = match self.crossings[i].sign {
            Sign::Positive => [(a, b), (d, c)],
            Sign::Negative => [(a, d), (b, c)],
        };
        Ok(self.rebuild(&BTreeSet::from([i]), &merges, 0))
    }

    /// Deletes crossings letting both strands pass straight through.
    pub(crate) fn splice_straight(&self, idx: &[usize]) -> (Diagram, LabelMap) {
        let mut merges = Vec::new();
        for &i in idx {
            let c = &self.crossings[i];
            merges.push((c.slots[0], c.slots[2]));
            merges.push((c.slots[c.over_in_slot()], c.slots[c.over_out_slot()]));
        }
        self.rebuild(&idx.iter().copied().collect(), &merges, 0)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Diagram {
        Diagram::from_parts(
            self.crossings.iter().map(Crossing::switched).collect(),
            self.free_loops,
        )
    }

    /// Same diagram with every crossing's orientation data reversed on all
    /// components.
    pub fn reverse(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.slots;
                // under-strand now enters at the old slot c
                Crossing::new(c.id, [cc, d, a, b], c.sign)
            })
            .collect();
        Diagram::from_parts(crossings, self.free_loops)
    }

    /// Juxtaposition; labels and ids of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let (lo, io) = (self.max_label(), self.max_crossing_id());
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| {
            Crossing::new(c.id + io, c.slots.map(|e| e + lo), c.sign)
        }));
        Diagram::from_parts(crossings, self.free_loops + other.free_loops)
    }

    /// Connected sum along `e1` of `self` and `e2` of `other`. `None` picks
    /// a free loop of that diagram. On the sphere every edge borders some
    /// face both summands can be opened into, so no outer-face condition
    /// arises.
    pub fn connected_sum(
        &self,
        e1: Option<EdgeId>,
        other: &Diagram,
        e2: Option<EdgeId>,
    ) -> Result<Diagram, DiagramError> {
        for (d, e) in [(self, e1), (other, e2)] {
            match e {
                Some(e) if !d.has_edge(e) => return Err(DiagramError::UnknownEdge(e)),
                None if d.free_loops == 0 => {
                    return Err(DiagramError::MovePreconditionFailed(
                        "no free loop to sum along".into(),
                    ))
                }
                _ => {}
            }
        }
        let lo = self.max_label();
        let mut u = self.disjoint_union(other);
        match (e1, e2.map(|e| e + lo)) {
            (Some(a), Some(b)) => {
                // the heads swap: a now runs into b's head and vice versa
                let heads: Vec<(usize, usize)> = u
                    .crossings
                    .iter()
                    .enumerate()
                    .flat_map(|(ci, c)| (0..4).map(move |s| (ci, s, *c)))
                    .filter(|&(_, s, c)| c.is_incoming(s) && (c.slots[s] == a || c.slots[s] == b))
                    .map(|(ci, s, _)| (ci, s))
                    .collect();
                for (ci, s) in heads {
                    let x = &mut u.crossings[ci].slots[s];
                    *x = if *x == a { b } else { a };
                }
            }
            _ => u.free_loops -= 1,
        }
        Ok(u)
    }

    /// Keeps only the listed components (indices into the full component
    /// list: crossing components by least label, then free loops).
    pub fn delete_components(&self, keep: &[usize]) -> Result<Diagram, DiagramError> {
        Ok(self.delete_components_tracked(keep)?.0)
    }

    pub fn delete_components_tracked(&self, keep: &[usize]) -> Result<(Diagram, LabelMap), DiagramError> {
        if keep.is_empty() {
            return Err(DiagramError::EmptySelection);
        }
        let comps = self.components();
        let total = comps.len() + self.free_loops;
        if let Some(&bad) = keep.iter().find(|&&k| k >= total) {
            return Err(DiagramError::ComponentOutOfRange(bad));
        }
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let mut gone = HashSet::new();
        for (k, comp) in comps.iter().enumerate() {
            if !keep.contains(&k) {
                gone.extend(comp.edges.iter().copied());
            }
        }
        let kept_loops = keep.iter().filter(|&&k| k >= comps.len()).count();
        let mut drop = BTreeSet::new();
        let mut merges = Vec::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            let under_gone = gone.contains(&c.slots[0]);
            let over_gone = gone.contains(&c.slots[1]);
            if !under_gone && !over_gone {
                continue;
            }
            drop.insert(ci);
            if !under_gone {
                merges.push((c.slots[0], c.slots[2]));
            }
            if !over_gone {
                merges.push((c.slots[c.over_in_slot()], c.slots[c.over_out_slot()]));
            }
        }
        let stripped = Diagram::from_parts(self.crossings.clone(), 0);
        let (mut d, map) = stripped.rebuild(&drop, &merges, 0);
        d.free_loops += kept_loops;
        Ok((d, map))
    }

    /// Labels renumbered `1..` along components in order, keeping crossing
    /// ids and order. Used for serialization.
    pub fn normalized(&self) -> Diagram {
        let ends = self.edge_ends();
        let mut relabel: HashMap<EdgeId, EdgeId> = HashMap::new();
        let mut next = 1;
        for comp in self.components() {
            let start = if comp.edges.len() == 2 && self.all_over(&comp.edges) {
                // ambiguous orientation on re-parse: start at the edge whose
                // tail crossing is listed first
                let (e0, e1) = (comp.edges[0], comp.edges[1]);
                if ends[&e1].tail.0 < ends[&e0].tail.0 { 1 } else { 0 }
            } else {
                0
            };
            let n = comp.edges.len();
            for k in 0..n {
                relabel.insert(comp.edges[(start + k) % n], next);
                next += 1;
            }
        }
        Diagram::from_parts(
            self.crossings
                .iter()
                .map(|c| Crossing::new(c.id, c.slots.map(|e| relabel[&e]), c.sign))
                .collect(),
            self.free_loops,
        )
    }

    fn all_over(&self, edges: &[EdgeId]) -> bool {
        self.crossings
            .iter()
            .all(|c| !edges.contains(&c.slots[0]) && !edges.contains(&c.slots[2]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
    }

    #[test]
    fn smoothing_trefoil_gives_two_components() {
        let t = trefoil();
        let s = t.smooth(1).unwrap();
        s.check().unwrap();
        assert_eq!(s.crossing_count(), 2);
        assert_eq!(s.component_count(), 2);
    }

    #[test]
    fn smoothing_kink_gives_two_loops() {
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        let pos = k.crossings()[0].sign;
        let s = k.smooth(1).unwrap();
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(s.free_loops(), 2, "{pos:?}");
        let s = k.switch(1).unwrap().smooth(1).unwrap();
        assert_eq!(s.free_loops(), 2);
    }

    #[test]
    fn mirror_negates_writhe() {
        let t = trefoil();
        assert_eq!(t.mirror().writhe(), -t.writhe());
        t.mirror().check().unwrap();
    }

    #[test]
    fn reverse_keeps_sign() {
        let t = trefoil();
        let r = t.reverse();
        r.check().unwrap();
        assert_eq!(r.writhe(), t.writhe());
    }

    #[test]
    fn connected_sum_counts() {
        let t = trefoil();
        let s = t.connected_sum(Some(1), &t.mirror(), Some(3)).unwrap();
        s.check().unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.component_count(), 1);
        assert!(s.is_connected());
        let u = t.connected_sum(Some(2), &Diagram::unlink(1), None).unwrap();
        assert_eq!(u.crossing_count(), 3);
        assert_eq!(u.component_count(), 1);
        assert!(matches!(
            t.connected_sum(Some(99), &t, Some(1)),
            Err(DiagramError::UnknownEdge(99))
        ));
    }

    #[test]
    fn delete_components_of_hopf() {
        let h = Diagram::parse_pd("X(4,1,3,2) X(2,3,1,4)").unwrap();
        assert_eq!(h.component_count(), 2);
        let d = h.delete_components(&[0]).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.free_loops(), 1);
        assert!(matches!(h.delete_components(&[]), Err(DiagramError::EmptySelection)));
        assert!(matches!(h.delete_components(&[2]), Err(DiagramError::ComponentOutOfRange(2))));
    }

    #[test]
    fn normalized_is_consecutive() {
        let t = Diagram::parse_pd("X(10,40,20,50) X(30,60,40,10) X(50,20,60,30)").unwrap();
        assert_eq!(t.normalized().to_pd(), trefoil().to_pd());
    }
}
