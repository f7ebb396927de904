use std::collections::BTreeSet;

use super::{Crossing, CrossingId, Diagram, DiagramError, EdgeId, Face, LabelMap, Sign};

/// Side of the edge, looking along its orientation, where a new kink goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KinkSide {
    Left,
    Right,
}

fn failed(msg: impl Into<String>) -> DiagramError {
    DiagramError::MovePreconditionFailed(msg.into())
}

impl Diagram {
    fn head_slot(&self, e: EdgeId) -> Result<(usize, usize), DiagramError> {
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.slots[s] == e && c.is_incoming(s) {
                    return Ok((ci, s));
                }
            }
        }
        Err(DiagramError::UnknownEdge(e))
    }

    /// Adds a kink on edge `e`. The edge keeps its label up to the kink.
    pub fn apply_r1_add(&self, e: EdgeId, side: KinkSide, sign: Sign) -> Result<Diagram, DiagramError> {
        let (hc, hs) = self.head_slot(e)?;
        let f = self.max_label() + 1;
        let g = f + 1;
        let slots = match (side, sign) {
            (KinkSide::Right, Sign::Negative) => [e, f, f, g],
            (KinkSide::Right, Sign::Positive) => [f, f, g, e],
            (KinkSide::Left, Sign::Positive) => [e, g, f, f],
            (KinkSide::Left, Sign::Negative) => [f, e, g, f],
        };
        let mut crossings = self.crossings.clone();
        crossings[hc].slots[hs] = g;
        crossings.push(Crossing::new(self.max_crossing_id() + 1, slots, sign));
        Ok(Diagram::from_parts(crossings, self.free_loops))
    }

    /// Removes a crossing that bounds a 1-gon.
    pub fn apply_r1_remove(&self, id: CrossingId) -> Result<Diagram, DiagramError> {
        Ok(self.r1_remove_tracked(id)?.0)
    }

    pub fn r1_remove_tracked(&self, id: CrossingId) -> Result<(Diagram, LabelMap), DiagramError> {
        let i = self.crossing_index(id).ok_or(DiagramError::UnknownCrossing(id))?;
        let s = self.crossings[i].slots;
        if !(0..4).any(|k| s[k] == s[(k + 1) % 4]) {
            return Err(failed(format!("crossing {id} does not bound a 1-gon")));
        }
        Ok(self.splice_straight(&[i]))
    }

    /// Pushes edge `over` across edge `under` through a face they share,
    /// creating a bigon.
    pub fn apply_r2_add(&self, over: EdgeId, under: EdgeId) -> Result<Diagram, DiagramError> {
        if over == under {
            return Err(failed("R2 needs two distinct edges"));
        }
        for e in [over, under] {
            if !self.has_edge(e) {
                return Err(DiagramError::UnknownEdge(e));
            }
        }
        let fm = self.face_map();
        let walk_dir = |face: &Face, e: EdgeId| -> Option<bool> {
            face.darts
                .iter()
                .zip(&face.edges)
                .find(|&(_, &x)| x == e)
                .map(|(d, _)| !self.crossings[d.crossing].is_incoming(d.slot))
        };
        let (f1, f2) = fm
            .faces
            .iter()
            .find_map(|f| Some((walk_dir(f, over)?, walk_dir(f, under)?)))
            .ok_or_else(|| failed(format!("edges {over} and {under} share no face")))?;
        let (e1a, e2a) = (over, under);
        let base = self.max_label();
        let (e1b, e1c, e2b, e2c) = (base + 1, base + 2, base + 3, base + 4);
        let (x1, x2) = match (f2, f1) {
            // face left of the under edge; the over edge crosses it twice
            (true, false) => ([e2a, e1b, e2b, e1a], [e2b, e1b, e2c, e1c]),
            (true, true) => ([e2a, e1b, e2b, e1c], [e2b, e1b, e2c, e1a]),
            (false, true) => ([e2a, e1a, e2b, e1b], [e2b, e1c, e2c, e1b]),
            (false, false) => ([e2a, e1c, e2b, e1b], [e2b, e1a, e2c, e1b]),
        };
        // the over strand enters through the earlier of its two pieces
        let rank = |e: EdgeId| [e1a, e1b, e1c].iter().position(|&x| x == e);
        let sign = |s: [EdgeId; 4]| {
            if rank(s[3]) < rank(s[1]) { Sign::Positive } else { Sign::Negative }
        };
        let (s1, s2) = (sign(x1), sign(x2));
        let (h1, h2) = (self.head_slot(over)?, self.head_slot(under)?);
        let mut crossings = self.crossings.clone();
        crossings[h1.0].slots[h1.1] = e1c;
        crossings[h2.0].slots[h2.1] = e2c;
        let id = self.max_crossing_id();
        crossings.push(Crossing::new(id + 1, x1, s1));
        crossings.push(Crossing::new(id + 2, x2, s2));
        let d = Diagram::from_parts(crossings, self.free_loops);
        d.check()
            .map_err(|e| failed(format!("edges {over} and {under} cannot form a bigon: {e}")))?;
        Ok(d)
    }

    /// Removes two crossings forming a bigon with one strand over at both.
    pub fn apply_r2_remove(&self, c1: CrossingId, c2: CrossingId) -> Result<Diagram, DiagramError> {
        Ok(self.r2_remove_tracked(c1, c2)?.0)
    }

    pub fn r2_remove_tracked(&self, c1: CrossingId, c2: CrossingId) -> Result<(Diagram, LabelMap), DiagramError> {
        let i = self.crossing_index(c1).ok_or(DiagramError::UnknownCrossing(c1))?;
        let j = self.crossing_index(c2).ok_or(DiagramError::UnknownCrossing(c2))?;
        if i == j {
            return Err(failed("R2 needs two distinct crossings"));
        }
        if !self.is_r2_pair(i, j) {
            return Err(failed(format!(
                "crossings {c1} and {c2} do not bound an R2 bigon"
            )));
        }
        Ok(self.splice_straight(&[i, j]))
    }

    /// A bigon face between crossings `i` and `j` whose two sides are over
    /// at both ends and under at both ends respectively.
    pub(crate) fn is_r2_pair(&self, i: usize, j: usize) -> bool {
        let fm = self.face_map();
        fm.faces.iter().any(|f| {
            if f.degree() != 2 {
                return false;
            }
            let cs = [f.darts[0].crossing, f.darts[1].crossing];
            if !(cs == [i, j] || cs == [j, i]) {
                return false;
            }
            self.bigon_is_legal(f)
        })
    }

    pub(crate) fn bigon_is_legal(&self, f: &Face) -> bool {
        if f.degree() != 2 || f.darts[0].crossing == f.darts[1].crossing {
            return false;
        }
        let mut over = 0;
        let mut under = 0;
        for &e in &f.edges {
            let ends: Vec<usize> = [f.darts[0].crossing, f.darts[1].crossing]
                .iter()
                .flat_map(|&c| {
                    (0..4)
                        .filter(move |&s| self.crossings[c].slots[s] == e)
                        .map(move |s| s % 2)
                })
                .collect();
            match ends.as_slice() {
                [1, 1] => over += 1,
                [0, 0] => under += 1,
                _ => {}
            }
        }
        over == 1 && under == 1
    }

    /// Whether a 3-gon supports a Reidemeister III move.
    pub fn r3_supported(&self, f: &Face) -> bool {
        if f.degree() != 3 {
            return false;
        }
        let cs: BTreeSet<usize> = f.darts.iter().map(|d| d.crossing).collect();
        if cs.len() != 3 {
            return false;
        }
        let ends = self.edge_ends();
        f.edges.iter().any(|e| {
            let en = ends[e];
            en.tail.1 % 2 == 1 && en.head.1 % 2 == 1
        })
    }

    /// Slides one strand across the crossing of the other two.
    pub fn apply_r3(&self, f: &Face) -> Result<Diagram, DiagramError> {
        if f.degree() != 3 {
            return Err(failed(format!("face is a {}-gon, not a 3-gon", f.degree())));
        }
        for &e in &f.edges {
            if !self.has_edge(e) {
                return Err(DiagramError::UnknownEdge(e));
            }
        }
        let cs: BTreeSet<usize> = f.darts.iter().map(|d| d.crossing).collect();
        if cs.len() != 3 {
            return Err(failed("3-gon does not have three distinct corners"));
        }
        if !self.r3_supported(f) {
            return Err(failed("no side of the 3-gon is over at both corners"));
        }
        let ends = self.edge_ends();
        let mut writes = Vec::new();
        for &e in &f.edges {
            let en = ends[&e];
            let (tc, ts) = en.tail;
            let (hc, hs) = en.head;
            if !cs.contains(&tc) || !cs.contains(&hc) {
                return Err(failed(format!("side {e} leaves the 3-gon")));
            }
            let a0 = self.crossings[tc].slots[(ts + 2) % 4];
            let a1 = self.crossings[hc].slots[(hs + 2) % 4];
            writes.push((hc, hs, a0));
            writes.push((hc, (hs + 2) % 4, e));
            writes.push((tc, (ts + 2) % 4, e));
            writes.push((tc, ts, a1));
        }
        let mut crossings = self.crossings.clone();
        for (c, s, e) in writes {
            crossings[c].slots[s] = e;
        }
        let d = Diagram::from_parts(crossings, self.free_loops);
        d.check().map_err(|e| failed(format!("R3 result invalid: {e}")))?;
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::BraidWord;

    #[test]
    fn r1_remove_kink() {
        let k = Diagram::parse_pd("X(1,2,2,1)").unwrap();
        let u = k.apply_r1_remove(1).unwrap();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.free_loops(), 1);
        let t = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert!(matches!(
            t.apply_r1_remove(1),
            Err(DiagramError::MovePreconditionFailed(_))
        ));
    }

    #[test]
    fn r1_add_all_variants() {
        let t = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        for side in [KinkSide::Left, KinkSide::Right] {
            for sign in [Sign::Positive, Sign::Negative] {
                let d = t.apply_r1_add(3, side, sign).unwrap();
                d.check().unwrap();
                assert_eq!(d.crossing_count(), 4);
                assert_eq!(d.component_count(), 1);
                assert_eq!(d.writhe(), t.writhe() + sign.value());
                let back = d.apply_r1_remove(4).unwrap();
                assert_eq!(back.canonical_key(), t.canonical_key());
            }
        }
    }

    #[test]
    fn r2_add_then_remove() {
        let t = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let mut tried = 0;
        for a in 1..=6 {
            for b in 1..=6 {
                if let Ok(d) = t.apply_r2_add(a, b) {
                    tried += 1;
                    d.check().unwrap();
                    assert_eq!(d.crossing_count(), 5);
                    assert_eq!(d.writhe(), t.writhe());
                    let back = d.apply_r2_remove(4, 5).unwrap();
                    assert_eq!(back.canonical_key(), t.canonical_key());
                }
            }
        }
        assert!(tried > 0);
    }

    #[test]
    fn r3_changes_face_census() {
        // closure of s1 s2 s1 on three strands: R3 takes it to s2 s1 s2
        let d: Diagram = "3: 1 2 1".parse::<BraidWord>().unwrap().closure();
        let faces = d.faces().unwrap();
        let tri = faces
            .iter()
            .find(|f| d.r3_supported(f))
            .expect("a supporting 3-gon");
        let r = d.apply_r3(tri).unwrap();
        r.check().unwrap();
        assert_eq!(r.crossing_count(), 3);
        assert_eq!(r.component_count(), d.component_count());
    }
}
