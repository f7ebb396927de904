use std::collections::HashMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use super::{Diagram, EdgeId};

/// Relabeling-independent encoding of a diagram up to planar isomorphism of
/// each connected piece. Equal keys mean equal diagrams up to crossing ids,
/// edge labels, component order and the order of pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Short stable digest for display and cache files.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(&self.0);
        let mut s = String::with_capacity(16);
        for b in &h[..8] {
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

fn push_label(out: &mut Vec<u8>, v: u32, wide: bool) {
    if wide {
        out.extend_from_slice(&(v as u16).to_be_bytes());
    } else {
        out.push(v as u8);
    }
}

impl Diagram {
    pub fn canonical_key(&self) -> CanonicalKey {
        let ends = self.edge_ends();
        let wide = self.crossings.len() * 2 >= 255;
        let mut piece_keys: Vec<Vec<u8>> = self
            .pieces()
            .iter()
            .map(|piece| self.piece_key(piece, &ends, wide))
            .collect();
        piece_keys.sort();
        let mut out = Vec::new();
        push_label(&mut out, self.free_loops as u32, true);
        push_label(&mut out, piece_keys.len() as u32, true);
        for k in piece_keys {
            push_label(&mut out, k.len() as u32, true);
            out.extend(k);
        }
        CanonicalKey(out)
    }

    fn piece_key(
        &self,
        piece: &[usize],
        ends: &HashMap<EdgeId, super::EdgeEnds>,
        wide: bool,
    ) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        let mut local = vec![usize::MAX; self.crossings.len()];
        for (k, &c) in piece.iter().enumerate() {
            local[c] = k;
        }
        let starts: Vec<EdgeId> = piece
            .iter()
            .flat_map(|&c| {
                let cr = &self.crossings[c];
                (0..4).filter(move |&s| !cr.is_incoming(s)).map(move |s| cr.slots[s])
            })
            .collect();
        let mut label: HashMap<EdgeId, u32> = HashMap::with_capacity(piece.len() * 2);
        let mut visited: Vec<usize> = Vec::with_capacity(piece.len());
        let mut seen = vec![false; piece.len()];
        for &start in &starts {
            label.clear();
            visited.clear();
            seen.iter_mut().for_each(|s| *s = false);
            let mut next_label = 0u32;
            let mut from = Some(start);
            while let Some(s0) = from.take() {
                let mut e = s0;
                loop {
                    label.insert(e, next_label);
                    next_label += 1;
                    let hc = ends[&e].head.0;
                    if !seen[local[hc]] {
                        seen[local[hc]] = true;
                        visited.push(hc);
                    }
                    e = self.next_edge(ends, e);
                    if e == s0 {
                        break;
                    }
                }
                'scan: for &c in &visited {
                    for s in 0..4 {
                        let x = self.crossings[c].slots[s];
                        if !label.contains_key(&x) {
                            from = Some(x);
                            break 'scan;
                        }
                    }
                }
            }
            let mut rows: Vec<[u32; 5]> = piece
                .iter()
                .map(|&c| {
                    let cr = &self.crossings[c];
                    let s = cr.slots.map(|e| label[&e]);
                    [s[0], s[1], s[2], s[3], (cr.sign.value() > 0) as u32]
                })
                .collect();
            rows.sort_unstable();
            let mut key = Vec::with_capacity(rows.len() * 5);
            for r in rows {
                for v in r {
                    push_label(&mut key, v, wide);
                }
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.unwrap_or_default()
    }
}
