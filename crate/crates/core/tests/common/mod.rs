#![allow(dead_code)]

//! Shared test helpers: random diagrams and moves, fixture loading, and
//! numeric oracles that share no code with the library's evaluator.

use std::collections::{BTreeSet, HashMap};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use skein::diagram::{BraidWord, Diagram, KinkSide, Sign};

pub fn braid(w: &str) -> Diagram {
    w.parse::<BraidWord>().unwrap().closure()
}

pub fn pd(s: &str) -> Diagram {
    Diagram::parse_pd(s).unwrap()
}

pub fn unknot() -> Diagram {
    Diagram::unlink(1)
}

pub fn hopf() -> Diagram {
    braid("2: 1 1")
}

pub fn trefoil() -> Diagram {
    pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
}

pub fn figure_eight() -> Diagram {
    pd("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)")
}

/// `(name, diagram)` rows of a fixture CSV under `fixtures/`.
pub fn fixtures(file: &str) -> Vec<(String, Diagram)> {
    let path = format!("{}/fixtures/{file}", env!("CARGO_MANIFEST_DIR"));
    let mut rdr = csv::Reader::from_path(path).unwrap();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            let d = match &r[1] {
                "pd" => pd(&r[2]),
                "braid" => braid(&r[2]),
                k => panic!("unknown kind {k}"),
            };
            (r[0].to_string(), d)
        })
        .collect()
}

pub fn random_braid_word(rng: &mut StdRng, max_strands: usize, max_len: usize) -> BraidWord {
    let k = rng.gen_range(2..=max_strands);
    let n = rng.gen_range(1..=max_len);
    let letters = (0..n)
        .map(|_| {
            let i = rng.gen_range(1..k) as i32;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(k, letters).unwrap()
}

pub fn random_braid(rng: &mut StdRng, max_strands: usize, max_len: usize) -> Diagram {
    random_braid_word(rng, max_strands, max_len).closure()
}

/// Applies one random Reidemeister move that is applicable to `d`. R1 and
/// R2 moves may add or remove crossings; R3 keeps the count.
pub fn random_move(rng: &mut StdRng, d: &Diagram) -> Option<(String, Diagram)> {
    let edges: Vec<u32> = d.edge_labels().into_iter().collect();
    if edges.is_empty() && d.free_loops() > 0 {
        let kink = if rng.gen_bool(0.5) { "X(1,2,2,1)" } else { "X(2,2,1,1)" };
        return Some(("R1+ loop".into(), pd(kink).disjoint_union(&Diagram::unlink(d.free_loops() - 1))));
    }
    for _ in 0..50 {
        match rng.gen_range(0..5) {
            0 if !edges.is_empty() => {
                let e = *edges.choose(rng).unwrap();
                let side = if rng.gen_bool(0.5) { KinkSide::Left } else { KinkSide::Right };
                let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
                if let Ok(n) = d.apply_r1_add(e, side, sign) {
                    return Some((format!("R1+ {e}"), n));
                }
            }
            1 if edges.len() >= 2 => {
                let (a, b) = (*edges.choose(rng).unwrap(), *edges.choose(rng).unwrap());
                if let Ok(n) = d.apply_r2_add(a, b) {
                    return Some((format!("R2+ {a} {b}"), n));
                }
            }
            2 => {
                let kinks: Vec<u32> = d
                    .crossings()
                    .iter()
                    .filter(|c| (0..4).any(|k| c.slots[k] == c.slots[(k + 1) % 4]))
                    .map(|c| c.id)
                    .collect();
                if let Some(&id) = kinks.choose(rng) {
                    return Some((format!("R1- {id}"), d.apply_r1_remove(id).unwrap()));
                }
            }
            3 => {
                let ids: Vec<u32> = d.crossings().iter().map(|c| c.id).collect();
                if ids.len() >= 2 {
                    let (a, b) = (*ids.choose(rng).unwrap(), *ids.choose(rng).unwrap());
                    if let Ok(n) = d.apply_r2_remove(a, b) {
                        return Some((format!("R2- {a} {b}"), n));
                    }
                }
            }
            _ => {
                let faces: Vec<_> = d.face_map().faces.into_iter().filter(|f| d.r3_supported(f)).collect();
                if let Some(f) = faces.choose(rng) {
                    return Some((format!("R3 {:?}", f.edges), d.apply_r3(f).unwrap()));
                }
            }
        }
    }
    None
}

/// Cycles of a braid's permutation, counting untouched strands.
pub fn permutation_cycles(strands: usize, letters: &[i32]) -> usize {
    let mut perm: Vec<usize> = (0..strands).collect();
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for s in 0..strands {
        if !seen[s] {
            cycles += 1;
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = perm[t];
            }
        }
    }
    cycles
}

/// Raw crossing data `(slots, +1|-1)` copied out of a diagram. Slot 0 is the
/// incoming under-strand, slot 2 the outgoing one; the over-strand enters at
/// slot 3 for a positive crossing and at slot 1 for a negative one.
#[derive(Clone, Debug)]
pub struct RawPd {
    pub xs: Vec<([u32; 4], i8)>,
    pub loops: usize,
}

impl RawPd {
    pub fn of(d: &Diagram) -> RawPd {
        RawPd {
            xs: d
                .crossings()
                .iter()
                .map(|c| (c.slots, if c.sign == Sign::Positive { 1 } else { -1 }))
                .collect(),
            loops: d.free_loops(),
        }
    }

    fn incoming(&self, x: usize, s: usize) -> bool {
        match s {
            0 => true,
            2 => false,
            3 => self.xs[x].1 > 0,
            _ => self.xs[x].1 < 0,
        }
    }

    /// For each edge, the crossing and slot where it ends.
    fn heads(&self) -> HashMap<u32, (usize, usize)> {
        let mut h = HashMap::new();
        for (i, (s, _)) in self.xs.iter().enumerate() {
            for (k, &e) in s.iter().enumerate() {
                if self.incoming(i, k) {
                    h.insert(e, (i, k));
                }
            }
        }
        h
    }

    /// Closed strands as edge cycles, ordered by least edge.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let heads = self.heads();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut labels: Vec<u32> = heads.keys().copied().collect();
        labels.sort_unstable();
        for e0 in labels {
            if seen.contains(&e0) {
                continue;
            }
            let mut cyc = vec![];
            let mut e = e0;
            while seen.insert(e) {
                cyc.push(e);
                let (x, s) = heads[&e];
                e = self.xs[x].0[(s + 2) % 4];
            }
            out.push(cyc);
        }
        out
    }

    /// Whether some strand never passes under, so that a PD code alone
    /// leaves its direction open.
    pub fn has_all_over_strand(&self) -> bool {
        let heads = self.heads();
        self.cycles().iter().any(|c| c.iter().all(|e| heads[e].1 != 0))
    }

    pub fn components(&self) -> usize {
        self.cycles().len() + self.loops
    }

    pub fn writhe(&self) -> i64 {
        self.xs.iter().map(|x| x.1 as i64).sum()
    }

    /// First crossing met from below when walking each strand from its
    /// least edge, strands in order of least edge.
    fn first_bad(&self) -> Option<usize> {
        let heads = self.heads();
        let mut met = vec![false; self.xs.len()];
        for cyc in self.cycles() {
            for e in cyc {
                let (x, s) = heads[&e];
                if !met[x] {
                    met[x] = true;
                    if s == 0 {
                        return Some(x);
                    }
                }
            }
        }
        None
    }

    fn switched(&self, x: usize) -> RawPd {
        let mut r = self.clone();
        let ([a, b, c, d], sg) = self.xs[x];
        r.xs[x] = if sg > 0 { ([d, a, b, c], -1) } else { ([b, c, d, a], 1) };
        r
    }

    fn smoothed(&self, x: usize) -> RawPd {
        let ([a, b, c, d], sg) = self.xs[x];
        let joins = if sg > 0 { [(a, b), (d, c)] } else { [(a, d), (b, c)] };
        let mut rest: Vec<([u32; 4], i8)> = self.xs.clone();
        rest.remove(x);
        let mut rep: HashMap<u32, u32> = HashMap::new();
        fn find(rep: &HashMap<u32, u32>, mut e: u32) -> u32 {
            while let Some(&p) = rep.get(&e) {
                if p == e {
                    break;
                }
                e = p;
            }
            e
        }
        for (u, v) in joins {
            let (ru, rv) = (find(&rep, u), find(&rep, v));
            if ru != rv {
                rep.insert(ru.max(rv), ru.min(rv));
            }
        }
        let mut loops = self.loops;
        let classes: BTreeSet<u32> = [a, b, c, d].iter().map(|&e| find(&rep, e)).collect();
        for cl in classes {
            let used = rest.iter().any(|(s, _)| s.iter().any(|&e| find(&rep, e) == cl));
            if !used {
                loops += 1;
            }
        }
        for (s, _) in rest.iter_mut() {
            for e in s.iter_mut() {
                *e = find(&rep, *e);
            }
        }
        RawPd { xs: rest, loops }
    }

    /// Conway polynomial at `z` by the skein relation
    /// `C(L+) - C(L-) = z C(L0)`, resolving the first crossing met from
    /// below until the diagram is descending.
    pub fn conway_at(&self, z: f64) -> f64 {
        match self.first_bad() {
            None => {
                if self.components() == 1 {
                    1.0
                } else {
                    0.0
                }
            }
            Some(x) => {
                let s = self.switched(x).conway_at(z);
                let m = self.smoothed(x).conway_at(z);
                if self.xs[x].1 > 0 {
                    s + z * m
                } else {
                    s - z * m
                }
            }
        }
    }

    /// The same resolution with leaves `n mod 3` and both operations given
    /// by `u . v = 1 - u - v mod 3`.
    pub fn mod3(&self) -> u8 {
        match self.first_bad() {
            None => (self.components() % 3) as u8,
            Some(x) => {
                let (s, m) = (self.switched(x).mod3(), self.smoothed(x).mod3());
                (7 - s - m) % 3
            }
        }
    }

    /// Jones polynomial at `t = q` from the Kauffman bracket state sum,
    /// with `A = q^(-1/4)`.
    pub fn jones_at(&self, q: f64) -> f64 {
        let a = q.powf(-0.25);
        let delta = -a * a - 1.0 / (a * a);
        let n = self.xs.len();
        assert!(n <= 20, "state sum too large");
        let mut total = 0.0;
        for state in 0u32..(1 << n) {
            let mut uf: HashMap<u32, u32> = HashMap::new();
            fn find(uf: &mut HashMap<u32, u32>, e: u32) -> u32 {
                let p = *uf.entry(e).or_insert(e);
                if p == e {
                    return e;
                }
                let r = find(uf, p);
                uf.insert(e, r);
                r
            }
            let mut pow = 0i32;
            for (i, ([p, q2, r, s], _)) in self.xs.iter().enumerate() {
                let (j1, j2) = if state >> i & 1 == 0 {
                    pow += 1;
                    ((p, q2), (r, s))
                } else {
                    pow -= 1;
                    ((p, s), (q2, r))
                };
                for (u, v) in [j1, j2] {
                    let (ru, rv) = (find(&mut uf, *u), find(&mut uf, *v));
                    if ru != rv {
                        uf.insert(ru, rv);
                    }
                }
            }
            let keys: Vec<u32> = uf.keys().copied().collect();
            let circles: BTreeSet<u32> = keys.into_iter().map(|e| find(&mut uf, e)).collect();
            let k = circles.len() + self.loops;
            total += a.powi(pow) * delta.powi(k as i32 - 1);
        }
        (-a.powi(3)).powi(-(self.writhe() as i32)) * total
    }
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-6 * a.abs().max(b.abs()).max(1.0)
}
