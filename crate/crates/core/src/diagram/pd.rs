//! PD text format.
//!
//! Grammar: whitespace-separated tokens, `X(a,b,c,d)` for a crossing (edge
//! labels are positive integers, counterclockwise from the incoming
//! under-edge) and `O` for a crossing-free circle. Orientation of the
//! over-strands is inferred from the under-strands; a component that is over
//! at every crossing it meets is oriented so that its least label is followed
//! by the next integer, falling back to the order of crossings in the text.
//!
//! Serialization renumbers edges `1, 2, ...` along each component in
//! component order, writes crossings in their stored order separated by one
//! space, then one ` O` per free loop. Parsing the output reproduces the
//! diagram exactly, up to crossing ids being renumbered `1..n`.

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Crossing, Diagram, DiagramError, EdgeId, Sign};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    Unknown,
    In,
    Out,
}

fn tokenize(text: &str) -> Result<(Vec<Vec<EdgeId>>, usize), DiagramError> {
    let mut tuples = Vec::new();
    let mut loops = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    let syntax = |i: usize, msg: &str| DiagramError::Syntax(format!("{msg} at byte {i}"));
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' | b',' => i += 1,
            b'O' | b'o' => {
                loops += 1;
                i += 1;
            }
            b'X' | b'x' => {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                    i += 1;
                }
                if bytes.get(i) != Some(&b'(') {
                    return Err(syntax(i, "expected '('"));
                }
                let close = text[i..]
                    .find(')')
                    .map(|k| k + i)
                    .ok_or_else(|| syntax(i, "unclosed '('"))?;
                let inner = &text[i + 1..close];
                let mut labels = Vec::new();
                for part in inner.split(',') {
                    let part = part.trim();
                    let v: EdgeId = part
                        .parse()
                        .map_err(|_| syntax(i, &format!("bad edge label {part:?}")))?;
                    if v == 0 {
                        return Err(syntax(i, "edge labels start at 1"));
                    }
                    labels.push(v);
                }
                tuples.push(labels);
                i = close + 1;
            }
            c => return Err(syntax(i, &format!("unexpected character {:?}", c as char))),
        }
    }
    Ok((tuples, loops))
}

struct Roles<'a> {
    tuples: &'a [[EdgeId; 4]],
    partner: HashMap<(usize, usize), (usize, usize)>,
    role: Vec<[Role; 4]>,
}

impl Roles<'_> {
    fn set(&mut self, c: usize, s: usize, r: Role) -> Result<(), DiagramError> {
        let mut stack = vec![(c, s, r)];
        while let Some((c, s, r)) = stack.pop() {
            match self.role[c][s] {
                Role::Unknown => self.role[c][s] = r,
                cur if cur == r => continue,
                _ => {
                    return Err(DiagramError::InconsistentOrientation(format!(
                        "edge {} cannot be oriented",
                        self.tuples[c][s]
                    )))
                }
            }
            let flip = if r == Role::In { Role::Out } else { Role::In };
            let (pc, ps) = self.partner[&(c, s)];
            stack.push((pc, ps, flip));
            stack.push((c, (s + 2) % 4, flip));
        }
        Ok(())
    }
}

impl Diagram {
    pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
        let (raw, loops) = tokenize(text)?;
        let mut tuples = Vec::with_capacity(raw.len());
        for t in raw {
            let t: [EdgeId; 4] = t.try_into().map_err(|t: Vec<EdgeId>| {
                DiagramError::BadValence(format!("crossing with {} slots", t.len()))
            })?;
            tuples.push(t);
        }
        let mut occ: HashMap<EdgeId, Vec<(usize, usize)>> = HashMap::new();
        for (c, t) in tuples.iter().enumerate() {
            for (s, &e) in t.iter().enumerate() {
                occ.entry(e).or_default().push((c, s));
            }
        }
        let mut partner = HashMap::new();
        let mut labels: Vec<_> = occ.keys().copied().collect();
        labels.sort_unstable();
        for e in labels {
            let o = &occ[&e];
            if o.len() != 2 {
                return Err(DiagramError::BadValence(format!(
                    "edge {e} occurs {} times",
                    o.len()
                )));
            }
            partner.insert(o[0], o[1]);
            partner.insert(o[1], o[0]);
        }
        let mut roles = Roles {
            tuples: &tuples,
            partner,
            role: vec![[Role::Unknown; 4]; tuples.len()],
        };
        for c in 0..tuples.len() {
            roles.set(c, 0, Role::In)?;
        }
        for c in 0..tuples.len() {
            for s in [1, 3] {
                if roles.role[c][s] == Role::Unknown {
                    let (cc, ss) = orient_all_over(&roles, c, s);
                    roles.set(cc, ss, Role::In)?;
                }
            }
        }
        let crossings = tuples
            .iter()
            .enumerate()
            .map(|(c, &t)| {
                let sign = if roles.role[c][3] == Role::In {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                Crossing::new(c as u32 + 1, t, sign)
            })
            .collect();
        Diagram::new(crossings, loops)
    }

    /// Serializes after renumbering edges along components.
    pub fn to_pd(&self) -> String {
        let n = self.normalized();
        let mut out = String::new();
        for c in &n.crossings {
            if !out.is_empty() {
                out.push(' ');
            }
            let [a, b, cc, d] = c.slots;
            let _ = write!(out, "X({a},{b},{cc},{d})");
        }
        for _ in 0..n.free_loops {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push('O');
        }
        out
    }
}

/// Chooses the incoming end for an all-over component through `(c, s)`.
fn orient_all_over(roles: &Roles<'_>, c0: usize, s0: usize) -> (usize, usize) {
    // walk the strand assuming (c0, s0) is a head
    let mut edges = Vec::new();
    let mut heads = Vec::new();
    let (mut c, mut s) = (c0, s0);
    loop {
        edges.push(roles.tuples[c][s]);
        heads.push((c, s));
        let out = (c, (s + 2) % 4);
        let next = roles.partner[&out];
        (c, s) = next;
        if (c, s) == (c0, s0) {
            break;
        }
    }
    let n = edges.len();
    let i = (0..n).min_by_key(|&k| edges[k]).unwrap();
    let m = edges[i];
    let succ = edges[(i + 1) % n];
    let pred = edges[(i + n - 1) % n];
    let forward = if succ == m + 1 && pred != m + 1 {
        true
    } else if pred == m + 1 && succ != m + 1 {
        false
    } else if n == 2 {
        // tail of m should be the crossing listed first
        let head = heads[i].0;
        let tail = roles.partner[&heads[i]].0;
        tail < head
    } else {
        succ < pred
    };
    if forward {
        (c0, s0)
    } else {
        roles.partner[&(c0, (s0 + 2) % 4)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_loops_parse() {
        let d = Diagram::parse_pd("O").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
        assert_eq!(Diagram::parse_pd("O O").unwrap().component_count(), 2);
        assert_eq!(Diagram::parse_pd("").unwrap().component_count(), 0);
    }

    #[test]
    fn syntax_errors() {
        for bad in ["X(1,2", "Y(1,2,3,4)", "X(1,a,2,3)", "X(0,1,1,0)"] {
            assert!(
                matches!(Diagram::parse_pd(bad), Err(DiagramError::Syntax(_))),
                "{bad}"
            );
        }
        assert!(matches!(
            Diagram::parse_pd("X(1,2,2)"),
            Err(DiagramError::BadValence(_))
        ));
    }

    #[test]
    fn round_trip_trefoil() {
        let t = Diagram::parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let s = t.to_pd();
        assert_eq!(s, "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
        assert_eq!(Diagram::parse_pd(&s).unwrap(), t);
    }

    #[test]
    fn orientation_from_under_strands() {
        // Hopf link: every strand passes under once
        let h = Diagram::parse_pd("X(4,1,3,2) X(2,3,1,4)").unwrap();
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.writhe().abs(), 2);
    }
}
