use std::fmt;
use std::str::FromStr;

use super::{Crossing, Diagram, DiagramError, EdgeId, Sign};

/// A word in the braid group on `strands` strands: letter `i` is the
/// generator crossing positions `i` and `i + 1` (left strand over), `-i` its
/// inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::InvalidBraid("need at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(DiagramError::InvalidBraid(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Diagram of the closure, crossings numbered in word order.
    pub fn closure(&self) -> Diagram {
        let k = self.strands;
        let start: Vec<EdgeId> = (1..=k as EdgeId).collect();
        let mut cur = start.clone();
        let mut next = k as EdgeId + 1;
        let mut crossings = Vec::with_capacity(self.letters.len());
        for (n, &l) in self.letters.iter().enumerate() {
            let left = l.unsigned_abs() as usize - 1;
            let right = left + 1;
            let (new_left, new_right) = (next, next + 1);
            next += 2;
            let (slots, sign) = if l > 0 {
                ([cur[right], new_right, new_left, cur[left]], Sign::Positive)
            } else {
                ([cur[left], cur[right], new_right, new_left], Sign::Negative)
            };
            crossings.push(Crossing::new(n as u32 + 1, slots, sign));
            cur[left] = new_left;
            cur[right] = new_right;
        }
        let mut loops = 0;
        for p in 0..k {
            if cur[p] == start[p] {
                loops += 1;
            }
        }
        for c in crossings.iter_mut() {
            for e in c.slots.iter_mut() {
                if let Some(p) = cur.iter().position(|x| x == e) {
                    if cur[p] != start[p] {
                        *e = start[p];
                    }
                }
            }
        }
        Diagram::from_parts(crossings, loops).normalized()
    }
}

impl FromStr for BraidWord {
    type Err = DiagramError;

    /// `"<k>: l1 l2 ..."`, optionally prefixed by `braid`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let s = s.strip_prefix("braid").unwrap_or(s).trim_start();
        let (k, rest) = s
            .split_once(':')
            .ok_or_else(|| DiagramError::Syntax("braid needs '<strands>: letters'".into()))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| DiagramError::Syntax(format!("bad strand count {k:?}")))?;
        let letters = rest
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| DiagramError::Syntax(format!("bad braid letter {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(k, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}
