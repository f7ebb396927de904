//! The invariant `w`: memoized skein recursion through an algebra, and
//! weighted simplices of sublinks.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value as Json};

use crate::algebra::ConwayAlgebra;
use crate::diagram::{CanonicalKey, Diagram, EdgeId};
use crate::poly::{LaurentPoly, VarId};
use crate::skein::{
    check_base_points, first_bad, strip_kinks_and_bigons, BaseStrategy, Convention, ResolvingTree, SkeinError,
    DEFAULT_NODE_CAP,
};
use crate::zoo::ThreeVar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub strategy: BaseStrategy,
    pub convention: Convention,
    /// Reuse values of diagrams with equal canonical keys.
    pub memo: bool,
    /// Remove kinks and bigons from child diagrams before recursing.
    pub simplify: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            strategy: BaseStrategy::LowestEdge,
            convention: Convention::Modern,
            memo: true,
            simplify: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub nodes: usize,
    pub memo_hits: usize,
}

pub struct Evaluator<'a, A: ConwayAlgebra> {
    alg: &'a A,
    opts: EvalOptions,
    memo: HashMap<CanonicalKey, A::Value>,
    stats: EvalStats,
}

impl<'a, A: ConwayAlgebra> Evaluator<'a, A> {
    pub fn new(alg: &'a A, opts: EvalOptions) -> Self {
        Evaluator { alg, opts, memo: HashMap::new(), stats: EvalStats::default() }
    }

    pub fn stats(&self) -> EvalStats {
        self.stats
    }

    pub fn evaluate(&mut self, d: &Diagram) -> Result<A::Value, SkeinError> {
        let bp = self.opts.strategy.choose(d);
        self.evaluate_from(d, &bp)
    }

    /// Evaluation starting from the given base points.
    pub fn evaluate_from(&mut self, d: &Diagram, bp: &[EdgeId]) -> Result<A::Value, SkeinError> {
        check_base_points(d, bp)?;
        self.eval(d, bp)
    }

    fn eval(&mut self, d: &Diagram, bp: &[EdgeId]) -> Result<A::Value, SkeinError> {
        self.stats.nodes += 1;
        let Some(p) = first_bad(d, bp) else {
            return Ok(self.alg.constant(d.component_count())?);
        };
        let key = if self.opts.memo {
            let k = d.canonical_key();
            if let Some(v) = self.memo.get(&k) {
                self.stats.memo_hits += 1;
                return Ok(v.clone());
            }
            Some(k)
        } else {
            None
        };
        let sign = d.crossing(p)?.sign;
        let sw = d.switch(p)?;
        let sm = d.smooth(p)?;
        let sm_bp = self.opts.strategy.choose(&sm);
        let (vs, vm) = if self.opts.simplify {
            let (sw, sw_bp) = strip_kinks_and_bigons(&sw, bp);
            let (sm, sm_bp) = strip_kinks_and_bigons(&sm, &sm_bp);
            (self.eval(&sw, &sw_bp)?, self.eval(&sm, &sm_bp)?)
        } else {
            (self.eval(&sw, bp)?, self.eval(&sm, &sm_bp)?)
        };
        let v = self.opts.convention.combine(self.alg, sign, &vs, &vm)?;
        if let Some(k) = key {
            self.memo.insert(k, v.clone());
        }
        Ok(v)
    }
}

pub fn evaluate<A: ConwayAlgebra>(alg: &A, d: &Diagram, opts: EvalOptions) -> Result<A::Value, SkeinError> {
    Evaluator::new(alg, opts).evaluate(d)
}

/// Builds the whole resolving tree, then folds it. No memo, no
/// simplification.
pub fn evaluate_naive<A: ConwayAlgebra>(
    alg: &A,
    d: &Diagram,
    strategy: BaseStrategy,
    conv: Convention,
) -> Result<A::Value, SkeinError> {
    let t = ResolvingTree::build(d, &strategy, DEFAULT_NODE_CAP)?;
    Ok(t.fold(alg, conv)?)
}

/// Three-variable values of a diagram and of its mirror image.
pub fn evaluate_mirror_pair(d: &Diagram, opts: EvalOptions) -> Result<(LaurentPoly, LaurentPoly), SkeinError> {
    let mut ev = Evaluator::new(&ThreeVar, opts);
    let a = ev.evaluate(d)?;
    let b = ev.evaluate(&d.mirror())?;
    debug_assert_eq!(b, a.swap_vars(VarId::X, VarId::Y));
    Ok((a, b))
}

pub const MAX_SIMPLEX_COMPONENTS: usize = 12;

/// Invariant of every nonempty sublink, indexed by component bitmask (bit
/// `i` for component `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSimplex<V> {
    pub vertices: usize,
    pub weights: BTreeMap<u32, V>,
}

impl<V: std::fmt::Display> WeightedSimplex<V> {
    pub fn to_json(&self) -> Json {
        let w: serde_json::Map<String, Json> = self
            .weights
            .iter()
            .map(|(m, v)| (m.to_string(), Json::String(v.to_string())))
            .collect();
        json!({ "vertices": self.vertices, "weights": w })
    }
}

pub fn weighted_simplex<A: ConwayAlgebra>(
    alg: &A,
    d: &Diagram,
    opts: EvalOptions,
) -> Result<WeightedSimplex<A::Value>, SkeinError> {
    let n = d.component_count();
    if n > MAX_SIMPLEX_COMPONENTS {
        return Err(SkeinError::TooManyComponents(n));
    }
    let mut ev = Evaluator::new(alg, opts);
    let mut weights = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub = d.delete_components(&keep)?;
        weights.insert(mask, ev.evaluate(&sub)?);
    }
    Ok(WeightedSimplex { vertices: n, weights })
}

/// Whether some bijection of vertices preserves every face weight.
pub fn simplex_equivalent<V: PartialEq>(a: &WeightedSimplex<V>, b: &WeightedSimplex<V>) -> bool {
    if a.vertices != b.vertices {
        return false;
    }
    let n = a.vertices;
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn image(perm: &[usize], mask: u32) -> u32 {
        (0..perm.len()).filter(|i| mask >> i & 1 == 1).map(|i| 1 << perm[i]).sum()
    }
    fn search<V: PartialEq>(
        k: usize,
        a: &WeightedSimplex<V>,
        b: &WeightedSimplex<V>,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.vertices;
        if k == n {
            return true;
        }
        for t in 0..n {
            if used[t] {
                continue;
            }
            perm[k] = t;
            // every face among vertices 0..=k that contains k
            let ok = (0u32..(1 << k)).all(|low| {
                let m = low | 1 << k;
                a.weights.get(&m) == b.weights.get(&image(&perm[..=k], m))
            });
            if ok {
                used[t] = true;
                if search(k + 1, a, b, perm, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        perm[k] = usize::MAX;
        false
    }
    search(0, a, b, &mut perm, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TermAlgebra;
    use crate::diagram::BraidWord;
    use crate::zoo::{Components, Linking, Mod3, TwoVar};

    fn braid(s: &str) -> Diagram {
        s.parse::<BraidWord>().unwrap().closure()
    }

    #[test]
    fn trefoil_mod3() {
        let o = EvalOptions::default();
        assert_eq!(evaluate(&Mod3, &braid("2: 1 1 1"), o).unwrap(), 2);
        assert_eq!(evaluate(&Mod3, &Diagram::unlink(1), o).unwrap(), 1);
    }

    #[test]
    fn unlinks_give_constants() {
        for n in 1..5 {
            assert_eq!(evaluate(&Components, &Diagram::unlink(n), EvalOptions::default()).unwrap(), n as u64);
        }
    }

    #[test]
    fn memo_agrees_with_naive() {
        for w in ["2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1", "3: 1 1 2 -1 2"] {
            let d = braid(w);
            for conv in [Convention::Old, Convention::Modern] {
                let naive = evaluate_naive(&TwoVar, &d, BaseStrategy::LowestEdge, conv).unwrap();
                let o = EvalOptions { convention: conv, ..Default::default() };
                assert_eq!(evaluate(&TwoVar, &d, o).unwrap(), naive, "{w}");
            }
        }
    }

    #[test]
    fn hopf_linking_simplex() {
        let h = braid("2: 1 1");
        let s = weighted_simplex(&Linking, &h, EvalOptions::default()).unwrap();
        assert_eq!(s.weights[&1].to_string(), "(1,0)");
        assert_eq!(s.weights[&2].to_string(), "(1,0)");
        assert_eq!(s.weights[&3].components, 2);
        assert_eq!(s.weights[&3].weight.abs(), 1);
        assert!(simplex_equivalent(&s, &s));
    }

    #[test]
    fn simplex_equivalence_up_to_relabeling() {
        let a = WeightedSimplex { vertices: 2, weights: BTreeMap::from([(1, 5), (2, 7), (3, 9)]) };
        let b = WeightedSimplex { vertices: 2, weights: BTreeMap::from([(1, 7), (2, 5), (3, 9)]) };
        let c = WeightedSimplex { vertices: 2, weights: BTreeMap::from([(1, 7), (2, 5), (3, 8)]) };
        assert!(simplex_equivalent(&a, &b));
        assert!(!simplex_equivalent(&a, &c));
    }

    #[test]
    fn free_terms_fold_without_memo() {
        let d = braid("2: 1 1");
        let v = evaluate_naive(&TermAlgebra, &d, BaseStrategy::LowestEdge, Convention::Modern).unwrap();
        assert_eq!(v.to_string().len(), "a2|a1".len());
    }
}
