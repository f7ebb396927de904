mod common;

use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use skein::algebra::TermAlgebra;
use skein::diagram::Diagram;
use skein::invariants::{evaluate, evaluate_mirror_pair, evaluate_naive, weighted_simplex, EvalOptions};
use skein::poly::{LaurentPoly, VarId};
use skein::skein::{BaseStrategy, Convention};
use skein::zoo::{conway, jones, referee_identity_holds, Components, Linking, Mod3, ThreeVar, TwoVar};

fn opts(convention: Convention) -> EvalOptions {
    EvalOptions { convention, ..Default::default() }
}

const ZS: [f64; 5] = [-1.9, -0.6, 0.35, 1.2, 2.7];
const QS: [f64; 5] = [0.3, 0.8, 1.15, 1.9, 3.4];

fn check_conway(d: &Diagram) {
    let oracle = RawPd::of(d);
    let old = conway(&evaluate(&TwoVar, d, opts(Convention::Old)).unwrap()).unwrap();
    let modern = conway(&evaluate(&TwoVar, d, opts(Convention::Modern)).unwrap()).unwrap();
    for z in ZS {
        assert!(close(old.eval_f64(z), oracle.conway_at(z)), "{} at {z}", d.to_pd());
        assert!(close(modern.eval_f64(z), oracle.conway_at(-z)), "{} at {z}", d.to_pd());
    }
}

fn check_jones(d: &Diagram) {
    let oracle = RawPd::of(d);
    let v = jones(&evaluate(&TwoVar, d, opts(Convention::Modern)).unwrap()).unwrap();
    for q in QS {
        assert!(close(v.eval_f64(q.sqrt()), oracle.jones_at(q)), "{} at {q}", d.to_pd());
    }
}

#[test]
fn specializations_on_named_links() {
    for d in [unknot(), hopf(), trefoil(), figure_eight(), Diagram::unlink(3)] {
        check_conway(&d);
        check_jones(&d);
    }
}

#[test]
fn specializations_on_random_closures() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..40 {
        let d = random_braid(&mut rng, 4, 9);
        check_conway(&d);
        check_jones(&d);
    }
}

#[test]
fn figure_eight_two_variable_value() {
    let p = evaluate(&TwoVar, &figure_eight(), EvalOptions::default()).unwrap();
    let want: LaurentPoly = "x^-1*y^-1 - x^-1*y - x*y^-1 - 1".parse().unwrap();
    assert_eq!(p, want);
    assert_eq!(p, p.swap_vars(VarId::X, VarId::Y));
}

#[test]
fn mod3_separates_trefoil_from_unknot() {
    let o = EvalOptions::default();
    assert_eq!(evaluate(&Mod3, &unknot(), o).unwrap(), 1);
    assert_eq!(evaluate(&Mod3, &trefoil(), o).unwrap(), 2);
    assert_eq!(evaluate(&Mod3, &trefoil().mirror(), o).unwrap(), 2);
}

#[test]
fn component_algebra_counts_components() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..30 {
        let w = random_braid_word(&mut rng, 4, 8);
        let d = w.closure();
        let n = evaluate(&Components, &d, EvalOptions::default()).unwrap();
        assert_eq!(n as usize, permutation_cycles(w.strands(), w.letters()));
    }
}

#[test]
fn mirror_swaps_variables() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..15 {
        let d = random_braid(&mut rng, 3, 7);
        let (p, m) = evaluate_mirror_pair(&d, EvalOptions::default()).unwrap();
        assert_eq!(m, p.swap_vars(VarId::X, VarId::Y));
    }
}

#[test]
fn sum_laws() {
    let mut rng = StdRng::seed_from_u64(8);
    let xy = &LaurentPoly::var(VarId::X) + &LaurentPoly::var(VarId::Y);
    for _ in 0..8 {
        let (a, b) = (random_braid(&mut rng, 3, 5), random_braid(&mut rng, 3, 5));
        let o = EvalOptions::default();
        let (pa, pb) = (evaluate(&TwoVar, &a, o).unwrap(), evaluate(&TwoVar, &b, o).unwrap());
        let split = evaluate(&TwoVar, &a.disjoint_union(&b), o).unwrap();
        let edge = |d: &Diagram| d.edge_labels().into_iter().next();
        let sum = evaluate(&TwoVar, &a.connected_sum(edge(&a), &b, edge(&b)).unwrap(), o).unwrap();
        assert_eq!(split, &xy * &(&pa * &pb));
        assert_eq!(sum, &pa * &pb);
    }
}

#[test]
fn referee_identity_on_random_closures() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..15 {
        let d = random_braid(&mut rng, 3, 7);
        let o = EvalOptions::default();
        let three = evaluate(&ThreeVar, &d, o).unwrap();
        let two = evaluate(&TwoVar, &d, o).unwrap();
        assert!(referee_identity_holds(&three, &two), "{}", d.to_pd());
    }
}

#[test]
fn reidemeister_moves_preserve_values() {
    let mut rng = StdRng::seed_from_u64(21);
    let o = EvalOptions::default();
    for _ in 0..10 {
        let mut d = random_braid(&mut rng, 3, 6);
        let p = evaluate(&ThreeVar, &d, o).unwrap();
        let l = evaluate(&Linking, &d, o).unwrap();
        for _ in 0..8 {
            let Some((what, next)) = random_move(&mut rng, &d) else { break };
            next.check().unwrap();
            assert_eq!(evaluate(&ThreeVar, &next, o).unwrap(), p, "after {what}");
            assert_eq!(evaluate(&Linking, &next, o).unwrap(), l, "after {what}");
            d = next;
        }
    }
}

#[test]
fn base_strategies_agree() {
    let mut rng = StdRng::seed_from_u64(34);
    for _ in 0..15 {
        let d = random_braid(&mut rng, 4, 8);
        let want = evaluate(&ThreeVar, &d, EvalOptions::default()).unwrap();
        for seed in 0..4 {
            let o = EvalOptions { strategy: BaseStrategy::Seeded(seed), ..Default::default() };
            assert_eq!(evaluate(&ThreeVar, &d, o).unwrap(), want);
        }
    }
}

#[test]
fn memo_and_simplification_match_naive_folding() {
    for (name, d) in fixtures("small.csv") {
        for conv in [Convention::Old, Convention::Modern] {
            let naive = evaluate_naive(&ThreeVar, &d, BaseStrategy::LowestEdge, conv).unwrap();
            assert_eq!(evaluate(&ThreeVar, &d, opts(conv)).unwrap(), naive, "{name}");
            let plain = EvalOptions { memo: false, simplify: false, ..opts(conv) };
            assert_eq!(evaluate(&ThreeVar, &d, plain).unwrap(), naive, "{name}");
        }
    }
}

#[test]
fn free_term_fold_depends_on_the_tree() {
    // the free algebra satisfies no laws, so only identical trees agree
    let a = evaluate_naive(&TermAlgebra, &trefoil(), BaseStrategy::LowestEdge, Convention::Modern).unwrap();
    let b = evaluate_naive(&TermAlgebra, &trefoil(), BaseStrategy::LowestEdge, Convention::Modern).unwrap();
    assert_eq!(a, b);
}

#[test]
fn linking_simplex_of_borromean_rings() {
    let d = braid("3: 1 -2 1 -2 1 -2");
    let s = weighted_simplex(&Linking, &d, EvalOptions::default()).unwrap();
    assert_eq!(s.vertices, 3);
    for (mask, v) in &s.weights {
        assert_eq!(v.components as u32, mask.count_ones());
        assert_eq!(v.weight, 0, "pairwise linking numbers vanish");
    }
}
