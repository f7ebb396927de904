mod common;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use skein::algebra::{verify_axioms, AxiomOptions};
use skein::diagram::{BraidWord, Diagram};
use skein::invariants::{evaluate, EvalOptions};
use skein::poly::{Family, LaurentPoly, Monomial, VarId};
use skein::skein::BaseStrategy;
use skein::zoo::{Components, Linking, Mod3, ThreeVar, TwoVar};

fn var() -> impl Strategy<Value = VarId> {
    prop_oneof![Just(VarId::X), Just(VarId::Y), Just(VarId::Z), Just(VarId::new(Family::X, 2))]
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((var(), -3i32..4, var(), -2i32..3, -5i64..6), 0..5).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (a, ea, b, eb, c) in terms {
            let ea = if a.is_invertible() { ea } else { ea.abs() };
            let eb = if b.is_invertible() { eb } else { eb.abs() };
            let m = Monomial::from_unsorted(vec![(a, ea), (b, eb)]);
            p += &LaurentPoly::from_term(m, c.into());
        }
        p
    })
}

fn word() -> impl Strategy<Value = BraidWord> {
    (2usize..5).prop_flat_map(|k| {
        let letter = (1..k as i32, any::<bool>()).prop_map(|(i, pos)| if pos { i } else { -i });
        prop::collection::vec(letter, 1..9).prop_map(move |ls| BraidWord::new(k, ls).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn display_parses_back(a in poly()) {
        let again: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn closures_are_valid(w in word()) {
        let d = w.closure();
        d.check().unwrap();
        prop_assert_eq!(d.component_count(), permutation_cycles(w.strands(), w.letters()));
        let again = Diagram::parse_pd(&d.to_pd()).unwrap();
        prop_assert_eq!(again.component_count(), d.component_count());
        // a strand that never goes under has no direction in a PD code
        if !RawPd::of(&d).has_all_over_strand() {
            prop_assert_eq!(again.canonical_key(), d.canonical_key());
        }
    }

    #[test]
    fn values_survive_random_moves(w in word(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let o = EvalOptions::default();
        let mut d = w.closure();
        let want = (
            evaluate(&ThreeVar, &d, o).unwrap(),
            evaluate(&Mod3, &d, o).unwrap(),
            evaluate(&Components, &d, o).unwrap(),
        );
        for _ in 0..6 {
            let Some((_, next)) = random_move(&mut rng, &d) else { break };
            d = next;
        }
        let got = (
            evaluate(&ThreeVar, &d, o).unwrap(),
            evaluate(&Mod3, &d, o).unwrap(),
            evaluate(&Components, &d, o).unwrap(),
        );
        prop_assert_eq!(got, want);
    }

    #[test]
    fn base_points_do_not_matter(w in word(), seed in any::<u64>()) {
        let d = w.closure();
        let o = EvalOptions::default();
        let s = EvalOptions { strategy: BaseStrategy::Seeded(seed), ..o };
        prop_assert_eq!(evaluate(&TwoVar, &d, s).unwrap(), evaluate(&TwoVar, &d, o).unwrap());
        prop_assert_eq!(evaluate(&Linking, &d, s).unwrap(), evaluate(&Linking, &d, o).unwrap());
    }

    #[test]
    fn conway_matches_oracle(w in word(), z in -2.0f64..2.0) {
        let d = w.closure();
        let o = EvalOptions { convention: skein::skein::Convention::Old, ..Default::default() };
        let c = skein::zoo::conway(&evaluate(&TwoVar, &d, o).unwrap()).unwrap();
        prop_assert!(close(c.eval_f64(z), RawPd::of(&d).conway_at(z)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampled_axioms_hold(seed in any::<u64>()) {
        let opts = AxiomOptions { samples: 20, max_n: 4, seed, exhaustive: false };
        prop_assert!(verify_axioms(&Linking, &opts).passed());
        prop_assert!(verify_axioms(&TwoVar, &opts).passed());
        prop_assert!(verify_axioms(&ThreeVar, &opts).passed());
    }
}
