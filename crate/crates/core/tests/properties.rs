use proptest::prelude::*;

use cobarlab::cobar::{confluent_under_all_orders, letters_up_to, normalize, normalize_word, CobarWord};
use cobarlab::loop_group::{GroupWord, Letter};
use cobarlab::models::{delta, deltabar};
use cobarlab::{Simplex, SimplicialOperator};

proptest! {
    #[test]
    fn composed_operator_matches_stepwise_application(steps in prop::collection::vec((any::<bool>(), 0usize..8), 0..8)) {
        let x = delta(4);
        let top = x.all_simplices(4)[0];
        let (mut acc, mut s) = (SimplicialOperator::identity(4), top);
        for (is_face, i) in steps {
            let d = s.dim();
            let step = if is_face && d > 0 {
                SimplicialOperator::face(i % (d + 1), d).unwrap()
            } else if d < 6 {
                SimplicialOperator::degeneracy(i % (d + 1), d).unwrap()
            } else {
                continue;
            };
            s = x.apply(&step, s).unwrap();
            acc = step.compose(&acc).unwrap();
            prop_assert_eq!(x.apply(&acc, top).unwrap(), s);
        }
    }

    #[test]
    fn cobar_rewriting_is_confluent(picks in prop::collection::vec(any::<prop::sample::Index>(), 0..7)) {
        let x = deltabar(3);
        let pool = letters_up_to(&x, 2);
        let w = CobarWord::new(picks.iter().map(|p| pool[p.index(pool.len())]).collect());
        prop_assert!(confluent_under_all_orders(&w));
        let n = normalize_word(&w);
        prop_assert!(n.keys().all(|v| v.is_normal()));
        prop_assert_eq!(normalize(&n), n);
    }

    #[test]
    fn group_words_cancel_against_their_inverse(picks in prop::collection::vec((any::<prop::sample::Index>(), any::<bool>()), 0..6)) {
        let x = deltabar(3);
        let gens: Vec<Simplex> = x.loop_generators(2);
        let letters = picks.iter().map(|(p, pos)| Letter::new(gens[p.index(gens.len())], if *pos { 1 } else { -1 }));
        let w = GroupWord::from_letters(1, letters).unwrap();
        prop_assert!(w.mul(&w.inv()).unwrap().is_identity());
        prop_assert_eq!(w.inv().inv(), w);
    }
}
