mod common;

use common::{automorphism, gens, moves, word};
use freefactor::oracle::{nielsen_reduce, products, words_up_to};
use freefactor::subgroups::{
    antipodal_af, factor_witness, is_corank1_factor, is_free_factor, verify_factor, FactorWitness,
    Subgroup,
};
use freefactor::words::Word;
use proptest::prelude::*;

fn standard(idx: std::ops::RangeInclusive<usize>) -> Vec<Word> {
    idx.map(Word::gen).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn membership_matches_products(gs in gens(3, 2..=3, 5)) {
        let u = nielsen_reduce(&gs, 10_000);
        prop_assume!(u.is_some());
        let short = products(&u.unwrap(), 4);
        let h = Subgroup::generated(3, &gs, true).unwrap();
        for w in words_up_to(3, 4) {
            prop_assert_eq!(h.contains(&w).unwrap(), short.contains(&w), "{}", w);
        }
        for p in products(&gs, 3) {
            prop_assert!(h.contains(&p).unwrap());
        }
    }

    // a_i-runs are unbounded in a free factor exactly when a_i labels a loop
    #[test]
    fn unbounded_runs_are_loops(ms in moves(3, 6), k in 1..=2usize) {
        let m = automorphism(3, &ms);
        let h = Subgroup::generated(3, &standard(1..=k), true).unwrap().image(&m).unwrap();
        for i in 1..=3 {
            let cyclic = h.graph().longest_label_path(i).is_none();
            prop_assert_eq!(cyclic, h.graph().has_basis_loop(i).is_some(), "{} label {}", h, i);
        }
    }

    // a rank n−1 factor either has bounded a_i-runs for some i ≥ 2, or is a
    // tree carrying loops a_2, …, a_n
    #[test]
    fn corank_one_shapes(ms in moves(3, 6)) {
        let m = automorphism(3, &ms);
        let a = Subgroup::generated(3, &standard(1..=2), true).unwrap().image(&m).unwrap();
        let g = a.graph();
        let bounded = (2..=3).any(|i| g.longest_label_path(i).is_some());
        let loops = g.edges().iter().filter(|e| e.src == e.dst && e.label >= 2).count();
        let tree_with_loops = (2..=3).all(|i| g.has_basis_loop(i).is_some())
            && g.edge_count() - loops + 1 == g.vertex_count();
        prop_assert!(bounded || tree_with_loops, "{}", a);
        prop_assert!(is_corank1_factor(&a).unwrap().is_some());
    }

    #[test]
    fn conjugates_of_the_last_factor(n in 4..=5usize, g in word(5, 6)) {
        let g = Word::from_letters(g.letters().iter().copied().filter(|l| l.index() <= n));
        let base = Subgroup::generated(n, &(2..=n).map(Word::gen).collect::<Vec<_>>(), true).unwrap();
        let v = Subgroup::generated(n, &(2..=n).map(|i| Word::gen(i).conjugate_by(&g)).collect::<Vec<_>>(), true).unwrap();
        let low = Subgroup::generated(n, &(3..=n).map(Word::gen).collect::<Vec<_>>(), true).unwrap();
        let high = Subgroup::generated(n, &(2..n).map(Word::gen).collect::<Vec<_>>(), true).unwrap();
        prop_assert!(v.contains_conjugate_of(&low.unpointed()).unwrap());
        prop_assert!(v.contains_conjugate_of(&high.unpointed()).unwrap());
        prop_assert!(v.unpointed().same_as(&base.unpointed()));
    }

    #[test]
    fn antipodal_words_complete_a_basis(ms in moves(3, 5), u in word(3, 8)) {
        let m = automorphism(3, &ms);
        let a = Subgroup::generated(3, &standard(1..=2), true).unwrap().image(&m).unwrap();
        let u = m.apply(&u);
        prop_assume!(!u.is_empty());
        if antipodal_af(&a, &u).unwrap() {
            prop_assert!(verify_factor(&FactorWitness::new(a.clone(), vec![u.clone()])).unwrap());
        }
        let image = m.apply(&Word::gen(3));
        prop_assert!(antipodal_af(&a, &image).unwrap());
    }

    #[test]
    fn witnesses_reverify(ms in moves(4, 6), k in 1..=3usize) {
        let m = automorphism(4, &ms);
        let h = Subgroup::generated(4, &standard(1..=k), true).unwrap().image(&m).unwrap();
        let w = factor_witness(&h).unwrap().expect("image of a standard factor");
        prop_assert!(verify_factor(&w).unwrap());
        let w = is_free_factor(&h).unwrap().expect("Whitehead finds it");
        prop_assert!(verify_factor(&w).unwrap());
    }

    #[test]
    fn squares_are_not_factors(w in common::nonempty_word(3, 6)) {
        let h = Subgroup::generated(3, &[&w * &w], true).unwrap();
        prop_assert!(is_free_factor(&h).unwrap().is_none());
    }
}
