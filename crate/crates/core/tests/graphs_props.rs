mod common;

use common::gens;
use freefactor::graphs::{canonical_code, fold, fold_by, fold_pairs, iso, LabeledGraph};
use freefactor::oracle::{elements_up_to, member_reduced, nielsen_reduce};
use freefactor::subgroups::{intersect, Subgroup};
use freefactor::words::Word;
use proptest::prelude::*;

proptest! {
    #[test]
    fn folding_is_confluent(gs in gens(3, 1..=4, 8), picks in prop::collection::vec(any::<usize>(), 64)) {
        let g = LabeledGraph::bouquet(3, &gs);
        let a = fold(&g);
        let mut it = picks.into_iter().cycle();
        let b = fold_by(&g, |m| it.next().unwrap() % m);
        prop_assert!(iso(&a, &b, true).is_some());
        prop_assert_eq!(canonical_code(&a), canonical_code(&fold(&b)));
    }

    #[test]
    fn folded_graphs_immerse(gs in gens(4, 1..=4, 8)) {
        let f = fold(&LabeledGraph::bouquet(4, &gs));
        prop_assert!(f.is_folded());
        prop_assert!(fold_pairs(&f).is_empty());
        prop_assert!(f.transitions().is_ok());
    }

    #[test]
    fn folded_rank_matches_nielsen(gs in gens(3, 1..=3, 6)) {
        let f = fold(&LabeledGraph::bouquet(3, &gs));
        let u = nielsen_reduce(&gs, 10_000);
        prop_assume!(u.is_some());
        prop_assert_eq!(f.cycle_rank(), u.unwrap().len());
    }

    #[test]
    fn based_pullback_is_the_intersection(g1 in gens(2, 1..=2, 4), g2 in gens(2, 1..=2, 4)) {
        let h1 = Subgroup::generated(2, &g1, true).unwrap();
        let h2 = Subgroup::generated(2, &g2, true).unwrap();
        let k = intersect(&h1, &h2).unwrap().based;
        if let Some(k) = &k {
            for b in k.basis() {
                prop_assert!(h1.contains(&b).unwrap() && h2.contains(&b).unwrap());
            }
        }
        // every short common element lies in the based component
        let u1 = nielsen_reduce(&g1, 10_000).unwrap();
        let u2 = nielsen_reduce(&g2, 10_000).unwrap();
        if let Some(elems) = elements_up_to(&u1, 8, 50_000) {
            for w in elems.iter().filter(|w| !w.is_empty() && member_reduced(&u2, w)) {
                let inside = k.as_ref().map(|k| k.contains(w).unwrap()).unwrap_or(false);
                prop_assert!(inside, "{} missing", w);
            }
        }
    }

    // a free factor containing conjugates of a_1, a_2 and a_1a_2 has its
    // a_1-loop and a_2-loop at a common vertex
    #[test]
    fn loops_meet(g in common::word(4, 5), extra in common::word(2, 4), pick in 0..2usize) {
        let third = [Word::gen(3).conjugate_by(&extra), &Word::gen(3) * &Word::gen(4)][pick].clone();
        let v = Subgroup::generated(4, &[Word::gen(1), Word::gen(2), third], true)
            .unwrap()
            .image(&freefactor::words::BasisMap::conjugation(4, &g).unwrap())
            .unwrap()
            .unpointed();
        let graph = v.graph();
        let with = |label: usize| -> Vec<usize> {
            graph.edges().iter().filter(|e| e.label == label && e.src == e.dst).map(|e| e.src).collect()
        };
        let l1 = with(1);
        let l2 = with(2);
        prop_assert!(l1.iter().any(|v| l2.contains(v)), "{}", v);
    }
}
