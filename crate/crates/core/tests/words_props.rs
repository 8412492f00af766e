mod common;

use common::{automorphism, moves, word};
use freefactor::oracle::words_up_to;
use freefactor::words::{build_w, f0, BasisMap, Letter, Word};
use proptest::prelude::*;

proptest! {
    #[test]
    fn reduction_is_idempotent(raw in prop::collection::vec((1..=3usize, any::<bool>()), 0..24)) {
        let letters: Vec<Letter> = raw.iter().map(|&(i, b)| Letter::new(i, b)).collect();
        let w = Word::from_letters(letters.iter().copied());
        prop_assert!(w.len() <= letters.len());
        prop_assert_eq!(Word::from_letters(w.letters().iter().copied()), w.clone());
        prop_assert!(w.letters().windows(2).all(|p| p[0] != p[1].inverse()));
    }

    #[test]
    fn inverse_cancels(w in word(3, 12)) {
        prop_assert!((&w * &w.inverse()).is_empty());
        prop_assert_eq!(w.inverse().inverse(), w);
    }

    #[test]
    fn cyclic_core_is_shortest_conjugate(w in word(2, 8)) {
        let (core, g) = w.cyclic_reduce();
        prop_assert!(core.is_cyclically_reduced());
        prop_assert_eq!(&(&g * &core) * &g.inverse(), w.clone());
        for h in words_up_to(2, 4) {
            prop_assert!(w.conjugate_by(&h).len() >= core.len());
        }
    }

    #[test]
    fn automorphisms_round_trip(ms in moves(4, 10), ws in prop::collection::vec(word(4, 16), 40)) {
        let m = automorphism(4, &ms);
        prop_assert!(m.is_automorphism());
        let back = m.inverted().unwrap();
        for w in &ws {
            prop_assert_eq!(&back.apply(&m.apply(w)), w);
            prop_assert_eq!(&m.apply(&back.apply(w)), w);
        }
    }

    #[test]
    fn f0_round_trip(n in 2..=5usize, w in word(5, 16)) {
        let w = Word::from_letters(w.letters().iter().copied().filter(|l| l.index() <= n));
        let f = f0(n).unwrap();
        prop_assert_eq!(f.inverse().unwrap().apply(&f.apply(&w)), w);
    }

    #[test]
    fn conjugation_round_trip(g in word(3, 6), w in word(3, 10)) {
        let c = BasisMap::conjugation(3, &g).unwrap();
        prop_assert_eq!(c.apply(&w), w.conjugate_by(&g));
        prop_assert_eq!(c.inverse().unwrap().apply(&c.apply(&w)), w);
    }
}

#[test]
fn nested_commutator_lengths() {
    for n in 2..=6 {
        for k in 0..n {
            assert_eq!(
                build_w(n, k).unwrap().len(),
                (1 << (k + 1)) - 1,
                "n={n} k={k}"
            );
        }
    }
}
