#![allow(dead_code)]

use freefactor::words::{BasisMap, Letter, Word};
use proptest::prelude::*;

pub fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=n, any::<bool>()), 0..=max_len)
        .prop_map(|v| Word::from_letters(v.into_iter().map(|(i, inv)| Letter::new(i, inv))))
}

pub fn nonempty_word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word(n, max_len).prop_filter("nontrivial", |w| !w.is_empty())
}

pub fn gens(
    n: usize,
    count: std::ops::RangeInclusive<usize>,
    max_len: usize,
) -> impl Strategy<Value = Vec<Word>> {
    prop::collection::vec(nonempty_word(n, max_len), count)
}

#[derive(Clone, Debug)]
pub enum Move {
    Right(usize, usize, bool),
    Left(usize, usize, bool),
    Epsilon(usize),
    Swap(usize, usize),
}

pub fn moves(n: usize, max: usize) -> impl Strategy<Value = Vec<Move>> {
    let one = prop_oneof![
        (1..=n, 1..=n, any::<bool>()).prop_map(|(i, j, b)| Move::Right(i, j, b)),
        (1..=n, 1..=n, any::<bool>()).prop_map(|(i, j, b)| Move::Left(i, j, b)),
        (1..=n).prop_map(Move::Epsilon),
        (1..=n, 1..=n).prop_map(|(i, j)| Move::Swap(i, j)),
    ];
    prop::collection::vec(one, 0..=max)
}

/// The composite of the moves, skipping degenerate ones (`i = j`).
pub fn automorphism(n: usize, ms: &[Move]) -> BasisMap {
    let mut m = BasisMap::identity(n);
    for mv in ms {
        let step = match *mv {
            Move::Right(i, j, b) if i != j => BasisMap::nielsen_right(n, i, j, b).unwrap(),
            Move::Left(i, j, b) if i != j => BasisMap::nielsen_left(n, i, j, b).unwrap(),
            Move::Epsilon(i) => BasisMap::epsilon(n, i).unwrap(),
            Move::Swap(i, j) => {
                let mut p: Vec<usize> = (1..=n).collect();
                p.swap(i - 1, j - 1);
                BasisMap::permutation(n, &p).unwrap()
            }
            _ => continue,
        };
        m = step.compose(&m);
    }
    m
}
