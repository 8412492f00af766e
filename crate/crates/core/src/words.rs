//! Reduced words over a free basis `a_1, …, a_n` and endomorphisms given by
//! the images of the basis.
//!
//! Text syntax: lowercase `a`..`z` are `a_1`..`a_26`, uppercase letters are
//! their inverses. Indexed form `a12 A3` is accepted for any rank. The
//! identity prints as `1`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A basis letter `a_i` or its inverse, stored as `+i` / `-i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(i32);

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Letter {
        assert!(index >= 1, "letter indices start at 1");
        let i = index as i32;
        Letter(if inverse { -i } else { i })
    }

    pub fn gen(index: usize) -> Letter {
        Letter::new(index, false)
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    pub fn raw(self) -> i32 {
        self.0
    }
}

/// A freely reduced word. Every constructor reduces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn gen(index: usize) -> Word {
        Word(vec![Letter::gen(index)])
    }

    pub fn gen_inv(index: usize) -> Word {
        Word(vec![Letter::new(index, true)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Builds a word from signed indices (`-2` is `a_2⁻¹`), checking them
    /// against `rank`.
    pub fn from_signed(rank: usize, raw: &[i32]) -> Result<Word> {
        let mut letters = Vec::with_capacity(raw.len());
        for &r in raw {
            let index = r.unsigned_abs() as usize;
            if r == 0 || index > rank {
                return Err(Error::LetterOutOfRange { index, rank });
            }
            letters.push(Letter(r));
        }
        Ok(Word::from_letters(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `g⁻¹ · self · g`
    pub fn conjugate_by(&self, g: &Word) -> Word {
        &(&g.inverse() * self) * g
    }

    /// Number of occurrences of `a_index^{±1}`.
    pub fn count_index(&self, index: usize) -> usize {
        self.0.iter().filter(|l| l.index() == index).count()
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Splits `self = conjugator · core · conjugator⁻¹` with `core`
    /// cyclically reduced. The conjugator is the stripped prefix.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let w = &self.0;
        let mut k = 0;
        while w.len() >= 2 * (k + 1) && w[k] == w[w.len() - 1 - k].inverse() {
            k += 1;
        }
        (Word(w[k..w.len() - k].to_vec()), Word(w[..k].to_vec()))
    }

    pub fn cyclic_core(&self) -> Word {
        self.cyclic_reduce().0
    }

    /// Cyclic rotation; `self` should be cyclically reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::identity();
        }
        let k = k % self.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|l| l.index() > rank) {
            Some(l) => Err(Error::LetterOutOfRange {
                index: l.index(),
                rank,
            }),
            None => Ok(()),
        }
    }

    /// Parses the text syntax described in the module docs.
    pub fn parse(s: &str, rank: usize) -> Result<Word> {
        let chars: Vec<char> = s.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            if c.is_whitespace() || (c == '1' && chars.len() == 1) || c == 'ε' {
                i += 1;
                continue;
            }
            if !c.is_ascii_alphabetic() {
                return Err(Error::Parse {
                    column,
                    message: format!("unexpected character '{c}'"),
                });
            }
            let inverse = c.is_ascii_uppercase();
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let index = if j > i + 1 {
                if !c.eq_ignore_ascii_case(&'a') {
                    return Err(Error::Parse {
                        column,
                        message: format!(
                            "indexed letters must be written a<k> or A<k>, found '{c}'"
                        ),
                    });
                }
                let digits: String = chars[i + 1..j].iter().collect();
                digits.parse::<usize>().map_err(|_| Error::Parse {
                    column,
                    message: format!("bad index '{digits}'"),
                })?
            } else {
                (c.to_ascii_lowercase() as u8 - b'a') as usize + 1
            };
            if index == 0 || index > rank {
                return Err(Error::Parse {
                    column,
                    message: format!("letter index {index} exceeds rank {rank}"),
                });
            }
            letters.push(Letter::new(index, inverse));
            i = j;
        }
        Ok(Word::from_letters(letters))
    }

    /// Parses a comma-separated list of words.
    pub fn parse_list(s: &str, rank: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let w = Word::parse(part, rank).map_err(|e| match e {
                Error::Parse { column, message } => Error::Parse {
                    column: column + offset,
                    message,
                },
                other => other,
            })?;
            out.push(w);
            offset += part.chars().count() + 1;
        }
        Ok(out)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &rhs.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index();
        if i <= 26 {
            let c = (b'a' + (i - 1) as u8) as char;
            write!(
                f,
                "{}",
                if self.is_inverse() {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            )
        } else {
            write!(f, "{}{}", if self.is_inverse() { 'A' } else { 'a' }, i)
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        if self.max_index() <= 26 {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self
                .0
                .iter()
                .map(|l| format!("{}{}", if l.is_inverse() { 'A' } else { 'a' }, l.index()))
                .collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Endomorphism of `F_n` given by the images of `a_1, …, a_n`.
///
/// When an inverse is attached it has been checked by composing on every
/// generator, so `is_automorphism()` can be trusted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMap {
    rank: usize,
    images: Vec<Word>,
    inverse: Option<Box<BasisMap>>,
}

impl BasisMap {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<BasisMap> {
        if images.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: images.len(),
            });
        }
        for w in &images {
            w.check_rank(rank)?;
        }
        Ok(BasisMap {
            rank,
            images,
            inverse: None,
        })
    }

    pub fn identity(rank: usize) -> BasisMap {
        let images: Vec<Word> = (1..=rank).map(Word::gen).collect();
        let inv = BasisMap {
            rank,
            images: images.clone(),
            inverse: None,
        };
        BasisMap {
            rank,
            images,
            inverse: Some(Box::new(inv)),
        }
    }

    /// Attaches `inverse` after checking both composites on all generators.
    pub fn with_inverse(mut self, inverse: BasisMap) -> Result<BasisMap> {
        if inverse.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: inverse.rank,
            });
        }
        for i in 1..=self.rank {
            let g = Word::gen(i);
            if inverse.apply(&self.apply(&g)) != g || self.apply(&inverse.apply(&g)) != g {
                return Err(Error::Verification(format!(
                    "supplied inverse fails on generator {g}"
                )));
            }
        }
        let mut inv = inverse;
        inv.inverse = None;
        let mut back = self.clone();
        back.inverse = None;
        inv.inverse = Some(Box::new(back));
        self.inverse = Some(Box::new(inv));
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, index: usize) -> &Word {
        &self.images[index - 1]
    }

    pub fn is_automorphism(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn inverse(&self) -> Option<&BasisMap> {
        self.inverse.as_deref()
    }

    pub fn apply(&self, w: &Word) -> Word {
        Word::from_letters(w.letters().iter().flat_map(|l| {
            let img = &self.images[l.index() - 1];
            let seq: Vec<Letter> = if l.is_inverse() {
                img.inverse().letters().to_vec()
            } else {
                img.letters().to_vec()
            };
            seq
        }))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &BasisMap) -> BasisMap {
        assert_eq!(self.rank, other.rank);
        let images: Vec<Word> = other.images.iter().map(|w| self.apply(w)).collect();
        let inverse = match (self.inverse(), other.inverse()) {
            (Some(si), Some(oi)) => {
                let images = si.images.iter().map(|w| oi.apply(w)).collect();
                Some(Box::new(BasisMap {
                    rank: self.rank,
                    images,
                    inverse: None,
                }))
            }
            _ => None,
        };
        let fwd = BasisMap {
            rank: self.rank,
            images: images.clone(),
            inverse: None,
        };
        let inverse = inverse.map(|mut inv| {
            inv.inverse = Some(Box::new(fwd));
            inv
        });
        BasisMap {
            rank: self.rank,
            images,
            inverse,
        }
    }

    /// The same map with its attached inverse swapped in.
    pub fn inverted(&self) -> Option<BasisMap> {
        self.inverse().cloned()
    }

    /// `a_i ↦ a_i a_j^{±1}`
    pub fn nielsen_right(rank: usize, i: usize, j: usize, inverse: bool) -> Result<BasisMap> {
        check_pair(rank, i, j)?;
        let mult = Word::from_letters([Letter::new(j, inverse)]);
        let mut fwd = BasisMap::identity(rank).images;
        fwd[i - 1] = &Word::gen(i) * &mult;
        let mut back = BasisMap::identity(rank).images;
        back[i - 1] = &Word::gen(i) * &mult.inverse();
        BasisMap::new(rank, fwd)?.with_inverse(BasisMap::new(rank, back)?)
    }

    /// `a_i ↦ a_j^{±1} a_i`
    pub fn nielsen_left(rank: usize, i: usize, j: usize, inverse: bool) -> Result<BasisMap> {
        check_pair(rank, i, j)?;
        let mult = Word::from_letters([Letter::new(j, inverse)]);
        let mut fwd = BasisMap::identity(rank).images;
        fwd[i - 1] = &mult * &Word::gen(i);
        let mut back = BasisMap::identity(rank).images;
        back[i - 1] = &mult.inverse() * &Word::gen(i);
        BasisMap::new(rank, fwd)?.with_inverse(BasisMap::new(rank, back)?)
    }

    /// The involution `ε_i : a_i ↦ a_i⁻¹`.
    pub fn epsilon(rank: usize, i: usize) -> Result<BasisMap> {
        if i == 0 || i > rank {
            return Err(Error::LetterOutOfRange { index: i, rank });
        }
        let mut images = BasisMap::identity(rank).images;
        images[i - 1] = Word::gen_inv(i);
        let m = BasisMap::new(rank, images)?;
        m.clone().with_inverse(m)
    }

    /// `ι = ε_1 ⋯ ε_n`
    pub fn iota(rank: usize) -> BasisMap {
        let images: Vec<Word> = (1..=rank).map(Word::gen_inv).collect();
        let m = BasisMap {
            rank,
            images,
            inverse: None,
        };
        m.clone().with_inverse(m).expect("iota is an involution")
    }

    /// `a_i ↦ a_{perm[i-1]}` for a permutation of `1..=rank`.
    pub fn permutation(rank: usize, perm: &[usize]) -> Result<BasisMap> {
        let mut seen = vec![false; rank + 1];
        if perm.len() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                got: perm.len(),
            });
        }
        for &p in perm {
            if p == 0 || p > rank || seen[p] {
                return Err(Error::BadIndex(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let fwd: Vec<Word> = perm.iter().map(|&p| Word::gen(p)).collect();
        let mut back = vec![Word::identity(); rank];
        for (i, &p) in perm.iter().enumerate() {
            back[p - 1] = Word::gen(i + 1);
        }
        BasisMap::new(rank, fwd)?.with_inverse(BasisMap::new(rank, back)?)
    }

    /// Inner automorphism `x ↦ g⁻¹ x g`.
    pub fn conjugation(rank: usize, g: &Word) -> Result<BasisMap> {
        g.check_rank(rank)?;
        let fwd = (1..=rank).map(|i| Word::gen(i).conjugate_by(g)).collect();
        let back = (1..=rank)
            .map(|i| Word::gen(i).conjugate_by(&g.inverse()))
            .collect();
        BasisMap::new(rank, fwd)?.with_inverse(BasisMap::new(rank, back)?)
    }
}

fn check_pair(rank: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || i > rank || j == 0 || j > rank || i == j {
        return Err(Error::BadIndex(format!("({i}, {j}) for rank {rank}")));
    }
    Ok(())
}

/// The fully irreducible automorphism
/// `a_1 ↦ a_2 ↦ ⋯ ↦ a_n ↦ a_1 a_3 a_4 ⋯ a_n a_2`
/// (for `n = 2`: `a_1 ↦ a_2 ↦ a_1 a_2`).
pub fn f0(n: usize) -> Result<BasisMap> {
    if n < 2 {
        return Err(Error::RankTooSmall { min: 2, got: n });
    }
    let mut fwd: Vec<Word> = (2..=n).map(Word::gen).collect();
    let mut last = vec![Letter::gen(1)];
    last.extend((3..=n).map(Letter::gen));
    last.push(Letter::gen(2));
    fwd.push(Word::from_letters(last));

    // inverse: a_k ↦ a_{k-1} for k ≥ 2, a_1 ↦ a_n a_1⁻¹ a_{n-1}⁻¹ ⋯ a_2⁻¹
    let mut first = vec![Letter::gen(n), Letter::new(1, true)];
    first.extend((2..n).rev().map(|k| Letter::new(k, true)));
    let mut back = vec![Word::from_letters(first)];
    back.extend((1..n).map(Word::gen));
    BasisMap::new(n, fwd)?.with_inverse(BasisMap::new(n, back)?)
}

/// `W_0 = a_n`, `W_{k+1} = W_k a_{k+1} W_k⁻¹`.
pub fn build_w(n: usize, k: usize) -> Result<Word> {
    if n < 2 {
        return Err(Error::RankTooSmall { min: 2, got: n });
    }
    if k >= n {
        return Err(Error::BadIndex(format!("k = {k} must be < n = {n}")));
    }
    let mut w = Word::gen(n);
    for j in 1..=k {
        w = &(&w * &Word::gen(j)) * &w.inverse();
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(
            Word::from_signed(3, &[1, 2, -2, -1]).unwrap(),
            Word::identity()
        );
        assert_eq!(Word::from_signed(3, &[1, 2, -2, 1]).unwrap(), w("aa"));
        assert_eq!(Word::from_signed(3, &[]).unwrap(), Word::identity());
        assert!(matches!(
            Word::from_signed(3, &[4]),
            Err(Error::LetterOutOfRange { index: 4, rank: 3 })
        ));
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("Bab").cyclic_reduce(), (w("a"), w("B")));
        assert_eq!(w("ab").cyclic_reduce(), (w("ab"), Word::identity()));
        assert_eq!(w("caC").cyclic_reduce(), (w("a"), w("c")));
        let x = w("BcabCb");
        let (core, g) = x.cyclic_reduce();
        assert_eq!(&(&g * &core) * &g.inverse(), x);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(
            Word::parse("abA", 3).unwrap().letters(),
            &[Letter::gen(1), Letter::gen(2), Letter::new(1, true)]
        );
        assert_eq!(Word::parse("a1 A1", 3).unwrap(), Word::identity());
        assert!(matches!(
            Word::parse("d", 3),
            Err(Error::Parse { column: 1, .. })
        ));
        assert!(matches!(
            Word::parse("ab#", 3),
            Err(Error::Parse { column: 3, .. })
        ));
        assert_eq!(Word::parse("a30 A2", 30).unwrap().to_string(), "a30 A2");
        assert_eq!(w("abC").to_string(), "abC");
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(Word::parse("1", 3).unwrap(), Word::identity());
        let list = Word::parse_list("a,b,cAb", 3).unwrap();
        assert_eq!(list.len(), 3);
        assert!(matches!(
            Word::parse_list("a,bx", 3),
            Err(Error::Parse { column: 4, .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let e1 = BasisMap::epsilon(3, 1).unwrap();
        assert_eq!(e1.apply(&w("ab")), w("Ab"));
        let nl = BasisMap::nielsen_right(3, 1, 2, false).unwrap();
        assert_eq!(nl.apply(&w("a")), w("ab"));
        let f = f0(3).unwrap();
        assert_eq!(f.apply(&w("c")), w("acb"));
        assert_eq!(BasisMap::identity(3).apply(&w("abCa")), w("abCa"));
    }

    #[test]
    fn f0_images() {
        let f = f0(2).unwrap();
        assert_eq!(f.images(), &[w("b"), w("ab")]);
        let f = f0(3).unwrap();
        assert_eq!(f.images(), &[w("b"), w("c"), w("acb")]);
        let f = f0(4).unwrap();
        assert_eq!(f.images(), &[w("b"), w("c"), w("d"), w("acdb")]);
        assert!(f.is_automorphism());
        assert!(matches!(f0(1), Err(Error::RankTooSmall { .. })));
    }

    #[test]
    fn w_recursion() {
        assert_eq!(build_w(3, 0).unwrap(), w("c"));
        assert_eq!(build_w(3, 1).unwrap(), w("caC"));
        assert_eq!(build_w(3, 2).unwrap(), w("caCbcAC"));
        assert!(build_w(3, 3).is_err());
        for n in 2..7 {
            for k in 0..n {
                assert_eq!(build_w(n, k).unwrap().len(), (1 << (k + 1)) - 1);
            }
        }
    }

    #[test]
    fn bad_inverse_is_rejected() {
        let f = BasisMap::new(2, vec![w("ab"), w("b")]).unwrap();
        let wrong = BasisMap::new(2, vec![w("ab"), w("b")]).unwrap();
        assert!(matches!(f.with_inverse(wrong), Err(Error::Verification(_))));
    }

    #[test]
    fn compose_tracks_inverse() {
        let a = f0(3).unwrap();
        let b = BasisMap::nielsen_left(3, 2, 3, true).unwrap();
        let c = a.compose(&b);
        assert_eq!(c.apply(&w("b")), a.apply(&b.apply(&w("b"))));
        let inv = c.inverse().unwrap();
        for i in 1..=3 {
            assert_eq!(inv.apply(&c.apply(&Word::gen(i))), Word::gen(i));
        }
    }

    #[test]
    fn conjugation_map() {
        let g = w("ab");
        let c = BasisMap::conjugation(3, &g).unwrap();
        assert_eq!(c.apply(&w("c")), w("BAcab"));
        assert!(c.is_automorphism());
    }
}
