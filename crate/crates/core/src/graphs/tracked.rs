//! Inverting a basis map by folding while each edge remembers which word
//! of the source basis it stands for.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::words::{BasisMap, Word};

struct TEdge {
    src: usize,
    dst: usize,
    label: usize,
    tag: Word,
}

struct Tracked {
    edges: Vec<TEdge>,
    base: usize,
    // true value of a based loop with tag product X is conj · X · conj⁻¹
    conj: Word,
}

impl Tracked {
    fn gauge(&mut self, v: usize, g: &Word) {
        if g.is_empty() {
            return;
        }
        let gi = g.inverse();
        for e in &mut self.edges {
            if e.src == v {
                e.tag = &gi * &e.tag;
            }
            if e.dst == v {
                e.tag = &e.tag * g;
            }
        }
        if v == self.base {
            self.conj = &self.conj * g;
        }
    }

    fn merge_vertex(&mut self, from: usize, into: usize) {
        for e in &mut self.edges {
            if e.src == from {
                e.src = into;
            }
            if e.dst == from {
                e.dst = into;
            }
        }
        if self.base == from {
            self.base = into;
        }
    }

    fn find_pair(&self) -> Option<(usize, usize, bool)> {
        let mut seen: HashMap<(usize, usize, bool), usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            for (key, out) in [
                ((e.src, e.label, true), true),
                ((e.dst, e.label, false), false),
            ] {
                if let Some(&j) = seen.get(&key) {
                    return Some((j, i, out));
                }
                seen.insert(key, i);
            }
        }
        None
    }
}

/// Given images `ψ(a_1), …, ψ(a_n)`, returns `ψ⁻¹(a_1), …, ψ⁻¹(a_n)`, or
/// `NotABasis` if the images do not form a basis.
pub fn invert_images(rank: usize, images: &[Word]) -> Result<Vec<Word>> {
    if images.len() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            got: images.len(),
        });
    }
    let mut t = Tracked {
        edges: Vec::new(),
        base: 0,
        conj: Word::identity(),
    };
    let mut next_vertex = 1;
    for (k, w) in images.iter().enumerate() {
        w.check_rank(rank)?;
        if w.is_empty() {
            return Err(Error::NotABasis);
        }
        let len = w.len();
        let mut prev = 0;
        for (pos, l) in w.letters().iter().enumerate() {
            let next = if pos + 1 == len {
                0
            } else {
                next_vertex += 1;
                next_vertex - 1
            };
            let tag = if pos == 0 {
                Word::gen(k + 1)
            } else {
                Word::identity()
            };
            // an inverse letter is an edge read backwards, so its tag flips
            t.edges.push(if l.is_inverse() {
                TEdge {
                    src: next,
                    dst: prev,
                    label: l.index(),
                    tag: tag.inverse(),
                }
            } else {
                TEdge {
                    src: prev,
                    dst: next,
                    label: l.index(),
                    tag,
                }
            });
            prev = next;
        }
    }

    while let Some((i, j, out)) = t.find_pair() {
        let (p, q1, q2) = if out {
            (t.edges[i].src, t.edges[i].dst, t.edges[j].dst)
        } else {
            (t.edges[i].dst, t.edges[i].src, t.edges[j].src)
        };
        if q1 == q2 {
            if t.edges[i].tag != t.edges[j].tag {
                return Err(Error::NotABasis);
            }
        } else {
            let (t1, t2) = (t.edges[i].tag.clone(), t.edges[j].tag.clone());
            // make the two tags agree before identifying their far ends
            let (v, g) = match (out, q2 != p) {
                (true, true) => (q2, &t2.inverse() * &t1),
                (true, false) => (q1, &t1.inverse() * &t2),
                (false, true) => (q2, &t2 * &t1.inverse()),
                (false, false) => (q1, &t1 * &t2.inverse()),
            };
            t.gauge(v, &g);
            if t.edges[i].tag != t.edges[j].tag {
                return Err(Error::Verification("tags disagree after gauge".into()));
            }
            let (keep, gone) = if v == q2 { (q1, q2) } else { (q2, q1) };
            t.merge_vertex(gone, keep);
        }
        t.edges.remove(j);
    }

    let mut petals = vec![None; rank];
    for e in &t.edges {
        if e.src != t.base || e.dst != t.base || petals[e.label - 1].is_some() {
            return Err(Error::NotABasis);
        }
        petals[e.label - 1] = Some(e.tag.clone());
    }
    let conj_inv = t.conj.inverse();
    petals
        .into_iter()
        .map(|p| {
            p.map(|tag| &(&t.conj * &tag) * &conj_inv)
                .ok_or(Error::NotABasis)
        })
        .collect()
}

/// The automorphism `a_i ↦ images[i]` with its inverse attached and
/// verified, or `NotABasis`.
pub fn basis_automorphism(rank: usize, images: Vec<Word>) -> Result<BasisMap> {
    let inv = invert_images(rank, &images)?;
    BasisMap::new(rank, images)?.with_inverse(BasisMap::new(rank, inv)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::f0;

    fn ws(s: &str, n: usize) -> Vec<Word> {
        Word::parse_list(s, n).unwrap()
    }

    #[test]
    fn inverts_f0() {
        for n in 2..=6 {
            let f = f0(n).unwrap();
            let inv = invert_images(n, f.images()).unwrap();
            assert_eq!(inv, f.inverse().unwrap().images());
        }
    }

    #[test]
    fn inverts_nielsen_products() {
        let m = basis_automorphism(3, ws("abcB,b,bc", 3)).unwrap();
        assert!(m.is_automorphism());
        let m = basis_automorphism(3, ws("baca,cBA,abcA", 3));
        assert!(m.is_err() || m.unwrap().is_automorphism());
    }

    #[test]
    fn rejects_non_bases() {
        assert_eq!(invert_images(3, &ws("aa,b,c", 3)), Err(Error::NotABasis));
        assert_eq!(invert_images(2, &ws("ab,ba", 2)), Err(Error::NotABasis));
        assert_eq!(invert_images(2, &ws("a,a", 2)), Err(Error::NotABasis));
        assert_eq!(invert_images(2, &ws("a,1", 2)), Err(Error::NotABasis));
        assert_eq!(invert_images(2, &ws("abAB,b", 2)), Err(Error::NotABasis));
    }

    #[test]
    fn conjugated_images() {
        let m = basis_automorphism(2, ws("baB,bbB", 2)).unwrap();
        assert_eq!(
            m.inverse().unwrap().apply(&Word::parse("baB", 2).unwrap()),
            Word::gen(1)
        );
    }
}
