//! Reference computations that avoid core graphs, for cross-checking:
//! Nielsen reduction, membership by descent, product enumeration,
//! syntactic antipodality, abelian obstructions and certificate search.

use std::collections::HashSet;

use crate::error::Result;
use crate::subgroups::{is_corank1_factor, verify_factor, FactorWitness, Subgroup};
use crate::words::{Letter, Word};

/// All reduced words of length at most `len` over `n` generators.
pub fn words_up_to(n: usize, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=n)
        .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
        .collect();
    let mut out = vec![Word::identity()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                out.push(Word::from_letters(v.iter().copied()));
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

fn total_len(u: &[Word]) -> usize {
    u.iter().map(Word::len).sum()
}

fn signed(u: &[Word]) -> Vec<Word> {
    u.iter().flat_map(|w| [w.clone(), w.inverse()]).collect()
}

/// Nielsen reduction by length-decreasing transformations, followed by the
/// length-preserving moves that clear violations of the three-factor
/// condition. Returns `None` if the moves stall or `cap` rounds do not
/// reach a Nielsen-reduced set; the result satisfies `|u_1 ⋯ u_k| ≥ k` for reduced products.
pub fn nielsen_reduce(gens: &[Word], cap: usize) -> Option<Vec<Word>> {
    let mut u: Vec<Word> = gens.iter().filter(|w| !w.is_empty()).cloned().collect();
    for _ in 0..cap {
        u.retain(|w| !w.is_empty());
        if let Some(next) = shorten(&u) {
            u = next;
            continue;
        }
        match three_factor_violation(&u) {
            None => return is_nielsen_reduced(&u).then_some(u),
            Some(next) => u = next,
        }
    }
    None
}

// replaces some u_i by u_i v or v u_i (v = u_j^±, j ≠ i) when that is shorter
fn shorten(u: &[Word]) -> Option<Vec<Word>> {
    let before = total_len(u);
    for i in 0..u.len() {
        for j in 0..u.len() {
            if i == j {
                continue;
            }
            for v in [u[j].clone(), u[j].inverse()] {
                for cand in [&u[i] * &v, &v * &u[i]] {
                    if cand.len() < u[i].len() {
                        let mut next = u.to_vec();
                        next[i] = cand;
                        debug_assert!(total_len(&next) < before);
                        return Some(next);
                    }
                }
            }
        }
    }
    None
}

fn half_key(w: &Word) -> (Vec<i32>, Vec<i32>) {
    let h = w.len().div_ceil(2);
    let a: Vec<i32> = w.letters()[..h].iter().map(|l| l.raw()).collect();
    let wi = w.inverse();
    let b: Vec<i32> = wi.letters()[..h].iter().map(|l| l.raw()).collect();
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

// a triple x v y with v cancelled completely; replacing x by x v keeps the
// length and lowers the half-word order, which guarantees termination
fn three_factor_violation(u: &[Word]) -> Option<Vec<Word>> {
    let s = signed(u);
    let owner = |k: usize| k / 2;
    for (a, x) in s.iter().enumerate() {
        for (b, v) in s.iter().enumerate() {
            if owner(a) == owner(b) && a != b {
                continue;
            }
            for (c, y) in s.iter().enumerate() {
                if owner(b) == owner(c) && b != c {
                    continue;
                }
                let xvy = &(x * v) * y;
                if xvy.len() + v.len() > x.len() + y.len() {
                    continue;
                }
                // x v y shorter than allowed: try the length-preserving swaps
                for (i, cand) in [(owner(a), x * v), (owner(c), v * y)] {
                    let old = &u[i];
                    let cand = if cand.len() == old.len() {
                        cand
                    } else {
                        continue;
                    };
                    if half_key(&cand) < half_key(old) {
                        let mut next = u.to_vec();
                        next[i] = cand;
                        return Some(next);
                    }
                }
                for (i, cand) in [(owner(a), (x * v).inverse()), (owner(c), (v * y).inverse())] {
                    if cand.len() == u[i].len() && half_key(&cand) < half_key(&u[i]) {
                        let mut next = u.to_vec();
                        next[i] = cand;
                        return Some(next);
                    }
                }
            }
        }
    }
    None
}

/// Whether `u` is Nielsen reduced: no trivial element, no pair product
/// shorter than a factor, no triple in which the middle cancels entirely.
pub fn is_nielsen_reduced(u: &[Word]) -> bool {
    let s = signed(u);
    if u.iter().any(Word::is_empty) {
        return false;
    }
    for (a, x) in s.iter().enumerate() {
        for (b, y) in s.iter().enumerate() {
            if a / 2 == b / 2 && a != b {
                continue;
            }
            let xy = x * y;
            if xy.len() < x.len() || xy.len() < y.len() {
                return false;
            }
            for (c, z) in s.iter().enumerate() {
                if b / 2 == c / 2 && b != c {
                    continue;
                }
                if (&xy * z).len() + y.len() <= x.len() + z.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// Membership of `w` in the subgroup generated by a Nielsen-reduced set:
/// some factor always shortens a nontrivial element of the subgroup, so a
/// descent on length decides it.
pub fn member_reduced(u: &[Word], w: &Word) -> bool {
    if w.is_empty() {
        return true;
    }
    let s = signed(u);
    s.iter().any(|x| {
        let rest = &x.inverse() * w;
        rest.len() < w.len() && member_reduced(u, &rest)
    })
}

/// Reduced products of at most `depth` factors from `gens^±1`.
pub fn products(gens: &[Word], depth: usize) -> HashSet<Word> {
    let s = signed(gens);
    let mut out: HashSet<Word> = HashSet::from([Word::identity()]);
    let mut layer: Vec<(Word, Option<usize>)> = vec![(Word::identity(), None)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (w, last) in &layer {
            for (k, x) in s.iter().enumerate() {
                if last.is_some_and(|l| l ^ 1 == k) {
                    continue;
                }
                let p = w * x;
                out.insert(p.clone());
                next.push((p, Some(k)));
            }
        }
        layer = next;
    }
    out
}

/// `u` contains exactly one `a_n^{±1}` once reduced.
pub fn lemma22_syntactic(u: &Word, n: usize) -> bool {
    u.count_index(n) == 1
}

/// Shortest conjugate found by trying every conjugator up to `|w|`.
pub fn min_conjugate_length(w: &Word, n: usize) -> usize {
    words_up_to(n, w.len())
        .iter()
        .map(|g| w.conjugate_by(g).len())
        .min()
        .unwrap_or(0)
}

/// Elements of length at most `max_len` of the subgroup with Nielsen-reduced
/// basis `u`, or `None` past `budget` elements. Every factor of a reduced
/// product keeps a surviving middle letter, so a partial product longer than
/// `max_len` plus its last factor never shortens back below `max_len`.
pub fn elements_up_to(u: &[Word], max_len: usize, budget: usize) -> Option<Vec<Word>> {
    let s = signed(u);
    let mut out = vec![Word::identity()];
    let mut stack: Vec<(Word, usize)> = Vec::new();
    for (k, x) in s.iter().enumerate() {
        stack.push((x.clone(), k));
    }
    while let Some((w, last)) = stack.pop() {
        if w.len() > max_len + s[last].len() {
            continue;
        }
        if w.len() <= max_len {
            out.push(w.clone());
            if out.len() > budget {
                return None;
            }
        }
        for (k, x) in s.iter().enumerate() {
            if k != last ^ 1 {
                stack.push((&w * x, k));
            }
        }
    }
    Some(out)
}

/// Rank of the subgroup generated by `H₁ ∩ H₂ ∩ B(max_len)`: the elements
/// of whichever side enumerates within `budget` are filtered by membership
/// in the other by descent, and a Nielsen basis is grown from them one new
/// element at a time.
pub fn intersection_rank(h1: &[Word], h2: &[Word], max_len: usize, budget: usize) -> Option<usize> {
    let u1 = nielsen_reduce(h1, 10_000)?;
    let u2 = nielsen_reduce(h2, 10_000)?;
    // enumerate the sparser side, found by raising the budget in steps
    let mut cap = budget.min(10_000);
    let (mut elems, other) = loop {
        if let Some(e) = elements_up_to(&u1, max_len, cap) {
            break (e, u2);
        }
        if let Some(e) = elements_up_to(&u2, max_len, cap) {
            break (e, u1);
        }
        if cap >= budget {
            return None;
        }
        cap = (cap * 10).min(budget);
    };
    elems.retain(|w| !w.is_empty() && member_reduced(&other, w));
    elems.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut basis: Vec<Word> = Vec::new();
    for w in elems {
        if !member_reduced(&basis, &w) {
            basis.push(w);
            basis = nielsen_reduce(&basis, 10_000)?;
        }
    }
    Some(basis.len())
}

fn det(m: &[Vec<i64>]) -> i64 {
    let k = m.len();
    if k == 1 {
        return m[0][0];
    }
    (0..k)
        .map(|c| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| (0..k).filter(|&x| x != c).map(|x| row[x]).collect())
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            sign * m[0][c] * det(&minor)
        })
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// The abelianized basis of a free factor spans a direct summand of
/// `Z^n`: the `k × k` minors have gcd 1.
pub fn abelian_summand(n: usize, basis: &[Word]) -> bool {
    let rows: Vec<Vec<i64>> = basis
        .iter()
        .map(|w| {
            let mut v = vec![0i64; n];
            for l in w.letters() {
                v[l.index() - 1] += if l.is_inverse() { -1 } else { 1 };
            }
            v
        })
        .collect();
    let k = rows.len();
    let g = combinations(n, k).iter().fold(0, |g, cols| {
        let m: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        gcd(g, det(&m))
    });
    g == 1
}

/// Outcome of the certificate search.
#[derive(Clone, Debug)]
pub enum Certificate {
    Factor(FactorWitness),
    /// The abelianization rules out a free factor.
    Obstructed,
    /// Nothing found among short complements.
    Unknown,
}

/// Looks for complements made of words of length at most `max_len`, after
/// the abelian obstruction and, in corank one, the vertex-identification
/// test.
pub fn certificate_search(h: &Subgroup, max_len: usize) -> Result<Certificate> {
    let hp = h.pointed_representative();
    let n = hp.ambient_rank();
    let k = hp.rank();
    if !abelian_summand(n, &hp.basis()) {
        return Ok(Certificate::Obstructed);
    }
    if k + 1 == n && is_corank1_factor(&hp)?.is_none() {
        return Ok(Certificate::Unknown);
    }
    let pool: Vec<Word> = words_up_to(n, max_len)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let need = n - k;
    let mut pick = vec![0usize; need];
    loop {
        if pick.windows(2).all(|p| p[0] < p[1]) {
            let comp: Vec<Word> = pick.iter().map(|&i| pool[i].clone()).collect();
            let w = FactorWitness::new(hp.clone(), comp);
            if verify_factor(&w)? {
                return Ok(Certificate::Factor(w));
            }
        }
        let mut pos = need;
        loop {
            if pos == 0 {
                return Ok(Certificate::Unknown);
            }
            pos -= 1;
            pick[pos] += 1;
            if pick[pos] < pool.len() {
                break;
            }
            pick[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(n: usize, s: &str) -> Vec<Word> {
        Word::parse_list(s, n).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        // 1 + 4 + 12 + 36 reduced words of length ≤ 3 in F_2
        assert_eq!(words_up_to(2, 3).len(), 53);
    }

    #[test]
    fn nielsen_examples() {
        let u = nielsen_reduce(&ws(2, "ab,b"), 100).unwrap();
        assert!(is_nielsen_reduced(&u));
        assert_eq!(total_len(&u), 2);
        let u = nielsen_reduce(&ws(3, "abc,bc,c"), 100).unwrap();
        assert_eq!(total_len(&u), 3);
        assert!(!is_nielsen_reduced(&ws(2, "ab,b")));
    }

    #[test]
    fn descent_membership() {
        let u = nielsen_reduce(&ws(3, "aab,bAc"), 100).unwrap();
        let w = Word::parse("aabbAcaab", 3).unwrap();
        assert!(member_reduced(&u, &w));
        assert!(!member_reduced(&u, &Word::gen(1)));
    }

    #[test]
    fn abelian_obstructions() {
        assert!(!abelian_summand(3, &ws(3, "aa")));
        assert!(!abelian_summand(3, &ws(3, "abAB")));
        assert!(abelian_summand(3, &ws(3, "ab,c")));
        assert!(!abelian_summand(3, &ws(3, "ab,ba")));
    }

    #[test]
    fn certificates() {
        let h = Subgroup::parse(3, "abc", true).unwrap();
        assert!(matches!(
            certificate_search(&h, 1).unwrap(),
            Certificate::Factor(_)
        ));
        let h = Subgroup::parse(3, "aa", true).unwrap();
        assert!(matches!(
            certificate_search(&h, 1).unwrap(),
            Certificate::Obstructed
        ));
    }

    #[test]
    fn ball_elements() {
        // ⟨a⟩ ∩ B(3) = {1, a^±1, a^±2, a^±3}
        assert_eq!(elements_up_to(&ws(2, "a"), 3, 100).unwrap().len(), 7);
        assert_eq!(elements_up_to(&ws(2, "a,b"), 2, 100).unwrap().len(), 17);
        assert!(elements_up_to(&ws(2, "a,b"), 6, 100).is_none());
        assert_eq!(
            intersection_rank(&ws(2, "aa,abA"), &ws(2, "Ab,baaB"), 8, 100_000),
            Some(1)
        );
    }

    #[test]
    fn conjugate_lengths() {
        let w = Word::parse("bacB", 3).unwrap();
        assert_eq!(min_conjugate_length(&w, 3), w.cyclic_core().len());
    }
}
