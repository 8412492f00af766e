//! Recognising standard apartments in `OF_n`: potential sticks in rank
//! three, the build-up conditions, midpoints and one-off apartments.

use serde::Serialize;

use super::sticks::{supersticks, Superstick};
use super::{
    antipodal_faces_check, antipodal_word, mask_of, subset_indices, verify_apartment, Apartment,
    FactorVertex,
};
use crate::error::{Error, Result};
use crate::graphs::basis_automorphism;
use crate::report::{Check, Report};
use crate::subgroups::{Mode, Subgroup};
use crate::words::{Letter, Word};

/// Standardness verdicts. `Fake` is only returned on exact grounds;
/// searches that run out at their bound give `Inconclusive`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Standard,
    Fake,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Of3Result {
    pub verdict: Verdict,
    pub report: Report,
}

/// Outcome of the search for a potential stick at a rank-two vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PotentialStick {
    Found(Word),
    /// The candidate family is finite and none of it qualifies.
    Absent,
    /// The family is infinite and nothing qualified up to the bound.
    NotFoundUpTo(usize),
}

// Cap on the number of closed paths examined by the loop search.
const MAX_LOOPS: usize = 200_000;

fn exponent_sum(w: &Word, index: usize) -> i64 {
    w.letters()
        .iter()
        .filter(|l| l.index() == index)
        .map(|l| if l.is_inverse() { -1 } else { 1 })
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A primitive element of `⟨x, y⟩` with abelianization `(p, q)`, as a
/// word in the letters 1 (`x`) and 2 (`y`). Built by the Euclidean
/// algorithm through the substitutions `y ↦ xy` and `x ↦ xy`.
fn primitive_pq(p: i64, q: i64) -> Word {
    fn build(p: i64, q: i64) -> Word {
        match (p, q) {
            (1, 0) => Word::gen(1),
            (0, 1) => Word::gen(2),
            _ if p >= q => {
                let w = build(p - q, q);
                Word::from_letters(w.letters().iter().flat_map(|&l| {
                    if l.index() == 2 {
                        let xy = [Letter::gen(1), Letter::gen(2)];
                        if l.is_inverse() {
                            vec![xy[1].inverse(), xy[0].inverse()]
                        } else {
                            xy.to_vec()
                        }
                    } else {
                        vec![l]
                    }
                }))
            }
            _ => {
                let w = build(p, q - p);
                Word::from_letters(w.letters().iter().flat_map(|&l| {
                    if l.index() == 1 {
                        let xy = [Letter::gen(1), Letter::gen(2)];
                        if l.is_inverse() {
                            vec![xy[1].inverse(), xy[0].inverse()]
                        } else {
                            xy.to_vec()
                        }
                    } else {
                        vec![l]
                    }
                }))
            }
        }
    }
    let w = build(p.abs(), q.abs());
    Word::from_letters(w.letters().iter().map(|&l| {
        let flip = (l.index() == 1 && p < 0) || (l.index() == 2 && q < 0);
        if flip {
            l.inverse()
        } else {
            l
        }
    }))
}

fn substitute(w: &Word, v: &[Word]) -> Word {
    w.letters().iter().fold(Word::identity(), |acc, l| {
        let g = &v[l.index() - 1];
        &acc * &(if l.is_inverse() {
            g.inverse()
        } else {
            g.clone()
        })
    })
}

/// Potential stick at the rank-two vertex `mask` of a rank-three OF
/// apartment: a rank-one class below it antipodal to the other two
/// rank-two vertices.
///
/// Such a class is primitive in the rank-two vertex `V = ⟨v_1, v_2⟩`, and
/// primitive classes of a rank-two free group are determined by their
/// abelianization `(p, q)`. Antipodality to `W` forces the exponent sum of
/// the complementary letter, a linear form in `(p, q)`, to be `±1`; two
/// independent forms leave at most two classes to test.
pub fn potential_stick(ap: &Apartment, mask: u32, bound: usize) -> Result<PotentialStick> {
    ap.require_mode(Mode::Of)?;
    if ap.n() != 3 {
        return Err(Error::Precondition(
            "potential sticks are defined for n = 3".into(),
        ));
    }
    let v = ap.vertex(mask)?;
    if mask.count_ones() != 2 {
        return Err(Error::BadIndex(format!(
            "mask {mask} is not a rank-two vertex"
        )));
    }
    let others: Vec<&FactorVertex> = [3u32, 5, 6]
        .iter()
        .filter(|&&m| m != mask)
        .map(|&m| ap.vertex(m))
        .collect::<Result<_>>()?;
    let basis = v.representative().basis();
    let forms: Vec<[i64; 2]> = others
        .iter()
        .map(|w| {
            let phi = w.normalizer()?;
            Ok([
                exponent_sum(&phi.apply(&basis[0]), 3),
                exponent_sum(&phi.apply(&basis[1]), 3),
            ])
        })
        .collect::<Result<_>>()?;
    let qualifies = |p: i64, q: i64| -> Result<Option<Word>> {
        let x = substitute(&primitive_pq(p, q), &basis);
        for w in &others {
            if !antipodal_word(w, &x)? {
                return Ok(None);
            }
        }
        Ok(Some(x))
    };
    let [a, b] = [forms[0], forms[1]];
    let det = a[0] * b[1] - a[1] * b[0];
    if det != 0 {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                let pn = s1 * b[1] - s2 * a[1];
                let qn = a[0] * s2 - b[0] * s1;
                if pn % det != 0 || qn % det != 0 {
                    continue;
                }
                if let Some(x) = qualifies(pn / det, qn / det)? {
                    return Ok(PotentialStick::Found(x));
                }
            }
        }
        return Ok(PotentialStick::Absent);
    }
    if a == [0, 0] || b == [0, 0] {
        return Ok(PotentialStick::Absent);
    }
    let bound_i = bound as i64;
    for total in 1..=bound_i {
        for p in -total..=total {
            let r = total - p.abs();
            for q in if r == 0 { vec![0] } else { vec![r, -r] } {
                if gcd(p, q) != 1 {
                    continue;
                }
                let e = [a[0] * p + a[1] * q, b[0] * p + b[1] * q];
                if e[0].abs() != 1 || e[1].abs() != 1 {
                    continue;
                }
                if let Some(x) = qualifies(p, q)? {
                    return Ok(PotentialStick::Found(x));
                }
            }
        }
    }
    Ok(PotentialStick::NotFoundUpTo(bound))
}

/// Standardness in `OF_3`: opposite vertices antipodal, and a potential
/// stick at each rank-two vertex.
pub fn of3_standardness(ap: &Apartment, bound: usize) -> Result<Of3Result> {
    ap.require_mode(Mode::Of)?;
    if ap.n() != 3 {
        return Err(Error::Precondition("rank-three apartments only".into()));
    }
    let valid = verify_apartment(ap)?;
    if !valid.passed() {
        return Err(Error::Precondition(format!("not an apartment:\n{valid}")));
    }
    let mut report = Report::new("OF_3 standardness");
    let opp = antipodal_faces_check(ap)?;
    let cond1 = opp.passed();
    report.absorb("opposite vertices antipodal: ", opp);
    let mut absent = false;
    let mut open = false;
    for mask in [3u32, 6, 5] {
        let name = format!("potential stick at {}", ap.vertex(mask)?);
        match potential_stick(ap, mask, bound)? {
            PotentialStick::Found(x) => {
                report.push(Check::new(name, true, "found").with_witnesses([format!("[{x}]")]))
            }
            PotentialStick::Absent => {
                absent = true;
                report.check(name, false, "none exists");
            }
            PotentialStick::NotFoundUpTo(b) => {
                open = true;
                report.check(name, false, format!("none with |p|+|q| <= {b}"));
            }
        }
    }
    let verdict = if !cond1 || absent {
        Verdict::Fake
    } else if open {
        Verdict::Inconclusive
    } else {
        Verdict::Standard
    };
    Ok(Of3Result { verdict, report })
}

/// Whether the face `Δ[T]` of an OF apartment, `|T| = n−1`, is standard.
fn face_standard(ap: &Apartment, tmask: u32, bound: usize) -> Result<(Verdict, String)> {
    let n = ap.n();
    let idx = subset_indices(tmask);
    let gens: Vec<Word> = idx
        .iter()
        .map(|&i| Ok(ap.rank1(i)?.generator()))
        .collect::<Result<_>>()?;
    let mut direct = true;
    for s in 1..=tmask {
        if s & tmask != s || s == 0 {
            continue;
        }
        let ws: Vec<Word> = idx
            .iter()
            .zip(&gens)
            .filter(|(i, _)| s >> (*i - 1) & 1 == 1)
            .map(|(_, w)| w.clone())
            .collect();
        let same = Subgroup::generated(n, &ws, false)
            .map(|h| h.key() == ap.vertex(s).map(|v| v.key()).unwrap_or_default());
        if !matches!(same, Ok(true)) {
            direct = false;
            break;
        }
    }
    if direct {
        return Ok((
            Verdict::Standard,
            "rank-one representatives span every vertex".into(),
        ));
    }

    // move the face into ⟨a_1, …, a_{n−1}⟩ and decide there
    let v = ap.vertex(tmask)?;
    let phi = v.normalizer()?;
    let vrep = v.representative();
    let k = n - 1;
    let local = |s: u32| -> u32 {
        idx.iter()
            .enumerate()
            .filter(|(_, &i)| s >> (i - 1) & 1 == 1)
            .fold(0, |m, (pos, _)| m | 1 << pos)
    };
    let mut entries = Vec::new();
    for s in 1..tmask {
        if s & tmask != s {
            continue;
        }
        let kr = ap.vertex(s)?.representative();
        let g = vrep.conjugator_of_subgroup(kr)?.ok_or_else(|| {
            Error::Precondition("face vertex is not below the face barycentre".into())
        })?;
        let ws: Vec<Word> = kr
            .basis()
            .iter()
            .map(|w| phi.apply(&w.conjugate_by(&g)))
            .collect();
        if ws.iter().any(|w| w.max_index() > k) {
            return Err(Error::Verification(
                "normalized face leaves the standard factor".into(),
            ));
        }
        entries.push((local(s), ws));
    }
    if k == 2 {
        let x = &entries.iter().find(|(m, _)| *m == 1).expect("rank one").1[0];
        let y = &entries.iter().find(|(m, _)| *m == 2).expect("rank one").1[0];
        let det = exponent_sum(x, 1) * exponent_sum(y, 2) - exponent_sum(x, 2) * exponent_sum(y, 1);
        let verdict = if det.abs() == 1 {
            Verdict::Standard
        } else {
            Verdict::Fake
        };
        return Ok((
            verdict,
            format!("determinant of abelianized rank-one classes is {det}"),
        ));
    }
    let face = Apartment::from_generators(k, Mode::Of, &entries)?;
    let sub = if k == 3 {
        of3_standardness(&face, bound)?
    } else {
        buildup_conditions(&face, bound)?
    };
    Ok((
        sub.verdict,
        format!("face checked in rank {k}: {:?}", sub.verdict),
    ))
}

fn slot_letter(slot: usize) -> Letter {
    Letter::new(slot / 2 + 1, slot % 2 == 1)
}

/// Closed reduced paths at the basepoint of `g`, shortest first, up to
/// `bound` letters; stops at the first word accepted by `accept`.
fn loop_search<F: FnMut(&Word) -> Result<bool>>(
    h: &Subgroup,
    bound: usize,
    mut accept: F,
) -> Result<(Option<Word>, usize)> {
    let g = h.graph();
    let t = g.transitions()?;
    let base = g.base().expect("pointed");
    let mut frontier: Vec<(usize, Vec<Letter>)> = vec![(base, Vec::new())];
    let mut examined = 0;
    for len in 1..=bound {
        let mut next = Vec::new();
        for (v, path) in &frontier {
            for (slot, target) in t[*v].iter().enumerate() {
                let Some(u) = *target else { continue };
                let l = slot_letter(slot);
                if path.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut p = path.clone();
                p.push(l);
                if u == base {
                    let w = Word::from_letters(p.iter().copied());
                    if w.is_cyclically_reduced() {
                        examined += 1;
                        if accept(&w)? {
                            return Ok((Some(w), len));
                        }
                    }
                }
                next.push((u, p));
            }
        }
        if next.len() > MAX_LOOPS || examined > MAX_LOOPS {
            return Ok((None, len));
        }
        frontier = next;
    }
    Ok((None, bound))
}

/// The three conditions under which an `OF_n` apartment is standard:
/// standard rank `n−1` faces, rank-one vertices antipodal to opposite
/// barycentres, and below each rank `n−1` vertex a rank-one class
/// antipodal to all the others.
pub fn buildup_conditions(ap: &Apartment, bound: usize) -> Result<Of3Result> {
    ap.require_mode(Mode::Of)?;
    let n = ap.n();
    if n < 3 {
        return Err(Error::RankTooSmall { min: 3, got: n });
    }
    let full = ap.full_mask();
    let mut report = Report::new(format!("build-up conditions n={n}"));
    let mut fake = false;
    let mut open = false;

    for m in 1..=n {
        let t = full ^ (1 << (m - 1));
        let (v, detail) = face_standard(ap, t, bound)?;
        fake |= v == Verdict::Fake;
        open |= v == Verdict::Inconclusive;
        report.check(
            format!("(1) face opposite {m} standard"),
            v == Verdict::Standard,
            detail,
        );
    }

    let opp = antipodal_faces_check(ap)?;
    fake |= !opp.passed();
    report.absorb("(2) ", opp);

    for m in 1..=n {
        let v = ap.opposite(m)?;
        let others: Vec<&FactorVertex> = (1..=n)
            .filter(|&x| x != m)
            .map(|x| ap.opposite(x))
            .collect::<Result<_>>()?;
        let ok = |x: &Word| -> Result<bool> {
            for w in &others {
                if !antipodal_word(w, x)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        // the product of the face's rank-one generators, read inside V
        let vrep = v.representative();
        let mut product = Word::identity();
        let mut have_product = true;
        for i in (1..=n).filter(|&i| i != m) {
            let c = ap.rank1(i)?.generator();
            match vrep.conjugate_into(&c)? {
                Some(g) => product = &product * &c.conjugate_by(&g),
                None => have_product = false,
            }
        }
        let name = format!("(3) rank-one class below {v} antipodal to the other walls");
        if have_product && !product.is_empty() && ok(&product)? {
            report.push(
                Check::new(name, true, "product of rank-one generators")
                    .with_witnesses([format!("[{product}]")]),
            );
            continue;
        }
        let (hit, reached) = loop_search(vrep, bound, |w| ok(w))?;
        match hit {
            Some(w) => report
                .push(Check::new(name, true, "loop search").with_witnesses([format!("[{w}]")])),
            None => {
                open = true;
                report.check(name, false, format!("no loop up to length {reached}"));
            }
        }
    }
    let verdict = if fake {
        Verdict::Fake
    } else if open {
        Verdict::Inconclusive
    } else {
        Verdict::Standard
    };
    Ok(Of3Result { verdict, report })
}

/// A rank-two class `[b_j b_k, b_i]` and the supersticks below it.
#[derive(Clone, Debug)]
pub struct Midpoint {
    pub vertex: FactorVertex,
    pub carried: Vec<Superstick>,
}

/// `M = [b_j b_k, b_i]` and `M′ = [b_k b_j, b_i]` with the supersticks of
/// the face `{i, j, k}` each one carries.
pub fn midpoints(ap: &Apartment, i: usize, pair: (usize, usize)) -> Result<Vec<Midpoint>> {
    ap.require_mode(Mode::Of)?;
    let n = ap.n();
    if n < 3 {
        return Err(Error::RankTooSmall { min: 3, got: n });
    }
    let (j, k) = pair;
    for x in [i, j, k] {
        ap.check_index(x)?;
    }
    if i == j || i == k || j == k {
        return Err(Error::BadIndex(format!(
            "midpoints need distinct indices, got {i} and ({j}, {k})"
        )));
    }
    let b = ap.require_basis()?;
    let stks = supersticks(ap, (i, j, k))?;
    let rest: Vec<Word> = (1..=n)
        .filter(|x| ![i, j, k].contains(x))
        .map(|x| b[x - 1].clone())
        .collect();
    let mut out = Vec::new();
    for (p, q) in [(j, k), (k, j)] {
        let gens = [&b[p - 1] * &b[q - 1], b[i - 1].clone()];
        let mut comp = vec![b[q - 1].clone()];
        comp.extend(rest.iter().cloned());
        let vertex = FactorVertex::with_complement(n, &gens, comp, Mode::Of)?;
        let mut carried = Vec::new();
        for s in &stks {
            if s.vertex.is_below(&vertex)? {
                carried.push(s.clone());
            }
        }
        out.push(Midpoint { vertex, carried });
    }
    Ok(out)
}

/// Result of comparing an apartment with a one-off neighbour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OneOff {
    /// The differing vertex is `[a_2^{a_1^k}, a_3]` in the basis of `d0`.
    Power(i64),
    Mismatch,
}

/// For rank-three OF apartments agreeing everywhere except at the
/// barycentre opposite the first vertex, decides whether that vertex is
/// `[b_2^{b_1^k}, b_3]` and returns `k`.
pub fn one_off_check(d0: &Apartment, d1: &Apartment) -> Result<OneOff> {
    d0.require_mode(Mode::Of)?;
    d1.require_mode(Mode::Of)?;
    if d0.n() != 3 || d1.n() != 3 {
        return Err(Error::Precondition(
            "one-off apartments are compared in rank three".into(),
        ));
    }
    let basis = d0.require_basis()?;
    let differing = mask_of(&[2, 3]);
    for m in 1..7u32 {
        if m != differing && d0.vertex(m)? != d1.vertex(m)? {
            return Err(Error::Precondition(format!(
                "apartments differ at subset mask {m}"
            )));
        }
    }
    let psi = basis_automorphism(3, basis.to_vec())?;
    let psi_inv = psi.inverted().expect("attached");
    let v = d1
        .vertex(differing)?
        .representative()
        .image(&psi_inv)?
        .unpointed();
    // the core of [a_2^{a_1^k}, a_3] is two loops joined by an a_1-arc of length |k|
    let e = v.graph().edge_count() as i64;
    let ks: Vec<i64> = if e == 2 { vec![0] } else { vec![e - 2, 2 - e] };
    for k in ks {
        let conj = Word::gen(2).conjugate_by(&Word::gen(1).pow(k));
        if Subgroup::generated(3, &[conj, Word::gen(3)], false)?.key() == v.key() {
            return Ok(OneOff::Power(k));
        }
    }
    Ok(OneOff::Mismatch)
}
