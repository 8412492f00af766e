//! Sticks, bonded triples, snops and supersticks of a standard apartment.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{antipodal, mask_of, Apartment, FactorVertex};
use crate::error::{Error, Result};
use crate::graphs::basis_automorphism;
use crate::report::{Check, Report};
use crate::subgroups::{factor_witness, verify_factor, FactorWitness, Mode, Subgroup};
use crate::words::{BasisMap, Word};

/// A rank-one vertex `⟨b_i^ε b_j^δ⟩` (or its class) at the face `(i, j)`.
#[derive(Clone, Debug)]
pub struct Stick {
    pub face: (usize, usize),
    pub word: Word,
    pub vertex: FactorVertex,
}

#[derive(Clone, Debug)]
pub struct Superstick {
    pub face: (usize, usize, usize),
    pub word: Word,
    pub vertex: FactorVertex,
}

fn rest(basis: &[Word], skip: &[usize]) -> Vec<Word> {
    (1..=basis.len())
        .filter(|i| !skip.contains(i))
        .map(|i| basis[i - 1].clone())
        .collect()
}

fn face_pair(ap: &Apartment, i: usize, j: usize) -> Result<(usize, usize)> {
    ap.check_index(i)?;
    ap.check_index(j)?;
    if i == j {
        return Err(Error::BadIndex(format!(
            "face ({i}, {j}) needs distinct indices"
        )));
    }
    Ok((i.min(j), i.max(j)))
}

fn face_triple(ap: &Apartment, face: (usize, usize, usize)) -> Result<(usize, usize, usize)> {
    let mut v = [face.0, face.1, face.2];
    for &i in &v {
        ap.check_index(i)?;
    }
    v.sort_unstable();
    if v[0] == v[1] || v[1] == v[2] {
        return Err(Error::BadIndex(format!(
            "face {face:?} needs three distinct indices"
        )));
    }
    Ok((v[0], v[1], v[2]))
}

/// The sticks at the face `(i, j)`: four subgroups in AF, two classes in OF.
pub fn sticks_of(ap: &Apartment, i: usize, j: usize) -> Result<Vec<Stick>> {
    let (i, j) = face_pair(ap, i, j)?;
    let b = ap.require_basis()?;
    let (bi, bj) = (&b[i - 1], &b[j - 1]);
    let words = match ap.mode() {
        Mode::Af => vec![bi * bj, bj * bi, &bi.inverse() * bj, bi * &bj.inverse()],
        Mode::Of => vec![bi * bj, &bi.inverse() * bj],
    };
    let mut comp = vec![bj.clone()];
    comp.extend(rest(b, &[i, j]));
    let mut out: Vec<Stick> = Vec::new();
    for w in words {
        let vertex = FactorVertex::with_complement(
            ap.n(),
            std::slice::from_ref(&w),
            comp.clone(),
            ap.mode(),
        )?;
        if out.iter().all(|s| s.vertex != vertex) {
            out.push(Stick {
                face: (i, j),
                word: w,
                vertex,
            });
        }
    }
    Ok(out)
}

pub fn all_sticks(ap: &Apartment) -> Result<Vec<Stick>> {
    let mut out = Vec::new();
    for i in 1..=ap.n() {
        for j in i + 1..=ap.n() {
            out.extend(sticks_of(ap, i, j)?);
        }
    }
    Ok(out)
}

/// Membership in the list of sticks.
pub fn is_stick(c: &FactorVertex, ap: &Apartment) -> Result<bool> {
    Ok(all_sticks(ap)?.iter().any(|s| &s.vertex == c))
}

/// The metric description of sticks: `C` lies below some rank-two vertex
/// `Δ[b_i, b_j]` and is antipodal to the barycentres opposite `b_i` and
/// `b_j`.
pub fn stick_characterization_check(c: &FactorVertex, ap: &Apartment) -> Result<bool> {
    if c.rank() != 1 {
        return Err(Error::Precondition(format!(
            "expected a rank-one vertex, got rank {}",
            c.rank()
        )));
    }
    ap.require_basis()?;
    if c.mode() != ap.mode() {
        return Err(Error::WrongMode("vertex and apartment modes differ".into()));
    }
    for i in 1..=ap.n() {
        for j in i + 1..=ap.n() {
            if c.is_below(ap.vertex(mask_of(&[i, j]))?)?
                && antipodal(ap.opposite(i)?, c)?
                && antipodal(ap.opposite(j)?, c)?
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Sticks at the faces `(i,j)`, `(j,k)`, `(i,k)` of a rank-three face.
#[derive(Clone, Debug)]
pub struct BondedTriple {
    pub sticks: [Stick; 3],
}

impl BondedTriple {
    fn keys(&self) -> [Vec<u32>; 3] {
        [
            self.sticks[0].vertex.key(),
            self.sticks[1].vertex.key(),
            self.sticks[2].vertex.key(),
        ]
    }

    pub fn words(&self) -> [String; 3] {
        [
            self.sticks[0].word.to_string(),
            self.sticks[1].word.to_string(),
            self.sticks[2].word.to_string(),
        ]
    }
}

fn rank2_factor(ap: &Apartment, k: &Subgroup, face: [usize; 3]) -> Result<bool> {
    let b = ap.require_basis()?;
    for m in face {
        let mut comp = vec![b[m - 1].clone()];
        comp.extend(rest(b, &face));
        if verify_factor(&FactorWitness::new(k.clone(), comp))? {
            return Ok(true);
        }
    }
    Ok(factor_witness(k)?.is_some())
}

fn af_triples(ap: &Apartment, (i, j, k): (usize, usize, usize)) -> Result<Vec<BondedTriple>> {
    let n = ap.n();
    let (s1, s2, s3) = (
        sticks_of(ap, i, j)?,
        sticks_of(ap, j, k)?,
        sticks_of(ap, i, k)?,
    );
    let mut out = Vec::new();
    for x in &s1 {
        for y in &s2 {
            for z in &s3 {
                let all = Subgroup::generated(
                    n,
                    &[x.word.clone(), y.word.clone(), z.word.clone()],
                    true,
                )?;
                if all.rank() != 2 {
                    continue;
                }
                let pairs = [(&x.word, &y.word), (&y.word, &z.word), (&x.word, &z.word)];
                let mut spans = true;
                for (p, q) in pairs {
                    if !Subgroup::generated(n, &[p.clone(), q.clone()], true)?.same_as(&all) {
                        spans = false;
                        break;
                    }
                }
                if spans && rank2_factor(ap, &all, [i, j, k])? {
                    out.push(BondedTriple {
                        sticks: [x.clone(), y.clone(), z.clone()],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Bonded triples of a rank-three face. In OF they are the images of the
/// AF triples.
pub fn bonded_triples(ap: &Apartment, face: (usize, usize, usize)) -> Result<Vec<BondedTriple>> {
    let face = face_triple(ap, face)?;
    match ap.mode() {
        Mode::Af => af_triples(ap, face),
        Mode::Of => {
            let af = af_triples(&ap.in_mode(Mode::Af), face)?;
            let (i, j, k) = face;
            let lists = [
                sticks_of(ap, i, j)?,
                sticks_of(ap, j, k)?,
                sticks_of(ap, i, k)?,
            ];
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for t in af {
                let mut picked = Vec::with_capacity(3);
                for (slot, s) in t.sticks.iter().enumerate() {
                    let v = s.vertex.in_mode(Mode::Of);
                    let hit = lists[slot].iter().find(|c| c.vertex == v).ok_or_else(|| {
                        Error::Verification(format!("class of {} is not an OF stick", s.word))
                    })?;
                    picked.push(hit.clone());
                }
                let triple = BondedTriple {
                    sticks: [picked[0].clone(), picked[1].clone(), picked[2].clone()],
                };
                if seen.insert(triple.keys()) {
                    out.push(triple);
                }
            }
            Ok(out)
        }
    }
}

/// Whether every pair of sticks occurring in some triple occurs in
/// exactly one.
pub fn completion_unique(triples: &[BondedTriple]) -> bool {
    let mut count: HashMap<(usize, Vec<u32>, Vec<u32>), usize> = HashMap::new();
    for t in triples {
        let k = t.keys();
        for (slot, (x, y)) in [(0, 1), (1, 2), (0, 2)].into_iter().enumerate() {
            *count.entry((slot, k[x].clone(), k[y].clone())).or_default() += 1;
        }
    }
    count.values().all(|&c| c == 1)
}

/// A choice of one stick per rank-two face, bonded on every rank-three face.
#[derive(Clone, Debug)]
pub struct Snop {
    /// Index into the face's stick list, faces in lexicographic order.
    pub choice: Vec<usize>,
    pub sticks: Vec<Stick>,
}

/// Snops and the edges of the cube they parametrize.
#[derive(Clone, Debug)]
pub struct SnopCube {
    pub faces: Vec<(usize, usize)>,
    pub snops: Vec<Snop>,
    /// Pairs of snops sharing all but `n−1` sticks.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct SnopView {
    faces: Vec<(usize, usize)>,
    snops: Vec<Vec<String>>,
    edges: Vec<(usize, usize)>,
}

impl SnopCube {
    pub fn differences(&self, a: usize, b: usize) -> usize {
        self.snops[a]
            .choice
            .iter()
            .zip(&self.snops[b].choice)
            .filter(|(x, y)| x != y)
            .count()
    }

    pub fn min_difference(&self) -> Option<usize> {
        let m = self.snops.len();
        (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .map(|(a, b)| self.differences(a, b))
            .min()
    }

    pub fn to_json(&self) -> String {
        let v = SnopView {
            faces: self.faces.clone(),
            snops: self
                .snops
                .iter()
                .map(|s| s.sticks.iter().map(|t| t.word.to_string()).collect())
                .collect(),
            edges: self.edges.clone(),
        };
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for (k, s) in self.snops.iter().enumerate() {
            let words: Vec<String> = s.sticks.iter().map(|t| t.word.to_string()).collect();
            out.push_str(&format!("  n{k} [label=\"{}\"];\n", words.join(" ")));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  n{a} -- n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn snops(ap: &Apartment) -> Result<SnopCube> {
    ap.require_mode(Mode::Af)?;
    let n = ap.n();
    let mut faces = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            faces.push((i, j));
        }
    }
    let index: HashMap<(usize, usize), usize> =
        faces.iter().enumerate().map(|(k, &f)| (f, k)).collect();
    let lists: Vec<Vec<Stick>> = faces
        .iter()
        .map(|&(i, j)| sticks_of(ap, i, j))
        .collect::<Result<_>>()?;

    // each rank-three face: its subface indices and allowed choice triples
    let mut constraints: Vec<([usize; 3], HashSet<[usize; 3]>)> = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let fs = [index[&(i, j)], index[&(j, k)], index[&(i, k)]];
                let mut ok = HashSet::new();
                for t in bonded_triples(ap, (i, j, k))? {
                    let mut pos = [0; 3];
                    for s in 0..3 {
                        pos[s] = lists[fs[s]]
                            .iter()
                            .position(|c| c.vertex == t.sticks[s].vertex)
                            .expect("listed");
                    }
                    ok.insert(pos);
                }
                constraints.push((fs, ok));
            }
        }
    }

    let mut found = Vec::new();
    let mut choice = vec![0usize; faces.len()];
    search(0, &mut choice, &lists, &constraints, &mut found);

    let snops: Vec<Snop> = found
        .into_iter()
        .map(|c: Vec<usize>| Snop {
            sticks: c
                .iter()
                .enumerate()
                .map(|(f, &k)| lists[f][k].clone())
                .collect(),
            choice: c,
        })
        .collect();
    let mut cube = SnopCube {
        faces,
        snops,
        edges: Vec::new(),
    };
    for a in 0..cube.snops.len() {
        for b in a + 1..cube.snops.len() {
            if cube.differences(a, b) == n - 1 {
                cube.edges.push((a, b));
            }
        }
    }
    Ok(cube)
}

fn search(
    f: usize,
    choice: &mut Vec<usize>,
    lists: &[Vec<Stick>],
    constraints: &[([usize; 3], HashSet<[usize; 3]>)],
    found: &mut Vec<Vec<usize>>,
) {
    if f == lists.len() {
        found.push(choice.clone());
        return;
    }
    for k in 0..lists[f].len() {
        choice[f] = k;
        let consistent = constraints.iter().all(|(fs, ok)| {
            fs.iter().max() != Some(&f)
                || ok.contains(&[choice[fs[0]], choice[fs[1]], choice[fs[2]]])
        });
        if consistent {
            search(f + 1, choice, lists, constraints, found);
        }
    }
}

fn permutations3(v: [usize; 3]) -> [[usize; 3]; 6] {
    let [a, b, c] = v;
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

/// `⟨b_p^δ₁ b_q^δ₂ b_r^δ₃⟩` over all orders and signs, deduplicated in the
/// apartment's mode.
pub fn supersticks(ap: &Apartment, face: (usize, usize, usize)) -> Result<Vec<Superstick>> {
    let (i, j, k) = face_triple(ap, face)?;
    let b = ap.require_basis()?;
    let mut out: Vec<Superstick> = Vec::new();
    for [p, q, r] in permutations3([i, j, k]) {
        let mut comp = vec![b[q - 1].clone(), b[r - 1].clone()];
        comp.extend(rest(b, &[i, j, k]));
        for signs in 0..8u8 {
            let part = |idx: usize, bit: u8| {
                if signs >> bit & 1 == 1 {
                    b[idx - 1].inverse()
                } else {
                    b[idx - 1].clone()
                }
            };
            let w = &(&part(p, 0) * &part(q, 1)) * &part(r, 2);
            let vertex = FactorVertex::with_complement(
                ap.n(),
                std::slice::from_ref(&w),
                comp.clone(),
                ap.mode(),
            )?;
            if out.iter().all(|s| s.vertex != vertex) {
                out.push(Superstick {
                    face: (i, j, k),
                    word: w,
                    vertex,
                });
            }
        }
    }
    Ok(out)
}

/// Each superstick of a rank-three face against every rank `n−1` vertex
/// spanned by two of its letters and the rest of the basis.
pub fn superstick_antipodality(ap: &Apartment, face: (usize, usize, usize)) -> Result<Report> {
    let (i, j, k) = face_triple(ap, face)?;
    let outside = ap.full_mask() ^ mask_of(&[i, j, k]);
    let mut report = Report::new(format!("superstick antipodality at ({i},{j},{k})"));
    let walls = [
        mask_of(&[i, j]) | outside,
        mask_of(&[j, k]) | outside,
        mask_of(&[i, k]) | outside,
    ];
    for s in supersticks(ap, (i, j, k))? {
        let mut misses = Vec::new();
        for &m in &walls {
            let v = ap.vertex(m)?;
            if !antipodal(v, &s.vertex)? {
                misses.push(v.to_string());
            }
        }
        report.push(
            Check::new(
                s.vertex.to_string(),
                misses.is_empty(),
                "antipodal to the three walls",
            )
            .with_witnesses(misses),
        );
    }
    Ok(report)
}

/// `ι` for the basis of the apartment: `b_i ↦ b_i⁻¹`.
pub fn iota_for(ap: &Apartment) -> Result<BasisMap> {
    let n = ap.n();
    let psi = basis_automorphism(n, ap.require_basis()?.to_vec())?;
    let psi_inv = psi.inverted().expect("attached");
    Ok(psi.compose(&BasisMap::iota(n).compose(&psi_inv)))
}

/// `ι` fixes every stick class and moves every superstick class.
pub fn iota_action_check(ap: &Apartment) -> Result<Report> {
    ap.require_mode(Mode::Of)?;
    let iota = iota_for(ap)?;
    let image_key = |v: &FactorVertex| -> Result<Vec<u32>> {
        Ok(v.representative().image(&iota)?.unpointed().key())
    };
    let mut report = Report::new(format!("iota action n={}", ap.n()));
    let sticks = all_sticks(ap)?;
    let mut moved = Vec::new();
    for s in &sticks {
        if image_key(&s.vertex)? != s.vertex.key() {
            moved.push(s.vertex.to_string());
        }
    }
    report.push(
        Check::new(
            "sticks fixed",
            moved.is_empty(),
            format!("{} sticks, {} moved", sticks.len(), moved.len()),
        )
        .with_witnesses(moved),
    );
    let n = ap.n();
    let mut total = 0;
    let mut fixed = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for s in supersticks(ap, (i, j, k))? {
                    total += 1;
                    if image_key(&s.vertex)? == s.vertex.key() {
                        fixed.push(s.vertex.to_string());
                    }
                }
            }
        }
    }
    report.push(
        Check::new(
            "supersticks moved",
            fixed.is_empty(),
            format!("{total} supersticks, {} fixed", fixed.len()),
        )
        .with_witnesses(fixed),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard_basis_apartment;

    fn std3(mode: Mode) -> Apartment {
        standard_basis_apartment(3, mode).unwrap()
    }

    fn class(s: &str) -> Vec<u32> {
        Subgroup::parse(3, s, false).unwrap().key()
    }

    #[test]
    fn af_sticks_of_ab() {
        let got: HashSet<String> = sticks_of(&std3(Mode::Af), 1, 2)
            .unwrap()
            .iter()
            .map(|s| s.word.to_string())
            .collect();
        let want: HashSet<String> = ["ab", "ba", "Ab", "aB"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, want);
        assert_eq!(all_sticks(&std3(Mode::Af)).unwrap().len(), 12);
        assert_eq!(all_sticks(&std3(Mode::Of)).unwrap().len(), 6);
    }

    #[test]
    fn characterization_matches_list() {
        let ap = std3(Mode::Af);
        let v = |s: &str| {
            FactorVertex::generated(3, &Word::parse_list(s, 3).unwrap(), Mode::Af).unwrap()
        };
        assert!(stick_characterization_check(&v("ab"), &ap).unwrap());
        assert!(!stick_characterization_check(&v("a"), &ap).unwrap());
        assert!(!stick_characterization_check(&v("abb"), &ap).unwrap());
        for s in all_sticks(&ap).unwrap() {
            assert!(stick_characterization_check(&s.vertex, &ap).unwrap());
        }
    }

    #[test]
    fn triples_and_snops() {
        let ap = std3(Mode::Af);
        let t = bonded_triples(&ap, (1, 2, 3)).unwrap();
        assert_eq!(t.len(), 8);
        assert!(completion_unique(&t));
        let cube = snops(&ap).unwrap();
        assert_eq!(cube.snops.len(), 8);
        assert_eq!(cube.edges.len(), 12);
        assert_eq!(cube.min_difference(), Some(2));
    }

    #[test]
    fn of_triples_match_example() {
        let t = bonded_triples(&std3(Mode::Of), (1, 2, 3)).unwrap();
        assert_eq!(t.len(), 4);
        assert!(completion_unique(&t));
        let want = [
            ["ab", "Bc", "ac"],
            ["ab", "bc", "Ac"],
            ["Ab", "bc", "ac"],
            ["Ab", "Bc", "Ac"],
        ];
        let got: HashSet<[Vec<u32>; 3]> = t.iter().map(|x| x.keys()).collect();
        for w in want {
            assert!(
                got.contains(&[class(w[0]), class(w[1]), class(w[2])]),
                "{w:?}"
            );
        }
    }

    #[test]
    fn superstick_counts() {
        assert_eq!(supersticks(&std3(Mode::Af), (1, 2, 3)).unwrap().len(), 24);
        let of = supersticks(&std3(Mode::Of), (1, 2, 3)).unwrap();
        assert_eq!(of.len(), 8);
        let keys: HashSet<Vec<u32>> = of.iter().map(|s| s.vertex.key()).collect();
        for w in ["abc", "abC", "aBc", "aBC", "acb", "acB", "aCb", "aCB"] {
            assert!(keys.contains(&class(w)), "{w}");
        }
        assert!(!keys.contains(&class("aCBc")));
        assert!(superstick_antipodality(&std3(Mode::Af), (1, 2, 3))
            .unwrap()
            .passed());
        assert!(superstick_antipodality(&std3(Mode::Of), (1, 2, 3))
            .unwrap()
            .passed());
    }

    #[test]
    fn iota() {
        let ap = std3(Mode::Of);
        assert!(iota_action_check(&ap).unwrap().passed());
        let i = iota_for(&ap).unwrap();
        let img = Subgroup::parse(3, "abc", false).unwrap().image(&i).unwrap();
        assert_eq!(img.key(), class("acb"));
        assert!(iota_action_check(&std3(Mode::Af)).is_err());
    }
}
