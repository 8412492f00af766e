//! Finitely generated subgroups as core graphs: membership, conjugacy,
//! intersections, free-factor certificates, antipodality and the
//! separating-factor construction.

mod whitehead;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{self, canonical_code, fold, iso, pullback, LabeledGraph};
use crate::words::{f0, BasisMap, Word};

pub use whitehead::{descend, is_free_factor, whitehead_moves, WhiteheadResult};

/// Which complex a factor lives in: `AF` works with subgroups,
/// `OF` with their conjugacy classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Af,
    Of,
}

impl Mode {
    pub fn pointed(self) -> bool {
        self == Mode::Af
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s.to_ascii_lowercase().as_str() {
            "af" => Ok(Mode::Af),
            "of" => Ok(Mode::Of),
            other => Err(Error::WrongMode(format!(
                "expected af or of, found '{other}'"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Af => "af",
            Mode::Of => "of",
        })
    }
}

/// A nontrivial subgroup stored as its pointed core `core_*(H)`, or as the
/// unpointed core `core(H)` when only the conjugacy class matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    graph: LabeledGraph,
    pointed: bool,
}

impl Subgroup {
    pub fn generated(rank: usize, words: &[Word], pointed: bool) -> Result<Subgroup> {
        for w in words {
            w.check_rank(rank)?;
        }
        let nontrivial: Vec<Word> = words.iter().filter(|w| !w.is_empty()).cloned().collect();
        if nontrivial.is_empty() {
            return Err(Error::TrivialSubgroup);
        }
        Subgroup::from_graph(&LabeledGraph::bouquet(rank, &nontrivial), pointed)
    }

    /// Parses a comma-separated generator list.
    pub fn parse(rank: usize, text: &str, pointed: bool) -> Result<Subgroup> {
        Subgroup::generated(rank, &Word::parse_list(text, rank)?, pointed)
    }

    /// Folds `g` and takes the core of the requested kind.
    pub fn from_graph(g: &LabeledGraph, pointed: bool) -> Result<Subgroup> {
        let f = fold(g);
        if f.cycle_rank() == 0 {
            return Err(Error::TrivialSubgroup);
        }
        Ok(Subgroup {
            graph: f.core(pointed)?,
            pointed,
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn ambient_rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn rank(&self) -> usize {
        self.graph.cycle_rank()
    }

    fn root(&self) -> usize {
        self.graph.base().unwrap_or(0)
    }

    /// A free basis read off a spanning tree (for an unpointed subgroup,
    /// a basis of one representative of the class).
    pub fn basis(&self) -> Vec<Word> {
        self.graph.basis_at(self.root())
    }

    pub fn unpointed(&self) -> Subgroup {
        Subgroup {
            graph: self
                .graph
                .core(false)
                .expect("nontrivial subgroups have nonempty cores"),
            pointed: false,
        }
    }

    /// A representative subgroup of an unpointed class.
    pub fn pointed_representative(&self) -> Subgroup {
        if self.pointed {
            return self.clone();
        }
        Subgroup::generated(self.ambient_rank(), &self.basis(), true).expect("nontrivial")
    }

    pub fn in_mode(&self, mode: Mode) -> Subgroup {
        match mode {
            Mode::Af => self.pointed_representative(),
            Mode::Of => self.unpointed(),
        }
    }

    /// The image under an endomorphism, in the same mode.
    pub fn image(&self, m: &BasisMap) -> Result<Subgroup> {
        if m.rank() != self.ambient_rank() {
            return Err(Error::RankMismatch {
                expected: self.ambient_rank(),
                got: m.rank(),
            });
        }
        let images: Vec<Word> = self.basis().iter().map(|w| m.apply(w)).collect();
        Subgroup::generated(self.ambient_rank(), &images, self.pointed)
    }

    /// Hashable key: equal keys mean equal subgroups (pointed) or equal
    /// conjugacy classes (unpointed).
    pub fn key(&self) -> Vec<u32> {
        canonical_code(&self.graph)
    }

    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.pointed == other.pointed && iso(&self.graph, &other.graph, self.pointed).is_some()
    }

    fn require_pointed(&self) -> Result<()> {
        if self.pointed {
            Ok(())
        } else {
            Err(Error::Unpointed)
        }
    }

    /// Whether `w` reads a closed path at the basepoint.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        self.require_pointed()?;
        w.check_rank(self.ambient_rank())?;
        let b = self.root();
        Ok(self.graph.trace(b, w)? == Some(b))
    }

    pub fn contains_subgroup(&self, k: &Subgroup) -> Result<bool> {
        self.require_pointed()?;
        k.require_pointed()?;
        for g in k.basis() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Some `γ` with `γ⁻¹ w γ ∈ H`, found by reading the cyclic reduction
    /// of `w` as a loop at each vertex of the core.
    pub fn conjugate_into(&self, w: &Word) -> Result<Option<Word>> {
        if w.is_empty() {
            return Err(Error::TrivialWord);
        }
        w.check_rank(self.ambient_rank())?;
        let (core, c) = w.cyclic_reduce();
        let t = self.graph.transitions()?;
        let paths = self.graph.path_labels(self.root());
        for v in 0..self.graph.vertex_count() {
            if graphs_trace(&t, v, &core) == Some(v) {
                let p = paths[v].as_ref().expect("connected");
                return Ok(Some(&c * &p.inverse()));
            }
        }
        Ok(None)
    }

    /// Some `g` with `g⁻¹ K g ≤ H`.
    pub fn conjugator_of_subgroup(&self, k: &Subgroup) -> Result<Option<Word>> {
        if k.ambient_rank() != self.ambient_rank() {
            return Err(Error::RankMismatch {
                expected: self.ambient_rank(),
                got: k.ambient_rank(),
            });
        }
        let kp = k.pointed_representative();
        let kg = &kp.graph;
        let kb = kg.base().expect("pointed");
        let kpaths = kg.path_labels(kb);
        let r = kg
            .core_vertices(None)
            .iter()
            .position(|&alive| alive)
            .expect("nontrivial subgroups have nonempty cores");
        // K read at r is p⁻¹ K p
        let p = kpaths[r].clone().expect("connected");
        let gens: Vec<Word> = kg.basis_at(r);
        let t = self.graph.transitions()?;
        let hpaths = self.graph.path_labels(self.root());
        for v in 0..self.graph.vertex_count() {
            if gens.iter().all(|g| graphs_trace(&t, v, g) == Some(v)) {
                let q = hpaths[v].as_ref().expect("connected");
                return Ok(Some(&p * &q.inverse()));
            }
        }
        Ok(None)
    }

    /// Whether some conjugate of `k` lies in this subgroup.
    pub fn contains_conjugate_of(&self, k: &Subgroup) -> Result<bool> {
        Ok(self.conjugator_of_subgroup(k)?.is_some())
    }
}

fn graphs_trace(t: &[Vec<Option<usize>>], v: usize, w: &Word) -> Option<usize> {
    graphs::trace_in(t, v, w)
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.basis().iter().map(|w| w.to_string()).collect();
        if self.pointed {
            write!(f, "<{}>", gens.join(", "))
        } else {
            write!(f, "[{}]", gens.join(", "))
        }
    }
}

/// Result of intersecting two subgroups through their pullback.
#[derive(Clone, Debug, Serialize)]
pub struct Intersection {
    /// `H₁ ∩ H₂`, absent when trivial.
    pub based: Option<Subgroup>,
    /// Classes of the nontrivial intersections `H₁ ∩ H₂^g` not through the
    /// basepoint.
    pub others: Vec<Subgroup>,
}

pub fn intersect(h1: &Subgroup, h2: &Subgroup) -> Result<Intersection> {
    h1.require_pointed()?;
    h2.require_pointed()?;
    let comps = pullback(&h1.graph, &h2.graph)?;
    let mut based = None;
    let mut others = Vec::new();
    for c in comps {
        if !c.nontrivial {
            continue;
        }
        if c.contains_base {
            based = Some(Subgroup {
                graph: c.graph.core(true)?,
                pointed: true,
            });
        } else {
            others.push(Subgroup {
                graph: c.graph.core(false)?,
                pointed: false,
            });
        }
    }
    Ok(Intersection { based, others })
}

/// A subgroup together with words completing a basis of it to one of `F_n`.
#[derive(Clone, Debug, Serialize)]
pub struct FactorWitness {
    pub subgroup: Subgroup,
    pub complement: Vec<Word>,
}

impl FactorWitness {
    pub fn new(subgroup: Subgroup, complement: Vec<Word>) -> FactorWitness {
        FactorWitness {
            subgroup,
            complement,
        }
    }

    /// The basis `basis(H) ++ complement` of `F_n`.
    pub fn full_basis(&self) -> Vec<Word> {
        let mut b = self.subgroup.pointed_representative().basis();
        b.extend(self.complement.iter().cloned());
        b
    }

    pub fn verify(&self) -> Result<bool> {
        verify_factor(self)
    }
}

/// Checks that `core_*(H)` wedged with the complement lollipops folds to
/// the rose. A rank count that cannot add up to `n` is an error.
pub fn verify_factor(w: &FactorWitness) -> Result<bool> {
    let n = w.subgroup.ambient_rank();
    let h = w.subgroup.pointed_representative();
    let got = h.rank() + w.complement.len();
    if got != n {
        return Err(Error::RankMismatch { expected: n, got });
    }
    let mut g = h.graph.clone();
    for c in &w.complement {
        c.check_rank(n)?;
        g = g.wedge(&LabeledGraph::word_loop(n, c))?;
    }
    Ok(iso(&fold(&g), &LabeledGraph::rose(n), true).is_some())
}

/// Certificate that a rank `n−1` subgroup is a free factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Corank1 {
    /// `core_*(H)` is a single vertex, so it embeds in the rose.
    Embeds,
    /// Identifying these two vertices and folding gives the rose.
    Identified(usize, usize),
}

pub fn is_corank1_factor(h: &Subgroup) -> Result<Option<Corank1>> {
    let n = h.ambient_rank();
    let h = h.pointed_representative();
    if h.rank() + 1 != n {
        return Err(Error::Precondition(format!(
            "corank-one test needs rank {} but the subgroup has rank {}",
            n - 1,
            h.rank()
        )));
    }
    let g = &h.graph;
    if g.vertex_count() == 1 {
        return Ok(Some(Corank1::Embeds));
    }
    let rose = LabeledGraph::rose(n);
    for v0 in 0..g.vertex_count() {
        for v1 in v0 + 1..g.vertex_count() {
            if iso(&fold(&g.identify(v0, v1)?), &rose, true).is_some() {
                return Ok(Some(Corank1::Identified(v0, v1)));
            }
        }
    }
    Ok(None)
}

/// A verified witness for a rank `n−1` factor, from the corank-one test.
pub fn corank1_witness(h: &Subgroup) -> Result<Option<FactorWitness>> {
    let hp = h.pointed_representative();
    let n = hp.ambient_rank();
    let g = &hp.graph;
    let complement = match is_corank1_factor(&hp)? {
        None => return Ok(None),
        Some(Corank1::Embeds) => {
            let missing = (1..=n)
                .find(|&l| g.edges().iter().all(|e| e.label != l))
                .expect("one label is missing");
            Word::gen(missing)
        }
        Some(Corank1::Identified(v0, v1)) => {
            let paths = g.path_labels(g.base().expect("pointed"));
            let p0 = paths[v0].as_ref().expect("connected");
            let p1 = paths[v1].as_ref().expect("connected");
            p0 * &p1.inverse()
        }
    };
    let w = FactorWitness::new(hp, vec![complement]);
    if !verify_factor(&w)? {
        return Err(Error::Verification(
            "corank-one complement does not verify".into(),
        ));
    }
    Ok(Some(w))
}

/// A verified witness by the cheapest applicable route: the corank-one
/// test for rank `n−1`, Whitehead descent otherwise.
pub fn factor_witness(h: &Subgroup) -> Result<Option<FactorWitness>> {
    let n = h.ambient_rank();
    if h.rank() == n - 1 {
        corank1_witness(h)
    } else {
        is_free_factor(h)
    }
}

/// An automorphism `φ` with `φ(H) = ⟨a_1, …, a_k⟩`.
pub fn extend_to_basis(h: &Subgroup) -> Result<BasisMap> {
    let w = factor_witness(h)?.ok_or(Error::NotAFreeFactor)?;
    extend_witness(&w)
}

/// `φ = ψ⁻¹` where `ψ` sends the standard basis to `basis(H) ++ complement`.
pub fn extend_witness(w: &FactorWitness) -> Result<BasisMap> {
    let n = w.subgroup.ambient_rank();
    let psi = graphs::basis_automorphism(n, w.full_basis())?;
    let phi = psi.inverted().expect("attached by basis_automorphism");
    let k = w.subgroup.rank();
    let target = Subgroup::generated(n, &(1..=k).map(Word::gen).collect::<Vec<_>>(), true)?;
    if !w
        .subgroup
        .pointed_representative()
        .image(&phi)?
        .same_as(&target)
    {
        return Err(Error::Verification(
            "normalizing map misses the standard factor".into(),
        ));
    }
    Ok(phi)
}

fn check_corank1(a: &Subgroup) -> Result<()> {
    let n = a.ambient_rank();
    if a.rank() + 1 != n {
        return Err(Error::Precondition(format!(
            "expected a rank {} factor",
            n - 1
        )));
    }
    Ok(())
}

/// `A ∗ ⟨u⟩ = F_n`.
pub fn antipodal_af(a: &Subgroup, u: &Word) -> Result<bool> {
    check_corank1(a)?;
    if u.is_empty() {
        return Err(Error::TrivialWord);
    }
    let n = a.ambient_rank();
    u.check_rank(n)?;
    let ap = a.pointed_representative();
    let g = ap.graph.wedge(&LabeledGraph::word_loop(n, u))?;
    if iso(&fold(&g), &LabeledGraph::rose(n), true).is_some() {
        return Ok(true);
    }
    if is_corank1_factor(&ap)?.is_none() {
        return Err(Error::NotAFreeFactor);
    }
    Ok(false)
}

/// `A ∗ ⟨γuγ⁻¹⟩ = F_n` for some `γ`: after normalizing `A` to
/// `⟨a_1, …, a_{n−1}⟩`, the cyclic reduction of `u` has exactly one `a_n`.
pub fn antipodal_of(a: &Subgroup, u: &Word) -> Result<bool> {
    check_corank1(a)?;
    if u.is_empty() {
        return Err(Error::TrivialWord);
    }
    let n = a.ambient_rank();
    u.check_rank(n)?;
    let phi = extend_to_basis(&a.pointed_representative())?;
    Ok(phi.apply(u).cyclic_core().count_index(n) == 1)
}

/// Antipodality in `OF_n` decided by folding alone: attach every cyclic
/// rotation of `u` at every vertex of `core(A)` and look for the rose.
/// Only a positive answer is conclusive.
pub fn antipodal_of_by_folding(a: &Subgroup, u: &Word) -> Result<bool> {
    check_corank1(a)?;
    let n = a.ambient_rank();
    let ap = a.pointed_representative();
    let core = u.cyclic_core();
    if core.is_empty() {
        return Err(Error::TrivialWord);
    }
    let rose = LabeledGraph::rose(n);
    let paths = ap.graph.path_labels(ap.graph.base().expect("pointed"));
    for p in paths.iter().flatten() {
        for k in 0..core.len() {
            let r = core.rotate(k);
            let conj = &(p * &r) * &p.inverse();
            let g = ap.graph.wedge(&LabeledGraph::word_loop(n, &conj))?;
            if iso(&fold(&g), &rose, true).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Distance at most two between a rank `n−1` factor and another factor:
/// a nontrivial intersection (AF), or a nontrivial intersection with some
/// conjugate (OF).
pub fn dist_le2(v1: &Subgroup, v2: &Subgroup, mode: Mode) -> Result<bool> {
    check_corank1(v1)?;
    let a = v1.pointed_representative();
    let b = v2.pointed_representative();
    if factor_witness(&a)?.is_none() || factor_witness(&b)?.is_none() {
        return Err(Error::NotAFreeFactor);
    }
    let x = intersect(&a, &b)?;
    Ok(match mode {
        Mode::Af => x.based.is_some(),
        Mode::Of => x.based.is_some() || !x.others.is_empty(),
    })
}

/// A rank-two factor `L ≥ ⟨a_1⟩` meeting `A` trivially.
#[derive(Clone, Debug, Serialize)]
pub struct SeparatingFactor {
    /// 1 when `core_*(A)` has no `a_2`-loop, 2 otherwise.
    pub case: u8,
    /// `M` in case 1, `p` in case 2.
    pub exponent: usize,
    pub factor: FactorWitness,
    /// The based component of `pullback(L, A)` is a tree.
    pub based_tree: bool,
    /// Every component of `pullback(L, A)` is a tree.
    pub all_trees: bool,
}

pub fn separating_factor(a: &Subgroup) -> Result<SeparatingFactor> {
    let n = a.ambient_rank();
    if n < 3 {
        return Err(Error::RankTooSmall { min: 3, got: n });
    }
    check_corank1(a)?;
    let ap = a.pointed_representative();
    if ap.contains(&Word::gen(1))? {
        return Err(Error::Precondition("a_1 lies in A".into()));
    }
    let g = &ap.graph;
    let (case, exponent, second) = if g.has_basis_loop(2).is_none() {
        let run = g.longest_label_path(2).ok_or_else(|| {
            Error::Precondition("a_2-edges of core_*(A) close up without a loop".into())
        })?;
        let m = run + 1;
        (
            1,
            m,
            &(&Word::gen(2).pow(m as i64) * &Word::gen(1)) * &Word::gen(3),
        )
    } else {
        let p = g.diameter() + 1;
        (
            2,
            p,
            &(&Word::gen(2) * &Word::gen(1).pow(p as i64)) * &Word::gen(3),
        )
    };
    let l = Subgroup::generated(n, &[Word::gen(1), second], true)?;
    let mut complement = vec![Word::gen(2)];
    complement.extend((4..=n).map(Word::gen));
    let factor = FactorWitness::new(l.clone(), complement);
    if !verify_factor(&factor)? {
        return Err(Error::Verification(
            "separating factor witness fails".into(),
        ));
    }
    let comps = pullback(&l.graph, &ap.graph)?;
    let based_tree = comps
        .iter()
        .filter(|c| c.contains_base)
        .all(|c| !c.nontrivial);
    let all_trees = comps.iter().all(|c| !c.nontrivial);
    if !based_tree {
        return Err(Error::Verification(format!("L = {l} meets A nontrivially")));
    }
    Ok(SeparatingFactor {
        case,
        exponent,
        factor,
        based_tree,
        all_trees,
    })
}

/// Girth of `core(f₀^k(A))` for `k = 0..=kmax`.
pub fn injrad_growth(n: usize, a: &Subgroup, kmax: usize) -> Result<Vec<usize>> {
    if a.ambient_rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: a.ambient_rank(),
        });
    }
    let f = f0(n)?;
    let mut cur = a.unpointed();
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        out.push(cur.graph.girth()?);
        if k < kmax {
            cur = cur.image(&f)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(n: usize, s: &str) -> Subgroup {
        Subgroup::parse(n, s, true).unwrap()
    }

    fn w(n: usize, s: &str) -> Word {
        Word::parse(s, n).unwrap()
    }

    #[test]
    fn generated_examples() {
        assert_eq!(sg(2, "a").rank(), 1);
        let h = sg(2, "a,baB");
        assert_eq!(h.rank(), 2);
        assert_eq!(h.graph().vertex_count(), 2);
        assert_eq!(sg(2, "ab,ba").rank(), 2);
        assert!(matches!(
            Subgroup::parse(2, "1,aA", true),
            Err(Error::TrivialSubgroup)
        ));
    }

    #[test]
    fn membership() {
        assert!(sg(2, "a").contains(&w(2, "aaaaa")).unwrap());
        assert!(!sg(2, "a").contains(&w(2, "b")).unwrap());
        assert!(sg(2, "a,bb").contains(&w(2, "bbaBB")).unwrap());
        assert!(matches!(
            sg(2, "a").unpointed().contains(&w(2, "a")),
            Err(Error::Unpointed)
        ));
    }

    #[test]
    fn conjugation_witnesses() {
        let h = sg(2, "a");
        let u = w(2, "Bab");
        let g = h.conjugate_into(&u).unwrap().unwrap();
        assert!(h.contains(&u.conjugate_by(&g)).unwrap());
        assert_eq!(h.conjugate_into(&w(2, "b")).unwrap(), None);
        let h = sg(3, "a,baB");
        let u = w(3, "caC");
        let g = h.conjugate_into(&u).unwrap().unwrap();
        assert!(h.contains(&u.conjugate_by(&g)).unwrap());
        assert!(matches!(
            h.conjugate_into(&Word::identity()),
            Err(Error::TrivialWord)
        ));
    }

    #[test]
    fn subgroup_conjugators() {
        let h = sg(3, "a,b");
        let k = sg(3, "cbaBC");
        let g = h.conjugator_of_subgroup(&k).unwrap().unwrap();
        for x in k.basis() {
            assert!(h.contains(&x.conjugate_by(&g)).unwrap());
        }
        assert!(!h.contains_conjugate_of(&sg(3, "c")).unwrap());
        let k = sg(3, "cabAC,cbC");
        assert!(h.contains_conjugate_of(&k).unwrap());
    }

    #[test]
    fn intersections() {
        let x = intersect(&sg(2, "a"), &sg(2, "a")).unwrap();
        assert!(x.based.unwrap().same_as(&sg(2, "a")));
        let x = intersect(&sg(2, "a,bb"), &sg(2, "b")).unwrap();
        assert!(x.based.unwrap().same_as(&sg(2, "bb")));
        let x = intersect(&sg(2, "a"), &sg(2, "baB")).unwrap();
        assert!(x.based.is_none());
        assert_eq!(x.others.len(), 1);
        assert_eq!(x.others[0].rank(), 1);
    }

    #[test]
    fn factor_verification() {
        for n in 2..=5 {
            let comp: Vec<Word> = (2..=n).map(Word::gen).collect();
            assert!(verify_factor(&FactorWitness::new(sg(n, "a"), comp)).unwrap());
        }
        let w3 = FactorWitness::new(sg(3, "a,bcB"), vec![w(3, "b")]);
        assert!(verify_factor(&w3).unwrap());
        let bad = FactorWitness::new(sg(3, "a"), vec![w(3, "b")]);
        assert!(matches!(
            verify_factor(&bad),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn corank_one() {
        for n in 2..=5 {
            let h =
                Subgroup::generated(n, &(1..n).map(Word::gen).collect::<Vec<_>>(), true).unwrap();
            assert_eq!(is_corank1_factor(&h).unwrap(), Some(Corank1::Embeds));
        }
        assert!(matches!(
            is_corank1_factor(&sg(3, "a,bcB")).unwrap(),
            Some(Corank1::Identified(_, _))
        ));
        assert_eq!(is_corank1_factor(&sg(3, "aa,b")).unwrap(), None);
        assert!(is_corank1_factor(&sg(3, "a")).is_err());
        let wit = corank1_witness(&sg(3, "a,bcB")).unwrap().unwrap();
        assert!(wit.verify().unwrap());
    }

    #[test]
    fn extension_maps() {
        let phi = extend_to_basis(&sg(3, "b")).unwrap();
        assert!(sg(3, "b").image(&phi).unwrap().same_as(&sg(3, "a")));
        let phi = extend_to_basis(&sg(3, "ab")).unwrap();
        assert!(sg(3, "ab").image(&phi).unwrap().same_as(&sg(3, "a")));
        let phi = extend_to_basis(&sg(3, "a,bcB")).unwrap();
        assert!(sg(3, "a,bcB").image(&phi).unwrap().same_as(&sg(3, "a,b")));
        assert!(matches!(
            extend_to_basis(&sg(3, "aa")),
            Err(Error::NotAFreeFactor)
        ));
    }

    #[test]
    fn antipodality() {
        let a = sg(3, "a,b");
        assert!(antipodal_af(&a, &w(3, "abcba")).unwrap());
        assert!(!antipodal_af(&a, &w(3, "ab")).unwrap());
        assert!(!antipodal_af(&a, &w(3, "caC")).unwrap());
        // conjugating by a word starting with c hides the complement in AF
        let u = w(3, "cacAC");
        assert!(!antipodal_af(&a, &u).unwrap());
        assert!(antipodal_of(&a, &u).unwrap());
        assert!(antipodal_of_by_folding(&a, &u).unwrap());
        assert!(!antipodal_of(&a, &w(3, "abAB")).unwrap());
        assert!(antipodal_of(&a, &w(3, "ca")).unwrap());
        assert!(matches!(
            antipodal_af(&sg(3, "aa,b"), &w(3, "ab")),
            Err(Error::NotAFreeFactor)
        ));
    }

    #[test]
    fn distance_two() {
        let v1 = sg(3, "a,b");
        assert!(dist_le2(&v1, &sg(3, "a"), Mode::Af).unwrap());
        let v2 = sg(3, "caC");
        assert!(!dist_le2(&v1, &v2, Mode::Af).unwrap());
        assert!(dist_le2(&v1, &v2, Mode::Of).unwrap());
        assert!(!dist_le2(&v1, &sg(3, "c"), Mode::Af).unwrap());
        assert!(!dist_le2(&v1, &sg(3, "c"), Mode::Of).unwrap());
    }

    #[test]
    fn separating_cases() {
        let s = separating_factor(&sg(3, "b,c")).unwrap();
        assert_eq!(s.case, 2);
        assert!(s.all_trees);
        let s = separating_factor(&sg(4, "b,c,d")).unwrap();
        assert_eq!(s.case, 2);
        let s = separating_factor(&sg(3, "baB,c")).unwrap();
        assert_eq!(s.case, 1);
        assert!(s.based_tree);
        assert!(matches!(
            separating_factor(&sg(3, "a,c")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn growth() {
        assert_eq!(injrad_growth(3, &sg(3, "a"), 0).unwrap(), vec![1]);
        let seq = injrad_growth(3, &sg(3, "a"), 12).unwrap();
        assert!(seq.iter().max().unwrap() > &seq[0]);
        let seq = injrad_growth(4, &sg(4, "a,b"), 12).unwrap();
        assert!(seq.iter().any(|&g| g >= 3));
    }
}
