//! Apartments in `AF_n` and `OF_n`, with the structures attached to
//! standard ones (sticks, bonded triples, snops, supersticks) and the
//! checkers that tell standard apartments from fake ones.

mod examples;
mod fake;
mod io;
mod of;
mod overlap;
mod sticks;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{fold, invert_images, iso, LabeledGraph};
use crate::report::{Check, Report};
use crate::subgroups::{
    extend_witness, factor_witness, verify_factor, FactorWitness, Mode, Subgroup,
};
use crate::words::Word;

pub use examples::{example_6_8, figure1_left, figure1_right, one_off_apartment};
pub use fake::{fake_family, FakeFamily};
pub use of::{
    buildup_conditions, midpoints, of3_standardness, one_off_check, potential_stick, Midpoint,
    Of3Result, OneOff, PotentialStick, Verdict,
};
pub use overlap::{overlap_report, Overlap, OverlapClass};
pub use sticks::{
    all_sticks, bonded_triples, completion_unique, iota_action_check, is_stick, snops,
    stick_characterization_check, sticks_of, superstick_antipodality, supersticks, BondedTriple,
    Snop, SnopCube, Stick, Superstick,
};

/// A proper free factor, as a subgroup (AF) or conjugacy class (OF),
/// together with a verified complement.
#[derive(Clone, Debug)]
pub struct FactorVertex {
    subgroup: Subgroup,
    mode: Mode,
    witness: FactorWitness,
    normalizer: OnceLock<crate::words::BasisMap>,
}

impl FactorVertex {
    /// Checks the witness and the rank bounds.
    pub fn new(witness: FactorWitness, mode: Mode) -> Result<FactorVertex> {
        let n = witness.subgroup.ambient_rank();
        let k = witness.subgroup.rank();
        if k == 0 || k >= n {
            return Err(Error::Precondition(format!(
                "vertex rank must lie in 1..={}, got {k}",
                n - 1
            )));
        }
        if !verify_factor(&witness)? {
            return Err(Error::NotAFreeFactor);
        }
        Ok(FactorVertex {
            subgroup: witness.subgroup.in_mode(mode),
            mode,
            witness: FactorWitness::new(
                witness.subgroup.pointed_representative(),
                witness.complement,
            ),
            normalizer: OnceLock::new(),
        })
    }

    pub fn with_complement(
        n: usize,
        gens: &[Word],
        complement: Vec<Word>,
        mode: Mode,
    ) -> Result<FactorVertex> {
        let h = Subgroup::generated(n, gens, true)?;
        FactorVertex::new(FactorWitness::new(h, complement), mode)
    }

    /// Finds a complement by the general free-factor test.
    pub fn certify(h: &Subgroup, mode: Mode) -> Result<FactorVertex> {
        let w = factor_witness(&h.pointed_representative())?.ok_or(Error::NotAFreeFactor)?;
        FactorVertex::new(w, mode)
    }

    pub fn generated(n: usize, gens: &[Word], mode: Mode) -> Result<FactorVertex> {
        FactorVertex::certify(&Subgroup::generated(n, gens, true)?, mode)
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn witness(&self) -> &FactorWitness {
        &self.witness
    }

    pub fn rank(&self) -> usize {
        self.subgroup.rank()
    }

    pub fn ambient_rank(&self) -> usize {
        self.subgroup.ambient_rank()
    }

    /// A pointed subgroup representing the vertex.
    pub fn representative(&self) -> &Subgroup {
        &self.witness.subgroup
    }

    pub fn key(&self) -> Vec<u32> {
        self.subgroup.key()
    }

    /// A generator, for rank-one vertices.
    pub fn generator(&self) -> Word {
        self.representative().basis().swap_remove(0)
    }

    /// An automorphism taking the representative to `⟨a_1, …, a_k⟩`.
    pub fn normalizer(&self) -> Result<&crate::words::BasisMap> {
        if let Some(m) = self.normalizer.get() {
            return Ok(m);
        }
        let m = extend_witness(&self.witness)?;
        Ok(self.normalizer.get_or_init(|| m))
    }

    /// Whether `self` is a face of `other`: inclusion in AF, inclusion of
    /// some conjugate in OF.
    pub fn is_below(&self, other: &FactorVertex) -> Result<bool> {
        match self.mode {
            Mode::Af => other
                .representative()
                .contains_subgroup(self.representative()),
            Mode::Of => other
                .representative()
                .contains_conjugate_of(self.representative()),
        }
    }

    pub fn in_mode(&self, mode: Mode) -> FactorVertex {
        FactorVertex {
            subgroup: self.witness.subgroup.in_mode(mode),
            mode,
            witness: self.witness.clone(),
            normalizer: self.normalizer.clone(),
        }
    }
}

impl PartialEq for FactorVertex {
    fn eq(&self, other: &FactorVertex) -> bool {
        self.mode == other.mode && self.key() == other.key()
    }
}

impl Eq for FactorVertex {}

impl fmt::Display for FactorVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .representative()
            .basis()
            .iter()
            .map(|w| w.to_string())
            .collect();
        match self.mode {
            Mode::Af => write!(f, "<{}>", gens.join(", ")),
            Mode::Of => write!(f, "[{}]", gens.join(", ")),
        }
    }
}

/// Algebraic antipodality of a rank `n−1` vertex and a rank-one vertex.
pub fn antipodal(v: &FactorVertex, c: &FactorVertex) -> Result<bool> {
    let n = v.ambient_rank();
    if v.rank() + 1 != n || c.rank() != 1 {
        return Err(Error::Precondition(
            "antipodality pairs a rank n-1 vertex with a rank-one vertex".into(),
        ));
    }
    antipodal_word(v, &c.generator())
}

/// `V ∗ ⟨u⟩ = F_n` (AF) or `V ∗ ⟨γuγ⁻¹⟩ = F_n` for some `γ` (OF).
pub fn antipodal_word(v: &FactorVertex, u: &Word) -> Result<bool> {
    let n = v.ambient_rank();
    match v.mode {
        Mode::Af => {
            let g = v
                .representative()
                .graph()
                .wedge(&LabeledGraph::word_loop(n, u))?;
            Ok(iso(&fold(&g), &LabeledGraph::rose(n), true).is_some())
        }
        Mode::Of => Ok(v.normalizer()?.apply(u).cyclic_core().count_index(n) == 1),
    }
}

/// The subsets of `{1..n}` are bit masks, bit `i−1` standing for `i`.
pub fn subset_indices(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b as usize + 1)
        .collect()
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

fn subset_label(mask: u32) -> String {
    let parts: Vec<String> = subset_indices(mask).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// An assignment of free factors to the nonempty proper subsets of
/// `{1..n}`, stored in full.
#[derive(Clone, Debug)]
pub struct Apartment {
    n: usize,
    mode: Mode,
    vertices: BTreeMap<u32, FactorVertex>,
    basis: Option<Vec<Word>>,
}

impl Apartment {
    /// Every nonempty proper subset must be assigned a vertex of the
    /// given mode; the apartment invariants are left to
    /// [`verify_apartment`].
    pub fn new(
        n: usize,
        mode: Mode,
        vertices: BTreeMap<u32, FactorVertex>,
        basis: Option<Vec<Word>>,
    ) -> Result<Apartment> {
        if n < 2 {
            return Err(Error::RankTooSmall { min: 2, got: n });
        }
        let full = (1u32 << n) - 1;
        for mask in 1..full {
            let v = vertices.get(&mask).ok_or_else(|| {
                Error::BadIndex(format!("subset {} unassigned", subset_label(mask)))
            })?;
            if v.mode != mode || v.ambient_rank() != n {
                return Err(Error::WrongMode(format!(
                    "vertex at {} does not match the apartment",
                    subset_label(mask)
                )));
            }
        }
        if vertices.keys().any(|&m| m == 0 || m >= full) {
            return Err(Error::BadIndex(
                "only nonempty proper subsets may be assigned".into(),
            ));
        }
        if let Some(b) = &basis {
            if b.len() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    got: b.len(),
                });
            }
        }
        Ok(Apartment {
            n,
            mode,
            vertices,
            basis,
        })
    }

    /// Each subset is given generators; complements are found by the
    /// general free-factor test.
    pub fn from_generators(n: usize, mode: Mode, gens: &[(u32, Vec<Word>)]) -> Result<Apartment> {
        let mut vertices = BTreeMap::new();
        for (mask, ws) in gens {
            vertices.insert(*mask, FactorVertex::generated(n, ws, mode)?);
        }
        Apartment::new(n, mode, vertices, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn basis(&self) -> Option<&[Word]> {
        self.basis.as_deref()
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn vertex(&self, mask: u32) -> Result<&FactorVertex> {
        self.vertices
            .get(&mask)
            .ok_or_else(|| Error::BadIndex(format!("no vertex at subset mask {mask}")))
    }

    pub fn vertices(&self) -> impl Iterator<Item = (u32, &FactorVertex)> {
        self.vertices.iter().map(|(&m, v)| (m, v))
    }

    /// The rank-one vertex `σ({i})`.
    pub fn rank1(&self, i: usize) -> Result<&FactorVertex> {
        self.check_index(i)?;
        self.vertex(1 << (i - 1))
    }

    /// The barycentre of the face opposite `σ({i})`.
    pub fn opposite(&self, i: usize) -> Result<&FactorVertex> {
        self.check_index(i)?;
        self.vertex(self.full_mask() ^ (1 << (i - 1)))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::BadIndex(format!("index {i} outside 1..={}", self.n)));
        }
        Ok(())
    }

    pub(crate) fn require_basis(&self) -> Result<&[Word]> {
        self.basis()
            .ok_or_else(|| Error::Precondition("the apartment is not given by a basis".into()))
    }

    pub(crate) fn require_mode(&self, mode: Mode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::WrongMode(format!(
                "operation needs {mode} mode, apartment is {}",
                self.mode
            )));
        }
        Ok(())
    }

    /// The same assignment read in another mode.
    pub fn in_mode(&self, mode: Mode) -> Apartment {
        Apartment {
            n: self.n,
            mode,
            vertices: self
                .vertices
                .iter()
                .map(|(&m, v)| (m, v.in_mode(mode)))
                .collect(),
            basis: self.basis.clone(),
        }
    }

    /// Hasse diagram of the assignment.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n  node [shape=box];\n");
        for (m, v) in &self.vertices {
            out.push_str(&format!("  s{m} [label=\"{} {}\"];\n", subset_label(*m), v));
        }
        for &s in self.vertices.keys() {
            for &t in self.vertices.keys() {
                if s & t == s && (t ^ s).count_ones() == 1 {
                    out.push_str(&format!("  s{s} -- s{t};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Subsets with their vertices, for serialization.
    pub fn view(&self) -> ApartmentView {
        ApartmentView {
            n: self.n,
            mode: self.mode,
            basis: self
                .basis
                .as_ref()
                .map(|b| b.iter().map(|w| w.to_string()).collect()),
            vertices: self
                .vertices
                .iter()
                .map(|(&m, v)| VertexView {
                    subset: subset_indices(m),
                    rank: v.rank(),
                    vertex: v.to_string(),
                    complement: v.witness.complement.iter().map(|w| w.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ApartmentView {
    pub n: usize,
    pub mode: Mode,
    pub basis: Option<Vec<String>>,
    pub vertices: Vec<VertexView>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexView {
    pub subset: Vec<usize>,
    pub rank: usize,
    pub vertex: String,
    pub complement: Vec<String>,
}

/// `Δ(b_1, …, b_n)`: the factors generated by the proper subsets of a
/// basis, each with the rest of the basis as complement.
pub fn standard_apartment(n: usize, basis: &[Word], mode: Mode) -> Result<Apartment> {
    if n < 2 {
        return Err(Error::RankTooSmall { min: 2, got: n });
    }
    if basis.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: basis.len(),
        });
    }
    invert_images(n, basis)?;
    let full = (1u32 << n) - 1;
    let mut vertices = BTreeMap::new();
    for mask in 1..full {
        let (inside, outside): (Vec<usize>, Vec<usize>) =
            (1..=n).partition(|&i| mask >> (i - 1) & 1 == 1);
        let gens: Vec<Word> = inside.iter().map(|&i| basis[i - 1].clone()).collect();
        let comp: Vec<Word> = outside.iter().map(|&i| basis[i - 1].clone()).collect();
        vertices.insert(mask, FactorVertex::with_complement(n, &gens, comp, mode)?);
    }
    Apartment::new(n, mode, vertices, Some(basis.to_vec()))
}

/// `Δ(a_1, …, a_n)`.
pub fn standard_basis_apartment(n: usize, mode: Mode) -> Result<Apartment> {
    let basis: Vec<Word> = (1..=n).map(Word::gen).collect();
    standard_apartment(n, &basis, mode)
}

/// Ranks, incidences and injectivity of the assignment.
pub fn verify_apartment(ap: &Apartment) -> Result<Report> {
    let mut report = Report::new(format!("apartment n={} mode={}", ap.n, ap.mode));
    let bad_rank: Vec<String> = ap
        .vertices
        .iter()
        .filter(|(m, v)| v.rank() != m.count_ones() as usize)
        .map(|(m, v)| format!("{} -> {v} has rank {}", subset_label(*m), v.rank()))
        .collect();
    report.push(
        Check::new("rank", bad_rank.is_empty(), "rank(sigma(S)) = |S|").with_witnesses(bad_rank),
    );

    let mut bad_edge = Vec::new();
    for (&s, vs) in &ap.vertices {
        for (&t, vt) in &ap.vertices {
            if s != t && s & t == s && !vs.is_below(vt)? {
                bad_edge.push(format!(
                    "{} -> {vs} is not below {} -> {vt}",
                    subset_label(s),
                    subset_label(t)
                ));
            }
        }
    }
    let what = match ap.mode {
        Mode::Af => "S in T implies inclusion",
        Mode::Of => "S in T implies a conjugate is included",
    };
    report.push(Check::new("incidence", bad_edge.is_empty(), what).with_witnesses(bad_edge));

    let mut seen: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut clashes = Vec::new();
    for (&m, v) in &ap.vertices {
        if let Some(&prev) = seen.get(&v.key()) {
            clashes.push(format!(
                "{} and {} both map to {v}",
                subset_label(prev),
                subset_label(m)
            ));
        } else {
            seen.insert(v.key(), m);
        }
    }
    report.push(
        Check::new(
            "injective",
            clashes.is_empty(),
            "distinct subsets give distinct vertices",
        )
        .with_witnesses(clashes),
    );
    Ok(report)
}

/// In AF, an apartment is standard iff its rank-one vertices form a basis.
pub fn is_standard_af(ap: &Apartment) -> Result<bool> {
    ap.require_mode(Mode::Af)?;
    let gens: Result<Vec<Word>> = (1..=ap.n).map(|i| Ok(ap.rank1(i)?.generator())).collect();
    match invert_images(ap.n, &gens?) {
        Ok(_) => Ok(true),
        Err(Error::NotABasis) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Each rank-one vertex against the barycentre of the opposite face.
pub fn antipodal_faces_check(ap: &Apartment) -> Result<Report> {
    let mut report = Report::new(format!(
        "opposite-face antipodality n={} mode={}",
        ap.n, ap.mode
    ));
    for i in 1..=ap.n {
        let c = ap.rank1(i)?;
        let v = ap.opposite(i)?;
        let ok = if c.rank() == 1 && v.rank() + 1 == ap.n {
            antipodal(v, c)?
        } else {
            false
        };
        report.check(format!("vertex {i}"), ok, format!("{c} vs {v}"));
    }
    Ok(report)
}

/// The standard apartment on the basis with `b_i` replaced by `b_i b_j`.
pub fn nielsen_adjacent(ap: &Apartment, i: usize, j: usize) -> Result<Apartment> {
    ap.check_index(i)?;
    ap.check_index(j)?;
    if i == j {
        return Err(Error::BadIndex(
            "a Nielsen move needs two distinct indices".into(),
        ));
    }
    let mut basis = ap.require_basis()?.to_vec();
    basis[i - 1] = &basis[i - 1] * &basis[j - 1];
    standard_apartment(ap.n, &basis, ap.mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(n: usize, s: &str) -> Vec<Word> {
        Word::parse_list(s, n).unwrap()
    }

    #[test]
    fn standard_examples() {
        for n in 2..=4 {
            for mode in [Mode::Af, Mode::Of] {
                let ap = standard_basis_apartment(n, mode).unwrap();
                assert!(verify_apartment(&ap).unwrap().passed());
                assert!(antipodal_faces_check(&ap).unwrap().passed());
            }
        }
        let ap = standard_apartment(3, &ws(3, "ab,b,c"), Mode::Af).unwrap();
        assert!(verify_apartment(&ap).unwrap().passed());
        assert!(is_standard_af(&ap).unwrap());
        assert_eq!(
            standard_apartment(3, &ws(3, "aa,b,c"), Mode::Af).unwrap_err(),
            Error::NotABasis
        );
    }

    #[test]
    fn rank_mismatch_reported() {
        let mut gens: Vec<(u32, Vec<Word>)> = (1..7u32)
            .map(|m| (m, subset_indices(m).into_iter().map(Word::gen).collect()))
            .collect();
        gens[0].1 = ws(3, "a,b");
        let ap = Apartment::from_generators(3, Mode::Af, &gens).unwrap();
        let r = verify_apartment(&ap).unwrap();
        assert!(!r.checks[0].passed);
    }

    #[test]
    fn figure_one() {
        let left = figure1_left(Mode::Af).unwrap();
        assert!(verify_apartment(&left).unwrap().passed());
        assert!(!is_standard_af(&left).unwrap());
        let right = figure1_right(Mode::Af).unwrap();
        assert!(verify_apartment(&right).unwrap().passed());
        assert!(!is_standard_af(&right).unwrap());
        let r = antipodal_faces_check(&right).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        // every rank-one vertex misses its opposite face, ⟨ac²b⟩ vs ⟨a, b⟩ included
        assert_eq!(failed, ["vertex 1", "vertex 2", "vertex 3"]);
    }

    #[test]
    fn nielsen_move() {
        let ap = standard_basis_apartment(3, Mode::Af).unwrap();
        let l = nielsen_adjacent(&ap, 1, 2).unwrap();
        assert_eq!(l.basis().unwrap()[0], Word::parse("ab", 3).unwrap());
        assert!(is_standard_af(&l).unwrap());
        assert!(nielsen_adjacent(&ap, 2, 2).is_err());
    }

    #[test]
    fn dot_has_covering_edges() {
        let ap = standard_basis_apartment(3, Mode::Of).unwrap();
        let dot = ap.to_dot("d");
        assert_eq!(dot.matches(" -- ").count(), 6);
    }
}
