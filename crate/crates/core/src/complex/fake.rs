//! Fake apartments in every rank: `H = ⟨a_1, …, a_{n−1}, W_{n−1} a_n W_{n−1}⁻¹⟩`.

use std::collections::BTreeMap;

use super::{antipodal_faces_check, subset_indices, verify_apartment, Apartment, FactorVertex};
use crate::error::{Error, Result};
use crate::graphs::{fold, iso, LabeledGraph};
use crate::report::{Check, Report};
use crate::subgroups::{factor_witness, intersect, FactorWitness, Mode, Subgroup};
use crate::words::{build_w, Word};

#[derive(Clone, Debug)]
pub struct FakeFamily {
    pub h: Subgroup,
    /// The AF apartment spanned by the proper subsets of the generators.
    pub apartment: Apartment,
    pub report: Report,
}

impl FakeFamily {
    /// Whether every check passed, fakeness included.
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

fn w(n: usize, k: usize) -> Result<Word> {
    if k == 0 {
        Ok(Word::gen(n))
    } else {
        build_w(n, k)
    }
}

/// Builds the family and runs the checks: free factors of the right rank,
/// antipodality of `V_j` and `⟨W_{j−1} a_j W_{j−1}⁻¹⟩`, `a_n ∉ H`, and
/// opposite-face antipodality in OF; fakeness is shown by pairs of
/// barycentre representatives that meet but generate only `H`.
pub fn fake_family(n: usize) -> Result<FakeFamily> {
    if n < 3 {
        return Err(Error::RankTooSmall { min: 3, got: n });
    }
    let wn = w(n, n - 1)?;
    let u = Word::gen(n).conjugate_by(&wn.inverse());
    let mut gens: Vec<Word> = (1..n).map(Word::gen).collect();
    gens.push(u.clone());
    let h = Subgroup::generated(n, &gens, true)?;
    let mut report = Report::new(format!("fake family n={n}"));

    let full = (1u32 << n) - 1;
    let mut vertices = BTreeMap::new();
    let mut fallback = Vec::new();
    for mask in 1..full {
        let idx = subset_indices(mask);
        let sub: Vec<Word> = idx.iter().map(|&i| gens[i - 1].clone()).collect();
        let missing: Vec<usize> = (1..=n).filter(|i| !idx.contains(i)).collect();
        let complement: Vec<Word> = if !idx.contains(&n) {
            missing.iter().map(|&i| Word::gen(i)).collect()
        } else {
            let j = missing[0];
            let mut c = vec![Word::gen(j).conjugate_by(&w(n, j - 1)?.inverse())];
            c.extend(missing[1..].iter().map(|&i| Word::gen(i)));
            c
        };
        let k = Subgroup::generated(n, &sub, true)?;
        let witness = FactorWitness::new(k.clone(), complement);
        let vertex = if witness.verify()? {
            FactorVertex::new(witness, Mode::Af)?
        } else {
            fallback.push(format!("{k}"));
            let found = factor_witness(&k)?.ok_or(Error::NotAFreeFactor)?;
            FactorVertex::new(found, Mode::Af)?
        };
        vertices.insert(mask, vertex);
    }
    report.push(
        Check::new(
            "proper subsets generate free factors",
            true,
            format!("{} vertices", vertices.len()),
        )
        .with_witnesses(
            fallback
                .iter()
                .map(|k| format!("complement found by search for {k}")),
        ),
    );
    let apartment = Apartment::new(n, Mode::Af, vertices, None)?;
    let valid = verify_apartment(&apartment)?;
    report.absorb("apartment ", valid);

    // V_j against ⟨W_{j−1} a_j W_{j−1}⁻¹⟩, by folding
    let rose = LabeledGraph::rose(n);
    let mut misses = Vec::new();
    for j in 1..n {
        let vj = apartment.opposite(j)?;
        let c = Word::gen(j).conjugate_by(&w(n, j - 1)?.inverse());
        let g = vj
            .representative()
            .graph()
            .wedge(&LabeledGraph::word_loop(n, &c))?;
        if iso(&fold(&g), &rose, true).is_none() {
            misses.push(format!("V_{j}"));
        }
    }
    report.push(
        Check::new(
            "V_j antipodal to <W_(j-1) a_j W_(j-1)^-1>",
            misses.is_empty(),
            format!("j = 1..{}", n - 1),
        )
        .with_witnesses(misses),
    );

    let an_out = !h.contains(&Word::gen(n))?;
    report.check("a_n not in H", an_out, format!("H = {h}"));

    let of = apartment.in_mode(Mode::Of);
    let opp = antipodal_faces_check(&of)?;
    report.absorb("OF opposite faces: ", opp);

    // representatives of distinct walls meet nontrivially yet generate H
    let mut bad = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let a = apartment.opposite(i)?.representative();
            let b = apartment.opposite(j)?.representative();
            let meet = intersect(a, b)?.based.is_some();
            let mut both = a.basis();
            both.extend(b.basis());
            let span = Subgroup::generated(n, &both, true)?;
            if !meet || !span.same_as(&h) || iso(span.graph(), &rose, true).is_some() {
                bad.push(format!("walls opposite {i} and {j}"));
            }
        }
    }
    report.push(
        Check::new(
            "meeting wall representatives generate H, not F_n",
            bad.is_empty(),
            "hence fake",
        )
        .with_witnesses(bad),
    );

    let rank1: Vec<Word> = (1..=n)
        .map(|i| Ok(apartment.rank1(i)?.generator()))
        .collect::<Result<_>>()?;
    let not_basis = crate::graphs::invert_images(n, &rank1).is_err();
    report.check("AF rank-one vertices are not a basis", not_basis, "");
    Ok(FakeFamily {
        h,
        apartment,
        report,
    })
}
