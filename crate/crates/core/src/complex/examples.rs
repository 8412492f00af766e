//! The explicit rank-three apartments used as test cases.

use super::{mask_of, Apartment};
use crate::error::Result;
use crate::subgroups::Mode;
use crate::words::Word;

fn build(mode: Mode, entries: &[(&[usize], &str)]) -> Result<Apartment> {
    let gens: Vec<(u32, Vec<Word>)> = entries
        .iter()
        .map(|(s, w)| Ok((mask_of(s), Word::parse_list(w, 3)?)))
        .collect::<Result<_>>()?;
    Apartment::from_generators(3, mode, &gens)
}

/// Rank-one vertices `a, ab², c`; the face `⟨a, b⟩` is not generated by
/// the rank-one vertices below it.
pub fn figure1_left(mode: Mode) -> Result<Apartment> {
    build(
        mode,
        &[
            (&[1], "a"),
            (&[2], "abb"),
            (&[3], "c"),
            (&[1, 2], "a,b"),
            (&[2, 3], "abb,c"),
            (&[1, 3], "a,c"),
        ],
    )
}

/// Rank-one vertices `a, b, ac²b`; `⟨ac²b⟩` is not antipodal to `⟨a, b⟩`.
pub fn figure1_right(mode: Mode) -> Result<Apartment> {
    build(
        mode,
        &[
            (&[1], "a"),
            (&[2], "b"),
            (&[3], "accb"),
            (&[1, 2], "a,b"),
            (&[2, 3], "b,acc"),
            (&[1, 3], "a,ccb"),
        ],
    )
}

/// `Δ(a, b, c)` in OF with `[a, b]` replaced by `[a, γbγ⁻¹]`, `γ = baca⁻¹`.
pub fn example_6_8() -> Result<Apartment> {
    build(
        Mode::Of,
        &[
            (&[1], "a"),
            (&[2], "b"),
            (&[3], "c"),
            (&[1, 2], "a,bacAbaCAB"),
            (&[2, 3], "b,c"),
            (&[1, 3], "a,c"),
        ],
    )
}

/// `Δ(a_1, a_2, a_3)` in OF with the barycentre opposite `[a_1]`
/// replaced by `[a_2^γ, a_3]`, where `a_2^γ = γ⁻¹a_2γ`.
pub fn one_off_apartment(gamma: &Word) -> Result<Apartment> {
    let conj = Word::gen(2).conjugate_by(gamma);
    let mut gens: Vec<(u32, Vec<Word>)> = (1..7u32)
        .map(|m| {
            (
                m,
                super::subset_indices(m)
                    .into_iter()
                    .map(Word::gen)
                    .collect(),
            )
        })
        .collect();
    for (m, ws) in &mut gens {
        if *m == mask_of(&[2, 3]) {
            *ws = vec![conj.clone(), Word::gen(3)];
        }
    }
    Apartment::from_generators(3, Mode::Of, &gens)
}
