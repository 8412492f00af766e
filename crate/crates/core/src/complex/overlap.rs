//! How a Nielsen-adjacent apartment sits against the sticks and
//! supersticks of the original.

use std::collections::HashMap;

use serde::Serialize;

use super::sticks::{all_sticks, supersticks};
use super::Apartment;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::subgroups::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OverlapClass {
    Vertex,
    Stick,
    Superstick,
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classified {
    pub face: Vec<usize>,
    pub vertex: String,
    pub class: OverlapClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct Overlap {
    pub mode: Mode,
    /// Rank-one vertices of `d1`.
    pub vertices: Vec<Classified>,
    /// Sticks of `d1`.
    pub sticks: Vec<Classified>,
    /// `(i, j)` when `d1` is `d0` with `b_i` replaced by `b_i b_j`.
    pub nielsen: Option<(usize, usize)>,
}

impl Overlap {
    /// The face of `d1` spanned by `b_i b_j` and `b_j`.
    pub fn exceptional_face(&self) -> Option<Vec<usize>> {
        self.nielsen.map(|(i, j)| vec![i.min(j), i.max(j)])
    }

    pub fn exceptions(&self) -> Vec<&Classified> {
        self.sticks
            .iter()
            .filter(|c| c.class == OverlapClass::None)
            .collect()
    }

    pub fn report(&self) -> Report {
        let mut r = Report::new(format!("overlap mode={}", self.mode));
        let odd: Vec<String> = self
            .vertices
            .iter()
            .filter(|c| !matches!(c.class, OverlapClass::Vertex | OverlapClass::Stick))
            .map(|c| c.vertex.clone())
            .collect();
        r.push(
            Check::new(
                "rank-one vertices are vertices or sticks",
                odd.is_empty(),
                "",
            )
            .with_witnesses(odd),
        );
        let exc = self.exceptions();
        let face = self.exceptional_face();
        let stray: Vec<String> = exc
            .iter()
            .filter(|c| Some(&c.face) != face.as_ref())
            .map(|c| format!("{} at {:?}", c.vertex, c.face))
            .collect();
        r.push(
            Check::new(
                "sticks are vertices, sticks or supersticks off the exceptional face",
                stray.is_empty(),
                "",
            )
            .with_witnesses(stray),
        );
        if let Some(f) = face {
            let listed: Vec<String> = exc.iter().map(|c| c.vertex.clone()).collect();
            let (ok, what) = match self.mode {
                Mode::Af => (
                    !listed.is_empty(),
                    format!("{} unclassified sticks at face {f:?}", listed.len()),
                ),
                Mode::Of => (
                    listed.len() == 1,
                    format!("{} unclassified stick classes at face {f:?}", listed.len()),
                ),
            };
            r.push(
                Check::new("exceptions at the exceptional face", ok, what).with_witnesses(listed),
            );
        }
        r
    }
}

fn detect_nielsen(d0: &Apartment, d1: &Apartment) -> Option<(usize, usize)> {
    let (b0, b1) = (d0.basis()?, d1.basis()?);
    let n = b0.len();
    let differ: Vec<usize> = (0..n).filter(|&k| b0[k] != b1[k]).collect();
    let [i] = differ[..] else { return None };
    (0..n)
        .find(|&j| j != i && b1[i] == &b0[i] * &b0[j])
        .map(|j| (i + 1, j + 1))
}

/// Classifies the rank-one vertices and sticks of `d1` against the
/// vertices, sticks and supersticks of `d0`.
pub fn overlap_report(d0: &Apartment, d1: &Apartment) -> Result<Overlap> {
    if d0.mode() != d1.mode() {
        return Err(Error::WrongMode("apartments in different modes".into()));
    }
    if d0.n() != d1.n() {
        return Err(Error::RankMismatch {
            expected: d0.n(),
            got: d1.n(),
        });
    }
    let n = d0.n();
    let mut known: HashMap<Vec<u32>, OverlapClass> = HashMap::new();
    for i in (1..=n).rev() {
        for j in (i + 1..=n).rev() {
            for k in (j + 1..=n).rev() {
                for s in supersticks(d0, (i, j, k))? {
                    known.insert(s.vertex.key(), OverlapClass::Superstick);
                }
            }
        }
    }
    for s in all_sticks(d0)? {
        known.insert(s.vertex.key(), OverlapClass::Stick);
    }
    for i in 1..=n {
        known.insert(d0.rank1(i)?.key(), OverlapClass::Vertex);
    }
    let classify = |key: Vec<u32>| known.get(&key).copied().unwrap_or(OverlapClass::None);
    let vertices = (1..=n)
        .map(|i| {
            let v = d1.rank1(i)?;
            Ok(Classified {
                face: vec![i],
                vertex: v.to_string(),
                class: classify(v.key()),
            })
        })
        .collect::<Result<_>>()?;
    let sticks = all_sticks(d1)?
        .into_iter()
        .map(|s| Classified {
            face: vec![s.face.0, s.face.1],
            vertex: s.vertex.to_string(),
            class: classify(s.vertex.key()),
        })
        .collect();
    Ok(Overlap {
        mode: d0.mode(),
        vertices,
        sticks,
        nielsen: detect_nielsen(d0, d1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{nielsen_adjacent, standard_basis_apartment};

    #[test]
    fn nielsen_pairs() {
        for n in [3, 4] {
            let d0 = standard_basis_apartment(n, Mode::Af).unwrap();
            let d1 = nielsen_adjacent(&d0, 1, 2).unwrap();
            let o = overlap_report(&d0, &d1).unwrap();
            assert_eq!(o.nielsen, Some((1, 2)));
            assert!(o.report().passed(), "{}", o.report());
            assert_eq!(o.exceptions().len(), 3);

            let o = overlap_report(&d0.in_mode(Mode::Of), &d1.in_mode(Mode::Of)).unwrap();
            assert!(o.report().passed(), "{}", o.report());
            assert_eq!(o.exceptions().len(), 1);
            assert_eq!(o.exceptions()[0].vertex, "[abb]");
        }
    }

    #[test]
    fn self_overlap_is_clean() {
        let d0 = standard_basis_apartment(3, Mode::Of).unwrap();
        let o = overlap_report(&d0, &d0).unwrap();
        assert!(o.exceptions().is_empty());
        assert!(o.report().passed());
    }
}
