//! Text form of apartments:
//!
//! ```text
//! n=3 mode=of
//! basis: a,b,c
//! 1,2: a,bacAbaCAB
//! ```
//!
//! A `basis:` line assigns every subset its standard factor; lines
//! `<subset>: <words>` assign or override single subsets. Without a basis
//! line every nonempty proper subset must be listed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{mask_of, standard_apartment, subset_indices, Apartment};
use crate::error::{Error, Result};
use crate::subgroups::Mode;
use crate::words::Word;

impl Apartment {
    pub fn parse(text: &str) -> Result<Apartment> {
        let mut header: Option<(usize, Mode)> = None;
        let mut basis: Option<Vec<Word>> = None;
        let mut entries: BTreeMap<u32, Vec<Word>> = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::ApartmentParse {
                line: k + 1,
                message,
            };
            let Some((n, _)) = header else {
                let (mut n, mut mode) = (None, Mode::Af);
                for field in line.split_whitespace() {
                    match field.split_once('=') {
                        Some(("n", v)) => {
                            n = Some(
                                v.parse::<usize>()
                                    .map_err(|_| err(format!("bad rank '{v}'")))?,
                            )
                        }
                        Some(("mode", v)) => {
                            mode = v.parse().map_err(|_| err(format!("bad mode '{v}'")))?
                        }
                        _ => return Err(err(format!("unexpected header field '{field}'"))),
                    }
                }
                header = Some((n.ok_or_else(|| err("header lacks n=<rank>".into()))?, mode));
                continue;
            };
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| err("expected '<subset>: <words>'".into()))?;
            let words = Word::parse_list(rhs.trim(), n).map_err(|e| err(e.to_string()))?;
            if lhs.trim() == "basis" {
                basis = Some(words);
                continue;
            }
            let idx: Vec<usize> = lhs
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| err(format!("bad index '{}'", s.trim())))
                })
                .collect::<Result<_>>()?;
            if idx.iter().any(|&i| i == 0 || i > n) {
                return Err(err(format!("subset {lhs} is outside 1..={n}")));
            }
            let mask = mask_of(&idx);
            if mask.count_ones() as usize != idx.len() || mask == (1u32 << n) - 1 {
                return Err(err(format!(
                    "subset {lhs} must be proper and without repeats"
                )));
            }
            entries.insert(mask, words);
        }
        let (n, mode) = header.ok_or(Error::ApartmentParse {
            line: 1,
            message: "empty input".into(),
        })?;
        match basis {
            Some(b) if entries.is_empty() => standard_apartment(n, &b, mode),
            Some(b) => {
                if b.len() != n {
                    return Err(Error::RankMismatch {
                        expected: n,
                        got: b.len(),
                    });
                }
                let mut gens: BTreeMap<u32, Vec<Word>> = (1..(1u32 << n) - 1)
                    .map(|m| {
                        (
                            m,
                            subset_indices(m)
                                .iter()
                                .map(|&i| b[i - 1].clone())
                                .collect(),
                        )
                    })
                    .collect();
                gens.extend(entries);
                Apartment::from_generators(n, mode, &gens.into_iter().collect::<Vec<_>>())
            }
            None => Apartment::from_generators(n, mode, &entries.into_iter().collect::<Vec<_>>()),
        }
    }

    /// The basis of a standard apartment, otherwise every subset with a
    /// basis of its (representative) factor.
    pub fn to_text(&self) -> String {
        let mut s = format!("n={} mode={}\n", self.n(), self.mode());
        if let Some(b) = self.basis() {
            let _ = writeln!(s, "basis: {}", join(b));
            return s;
        }
        for (m, v) in self.vertices() {
            let idx: Vec<String> = subset_indices(m).iter().map(usize::to_string).collect();
            let _ = writeln!(
                s,
                "{}: {}",
                idx.join(","),
                join(&v.representative().basis())
            );
        }
        s
    }
}

fn join(ws: &[Word]) -> String {
    ws.iter().map(Word::to_string).collect::<Vec<_>>().join(",")
}
