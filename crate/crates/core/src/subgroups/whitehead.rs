//! Free-factor detection by Whitehead descent on the size of `core(H)`.

use serde::Serialize;

use super::{verify_factor, FactorWitness, Subgroup};
use crate::error::{Error, Result};
use crate::words::{BasisMap, Letter, Word};

/// Whitehead automorphisms of the second kind. For a multiplier letter
/// `m` each other generator `x` goes to one of `x`, `xm`, `m⁻¹x`,
/// `m⁻¹xm`; the identity choice is skipped. Ordered by multiplier slot,
/// then by the choice vector read as a base-4 number.
pub fn whitehead_moves(n: usize) -> Vec<BasisMap> {
    let mut out = Vec::new();
    for mi in 1..=n {
        for inv in [false, true] {
            let m = Letter::new(mi, inv);
            let others: Vec<usize> = (1..=n).filter(|&i| i != mi).collect();
            for code in 1..4usize.pow(others.len() as u32) {
                let build = |m: Letter| {
                    let mw = Word::from_letters([m]);
                    let mi_w = mw.inverse();
                    let mut images: Vec<Word> = (1..=n).map(Word::gen).collect();
                    let mut c = code;
                    for &x in &others {
                        let xw = Word::gen(x);
                        images[x - 1] = match c % 4 {
                            0 => xw,
                            1 => &xw * &mw,
                            2 => &mi_w * &xw,
                            _ => &(&mi_w * &xw) * &mw,
                        };
                        c /= 4;
                    }
                    BasisMap::new(n, images).expect("images in range")
                };
                let fwd = build(m);
                let back = build(m.inverse());
                out.push(fwd.with_inverse(back).expect("whitehead inverse"));
            }
        }
    }
    out
}

/// Outcome of a descent, kept for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct WhiteheadResult {
    /// Edge counts of `core(Φ_k(H))` along the descent.
    pub measures: Vec<usize>,
    /// Indices into [`whitehead_moves`] of the moves applied.
    pub moves: Vec<usize>,
    pub witness: Option<FactorWitness>,
}

fn measure(h: &Subgroup) -> usize {
    h.unpointed().graph.edge_count()
}

/// Whitehead descent. `Some(witness)` iff `H` is a free factor.
pub fn is_free_factor(h: &Subgroup) -> Result<Option<FactorWitness>> {
    Ok(descend(h)?.witness)
}

pub fn descend(h: &Subgroup) -> Result<WhiteheadResult> {
    let n = h.ambient_rank();
    let k = h.rank();
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!(
            "free-factor test needs 1 <= rank <= {}, got {k}",
            n - 1
        )));
    }
    let moves = whitehead_moves(n);
    let h = h.pointed_representative();
    let mut cur = h.clone();
    let mut total = BasisMap::identity(n);
    let mut m = measure(&cur);
    let mut measures = vec![m];
    let mut applied = Vec::new();
    while m > k {
        let mut best: Option<(usize, Subgroup, usize)> = None;
        for (idx, mv) in moves.iter().enumerate() {
            let cand = cur.image(mv)?;
            let mc = measure(&cand);
            if mc < m && best.as_ref().is_none_or(|(_, _, b)| mc < *b) {
                best = Some((idx, cand, mc));
            }
        }
        let Some((idx, cand, mc)) = best else {
            return Ok(WhiteheadResult {
                measures,
                moves: applied,
                witness: None,
            });
        };
        cur = cand;
        total = moves[idx].compose(&total);
        m = mc;
        measures.push(m);
        applied.push(idx);
    }

    // core(Φ(H)) is a rose on some letters at vertex v; Φ(H) = g⟨a_S⟩g⁻¹
    let g = cur.graph();
    let v = g
        .core_vertices(None)
        .iter()
        .position(|&a| a)
        .expect("nonempty");
    let path = g.path_labels(g.base().expect("pointed"))[v]
        .clone()
        .expect("connected");
    let used: Vec<usize> = g
        .edges()
        .iter()
        .filter(|e| e.src == v && e.dst == v)
        .map(|e| e.label)
        .collect();
    let inv = total.inverse().expect("composite of automorphisms");
    let complement: Vec<Word> = (1..=n)
        .filter(|t| !used.contains(t))
        .map(|t| inv.apply(&(&(&path * &Word::gen(t)) * &path.inverse())))
        .collect();
    let witness = FactorWitness::new(h, complement);
    if !verify_factor(&witness)? {
        return Err(Error::Verification(
            "transported complement does not verify".into(),
        ));
    }
    Ok(WhiteheadResult {
        measures,
        moves: applied,
        witness: Some(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(n: usize, s: &str) -> Subgroup {
        Subgroup::parse(n, s, true).unwrap()
    }

    #[test]
    fn move_count() {
        assert_eq!(whitehead_moves(2).len(), 4 * 3);
        assert_eq!(whitehead_moves(3).len(), 6 * 15);
        assert!(whitehead_moves(3).iter().all(|m| m.is_automorphism()));
    }

    #[test]
    fn primitive_words() {
        for (n, s) in [
            (3, "ab"),
            (3, "abcB"),
            (3, "aabAcB"),
            (4, "abcd"),
            (3, "a,bcB"),
            (4, "ab,cdC"),
        ] {
            let w = is_free_factor(&sg(n, s)).unwrap().expect(s);
            assert!(verify_factor(&w).unwrap());
        }
    }

    #[test]
    fn imprimitive_words() {
        for (n, s) in [
            (3, "abAB"),
            (3, "aa"),
            (2, "aabb"),
            (3, "aa,b"),
            (3, "abAB,c"),
        ] {
            assert!(is_free_factor(&sg(n, s)).unwrap().is_none(), "{s}");
        }
    }

    #[test]
    fn rank_bounds() {
        assert!(is_free_factor(&sg(2, "a,b")).is_err());
    }
}
