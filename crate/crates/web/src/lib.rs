//! JSON-in, JSON-out bindings for the static demo page. Every function
//! returns either a result object or `{"error": "..."}`.

use freefactor::subgroups::{antipodal_af, antipodal_of, injrad_growth};
use freefactor::{Mode, Subgroup, Word};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn subgroup(n: usize, gens: &str, pointed: bool) -> Result<Subgroup, String> {
    let ws = Word::parse_list(gens, n).map_err(|e| e.to_string())?;
    Subgroup::generated(n, &ws, pointed).map_err(|e| e.to_string())
}

/// The pointed or unpointed core graph of `⟨gens⟩`, with a basis.
#[wasm_bindgen]
pub fn core_graph(n: usize, gens: &str, pointed: bool) -> String {
    respond((|| {
        let h = subgroup(n, gens, pointed)?;
        let g = h.graph();
        let edges: Vec<Value> = g
            .edges()
            .iter()
            .map(|e| json!([e.src, e.dst, e.label]))
            .collect();
        Ok(json!({
            "rank": h.rank(),
            "basis": h.pointed_representative().basis().iter().map(Word::to_string).collect::<Vec<_>>(),
            "vertices": g.vertex_count(),
            "base": g.base(),
            "edges": edges,
        }))
    })())
}

#[wasm_bindgen]
pub fn membership(n: usize, gens: &str, word: &str) -> String {
    respond((|| {
        let h = subgroup(n, gens, true)?;
        let w = Word::parse(word, n).map_err(|e| e.to_string())?;
        let member = h.contains(&w).map_err(|e| e.to_string())?;
        Ok(json!({ "word": w.to_string(), "member": member }))
    })())
}

/// Whether `⟨factor⟩` (rank `n−1`) and `⟨word⟩` are antipodal in `mode`
/// (`"af"` or `"of"`).
#[wasm_bindgen]
pub fn antipodality(n: usize, factor: &str, word: &str, mode: &str) -> String {
    respond((|| {
        let mode: Mode = mode.parse().map_err(|e: freefactor::Error| e.to_string())?;
        let a = subgroup(n, factor, true)?;
        let u = Word::parse(word, n).map_err(|e| e.to_string())?;
        let v = match mode {
            Mode::Af => antipodal_af(&a, &u),
            Mode::Of => antipodal_of(&a, &u),
        }
        .map_err(|e| e.to_string())?;
        Ok(json!({ "antipodal": v, "mode": mode.to_string() }))
    })())
}

/// Girths of the cores of `f₀^k(⟨gens⟩)` for `k = 0..=kmax`.
#[wasm_bindgen]
pub fn injectivity_radius(n: usize, gens: &str, kmax: usize) -> String {
    respond((|| {
        if kmax > 20 {
            return Err("kmax is capped at 20".into());
        }
        let a = subgroup(n, gens, true)?;
        let girths = injrad_growth(n, &a, kmax).map_err(|e| e.to_string())?;
        Ok(json!({ "girths": girths }))
    })())
}
