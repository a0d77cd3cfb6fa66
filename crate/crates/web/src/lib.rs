//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export returns a JSON string; errors become thrown JS strings. The
//! `*_json` functions are plain Rust so they can be tested natively.

use balanced_pairing::search::{self, Certificate, GeneralMatching, SearchOptions};
use balanced_pairing::{ClassCounts, Pairing, QuarticSignature};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest prime the page will draw.
pub const MAX_PRIME: u64 = 20_000;
/// Node budget ceiling for one search call from the page.
pub const MAX_BUDGET: u64 = 20_000_000;

fn counts(c: ClassCounts) -> Value {
    json!({ "crossing": c.crossing, "disjoint": c.disjoint, "nesting": c.nesting })
}

/// Chord-diagram data for the pairing of the prime `p`.
pub fn pairing_json(p: u64) -> Result<String, String> {
    if p > MAX_PRIME {
        return Err(format!("p must be at most {MAX_PRIME}"));
    }
    let pairing = Pairing::for_prime(p).map_err(|e| e.to_string())?;
    let ctx = pairing.context();
    let sig = QuarticSignature::new(ctx).map_err(|e| e.to_string())?;
    let pairs: Vec<[u64; 2]> = pairing.pairs().map(|(a, b)| [a, b]).collect();
    Ok(json!({
        "p": p,
        "n": ctx.half(),
        "t": ctx.t(),
        "g": ctx.g(),
        "l_p": ctx.l_p(),
        "pairs": pairs,
        "counts": counts(pairing.classify()),
        "alpha4": sig.alpha4(),
        "beta4": sig.beta4(),
    })
    .to_string())
}

fn certificate(c: &Certificate) -> Value {
    json!({
        "n": c.matching.n(),
        "pairs": c.matching.pairs().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        "counts": counts(c.counts),
        "difference_property": c.matching.has_difference_property(),
        "text": c.to_string(),
    })
}

/// Pruned search for balanced matchings of `{1..n}`.
pub fn search_json(n: u64, limit: usize, budget: u64) -> Result<String, String> {
    let opts = SearchOptions {
        limit: limit.clamp(1, 50),
        budget: Some(budget.clamp(1, MAX_BUDGET)),
        count_all: false,
    };
    let r = search::search(n, &opts).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": r.n,
        "found": r.found.iter().map(certificate).collect::<Vec<_>>(),
        "exhausted": r.exhausted,
        "nodes_expanded": r.nodes_expanded,
        "matchings_examined": r.total_matchings_examined,
        "balanced_count": r.balanced_count,
    })
    .to_string())
}

/// Counts for a user-entered matching, given as `a b, c d, ...` or in the
/// certificate form `(a,b)(c,d)...`.
pub fn classify_json(n: u64, pairs: &str) -> Result<String, String> {
    let numbers: Vec<u64> = pairs
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("bad number `{s}`")))
        .collect::<Result<_, _>>()?;
    if numbers.len() % 2 == 1 {
        return Err("odd number of endpoints".into());
    }
    let matching = GeneralMatching::new(n, numbers.chunks(2).map(|c| (c[0], c[1])))
        .map_err(|e| e.to_string())?;
    Ok(certificate(&Certificate::new(matching)).to_string())
}

#[wasm_bindgen]
pub fn pairing(p: u32) -> Result<String, JsValue> {
    pairing_json(p.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn search_balanced(n: u32, limit: u32, budget: u32) -> Result<String, JsValue> {
    search_json(n.into(), limit as usize, budget.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn classify(n: u32, pairs: &str) -> Result<String, JsValue> {
    classify_json(n.into(), pairs).map_err(|e| JsValue::from_str(&e))
}
