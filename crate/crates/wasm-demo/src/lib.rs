//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every export returns a JSON string or an error message. The plain
//! `*_json` functions carry the logic so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use codebounds::{
    aq_upper, bound_b_max_k, elias_bassalygo_bound, griesmer_max_k, hamming_bound, johnson_bound,
    k_form, plotkin_bound, singleton_bound, weak_bound_b_max_k, BoundOracle, CodeParams, DeltaMode,
    KnownValuesTable, RadiusCheck,
};

const MAX_Q: u32 = 256;
const MAX_N: u32 = 200;

fn params(q: u32, n: u32, d: u32) -> Result<CodeParams, String> {
    if q > MAX_Q || n > MAX_N {
        return Err(format!("demo limits: q <= {MAX_Q}, n <= {MAX_N}"));
    }
    CodeParams::new(q, n, d).map_err(|e| e.to_string())
}

fn mode(exact_delta: bool) -> DeltaMode {
    if exact_delta {
        DeltaMode::Exact
    } else {
        DeltaMode::Floor
    }
}

#[derive(Serialize)]
struct BoundEntry {
    name: &'static str,
    /// Decimal size bound; absent for bounds stated on the dimension.
    size: Option<String>,
    k: u32,
}

#[derive(Serialize)]
struct Evaluation {
    q: u32,
    n: u32,
    d: u32,
    bounds: Vec<BoundEntry>,
    best_k: u32,
    winners: Vec<&'static str>,
    aq: String,
    aq_source: String,
}

fn size_entry(name: &'static str, size: codebounds::Nat, q: u32) -> BoundEntry {
    BoundEntry {
        name,
        k: k_form(&size, q),
        size: Some(size.to_string()),
    }
}

pub fn evaluate_json(q: u32, n: u32, d: u32, exact_delta: bool) -> Result<String, String> {
    let p = params(q, n, d)?;
    let table = KnownValuesTable::builtin();
    let oracle = BoundOracle::new(&table);
    let mut bounds = vec![
        BoundEntry {
            name: "boundB",
            size: None,
            k: bound_b_max_k(p, &oracle, mode(exact_delta)).k,
        },
        BoundEntry {
            name: "weakBoundB",
            size: None,
            k: weak_bound_b_max_k(p, &oracle),
        },
        size_entry("johnson", johnson_bound(p), q),
        size_entry("hamming", hamming_bound(p), q),
        BoundEntry {
            name: "griesmer",
            size: None,
            k: griesmer_max_k(p),
        },
        size_entry("elias", elias_bassalygo_bound(p), q),
        size_entry("singleton", singleton_bound(p), q),
    ];
    if let Some(v) = plotkin_bound(p) {
        bounds.push(size_entry("plotkin", v, q));
    }
    // the weak variant is shown for reference only
    let ranked = bounds.iter().filter(|b| b.name != "weakBoundB");
    let best_k = ranked.clone().map(|b| b.k).min().unwrap_or(0);
    let winners = ranked.filter(|b| b.k == best_k).map(|b| b.name).collect();
    let aq = aq_upper(p, &table);
    let out = Evaluation {
        q,
        n,
        d,
        bounds,
        best_k,
        winners,
        aq: aq.value.to_string(),
        aq_source: aq.source.to_string(),
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ProfileRow {
    d: u32,
    bound_b: u32,
    johnson: u32,
    hamming: u32,
    griesmer: u32,
    elias: u32,
    singleton: u32,
}

/// Dimension bounds for every `d` in `3..n` at fixed `q` and `n`.
pub fn profile_json(q: u32, n: u32, exact_delta: bool) -> Result<String, String> {
    params(q, n, 1)?;
    let table = KnownValuesTable::builtin();
    let oracle = BoundOracle::new(&table);
    let rows: Vec<ProfileRow> = (3..n)
        .map(|d| {
            let p = CodeParams::new(q, n, d).expect("validated");
            ProfileRow {
                d,
                bound_b: bound_b_max_k(p, &oracle, mode(exact_delta)).k,
                johnson: k_form(&johnson_bound(p), q),
                hamming: k_form(&hamming_bound(p), q),
                griesmer: griesmer_max_k(p),
                elias: k_form(&elias_bassalygo_bound(p), q),
                singleton: n - d + 1,
            }
        })
        .collect();
    Ok(serde_json::to_string(&rows).expect("serialisable"))
}

#[derive(Serialize)]
struct CheckView {
    r: u32,
    lhs: String,
    rhs: String,
    delta: String,
    inner: String,
    holds: bool,
}

impl From<&RadiusCheck> for CheckView {
    fn from(c: &RadiusCheck) -> Self {
        CheckView {
            r: c.r,
            lhs: c.lhs.to_string(),
            rhs: c.rhs.to_string(),
            delta: c.delta.to_string(),
            inner: c.inner_source.to_string(),
            holds: c.holds(),
        }
    }
}

#[derive(Serialize)]
struct WitnessView {
    k: u32,
    checks: Vec<CheckView>,
    binding: Option<CheckView>,
}

/// The per-radius checks behind the Bound B answer, plus the first failing
/// check one dimension higher.
pub fn witness_json(q: u32, n: u32, d: u32, exact_delta: bool) -> Result<String, String> {
    let p = params(q, n, d)?;
    let table = KnownValuesTable::builtin();
    let w = bound_b_max_k(p, &BoundOracle::new(&table), mode(exact_delta));
    let out = WitnessView {
        k: w.k,
        checks: w.checks.iter().map(CheckView::from).collect(),
        binding: w.binding.as_ref().map(CheckView::from),
    };
    Ok(serde_json::to_string(&out).expect("serialisable"))
}

#[wasm_bindgen]
pub fn evaluate(q: u32, n: u32, d: u32, exact_delta: bool) -> Result<String, String> {
    evaluate_json(q, n, d, exact_delta)
}

#[wasm_bindgen]
pub fn profile(q: u32, n: u32, exact_delta: bool) -> Result<String, String> {
    profile_json(q, n, exact_delta)
}

#[wasm_bindgen]
pub fn witness(q: u32, n: u32, d: u32, exact_delta: bool) -> Result<String, String> {
    witness_json(q, n, d, exact_delta)
}
