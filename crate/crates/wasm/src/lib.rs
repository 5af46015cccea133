//! Browser bindings for the demo page in `www/`.
//!
//! Every entry point returns JSON text. The plain functions are usable from
//! Rust; the `#[wasm_bindgen]` wrappers turn errors into JS exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use sharp_core::expr::{evaluate as eval_expr, Algebra, Value};
use sharp_core::fqsym::{sharp_g, sharp_interval, InversionSet};
use sharp_core::Permutation;

/// Largest alphabet the page will expand over.
pub const MAX_ALPHABET: u32 = 9;
/// Largest number of words returned by one expansion.
pub const MAX_WORDS: usize = 20_000;
/// Largest permutation size accepted for interval drawing.
pub const MAX_INTERVAL_SIZE: usize = 7;

#[derive(Serialize)]
struct TermOut {
    label: String,
    coefficient: String,
}

#[derive(Serialize)]
struct Evaluation {
    algebra: Option<String>,
    text: String,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct Node {
    label: String,
    inversions: usize,
}

#[derive(Serialize)]
struct Interval {
    bottom: String,
    top: String,
    product: String,
    nodes: Vec<Node>,
    /// Covering pairs `(lower, upper)` as indices into `nodes`.
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct Words {
    count: usize,
    words: Vec<TermOut>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn algebra_arg(algebra: &str) -> Result<Option<Algebra>, String> {
    match algebra.trim() {
        "" | "auto" => Ok(None),
        name => name.parse().map(Some).map_err(|e: sharp_core::Error| e.to_string()),
    }
}

/// Evaluates an expression; `algebra` may be empty to infer it.
pub fn evaluate(input: &str, algebra: &str) -> Result<String, String> {
    let value = eval_expr(input, algebra_arg(algebra)?).map_err(|e| e.to_string())?;
    let terms =
        value.terms().into_iter().map(|t| TermOut { label: t.label, coefficient: t.coefficient.to_string() }).collect();
    to_json(&Evaluation { algebra: value.algebra().map(|a| a.name().to_string()), text: value.render(), terms })
}

/// The interval `[α ∧ β, α ∨ β]` of the weak order, with its Hasse diagram.
pub fn weak_order_interval(alpha: &str, beta: &str) -> Result<String, String> {
    let parse = |s: &str| s.parse::<Permutation>().map_err(|e| e.to_string());
    let (a, b) = (parse(alpha)?, parse(beta)?);
    if a.len() + b.len() - 1 > MAX_INTERVAL_SIZE {
        return Err(format!(
            "the product has size {}; the page draws up to {MAX_INTERVAL_SIZE}",
            a.len() + b.len() - 1
        ));
    }
    let interval = sharp_interval(&a, &b);
    let sets: Vec<InversionSet> = interval.members.iter().map(InversionSet::of).collect();
    let mut edges = Vec::new();
    for (i, lower) in sets.iter().enumerate() {
        for (j, upper) in sets.iter().enumerate() {
            if upper.len() == lower.len() + 1 && lower.is_subset(upper) {
                edges.push((i, j));
            }
        }
    }
    let nodes =
        interval.members.iter().zip(&sets).map(|(p, s)| Node { label: p.to_string(), inversions: s.len() }).collect();
    to_json(&Interval {
        bottom: interval.lo.to_string(),
        top: interval.hi.to_string(),
        product: sharp_g(&a, &b).render_with(|p| format!("G{p}")),
        nodes,
        edges,
    })
}

/// The words of an element's realization over `{1..alphabet}`.
pub fn expand(label: &str, alphabet: u32) -> Result<String, String> {
    if !(1..=MAX_ALPHABET).contains(&alphabet) {
        return Err(format!("alphabet must be between 1 and {MAX_ALPHABET}"));
    }
    let element = match eval_expr(label, None).map_err(|e| e.to_string())? {
        Value::Element(e) => e,
        Value::Scalar(_) => return Err("expected a basis element".to_string()),
    };
    let expansion = element.expand(alphabet).map_err(|e| e.to_string())?;
    let count = expansion.terms.len();
    if count > MAX_WORDS {
        return Err(format!("{count} words; try a smaller alphabet"));
    }
    let words =
        expansion.terms.iter().map(|(w, c)| TermOut { label: w.to_string(), coefficient: c.to_string() }).collect();
    to_json(&Words { count, words })
}

#[wasm_bindgen(js_name = evaluate)]
pub fn evaluate_js(input: &str, algebra: &str) -> Result<String, JsValue> {
    evaluate(input, algebra).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = weakOrderInterval)]
pub fn weak_order_interval_js(alpha: &str, beta: &str) -> Result<String, JsValue> {
    weak_order_interval(alpha, beta).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = expand)]
pub fn expand_js(label: &str, alphabet: u32) -> Result<String, JsValue> {
    expand(label, alphabet).map_err(|e| JsValue::from_str(&e))
}
