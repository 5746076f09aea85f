//! Browser bindings: closed forms, engine expansions and verification groups.

use wasm_bindgen::prelude::*;

use ktrmatrix::ktfactory::{assemble, KtParams, LegPair};
use ktrmatrix::reference::{reference_matrix, Kind, Variant};
use ktrmatrix::rootsys::Algebra;
use ktrmatrix::text;
use ktrmatrix::verify::{run_group, CHECKS};

/// Largest truncation order the page accepts; the engine is single-threaded here.
pub const MAX_ORDER: i32 = 8;

fn parse<T: std::str::FromStr>(what: &str, s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("unknown {what} {s:?}"))
}

fn exponents(alg: Algebra, s: i32, s1: i32, s2: i32) -> Vec<i32> {
    match alg {
        Algebra::A1 => vec![s, s1],
        Algebra::A2 => vec![s, s1, s2],
    }
}

pub fn closed_form_text(kind: &str, algebra: &str, variant: &str, s: i32, s1: i32, s2: i32) -> Result<String, String> {
    let alg: Algebra = parse("algebra", algebra)?;
    let kind: Kind = parse("kind", kind)?;
    let variant: Variant = parse("variant", variant)?;
    let r = reference_matrix(kind, alg, variant, &exponents(alg, s, s1, s2)).map_err(|e| e.to_string())?;
    Ok(text::reference(&r))
}

pub fn expand_text(algebra: &str, side: &str, family: u8, s: i32, s1: i32, s2: i32, order: i32) -> Result<String, String> {
    if !(0..=MAX_ORDER).contains(&order) {
        return Err(format!("order must lie in 0..={MAX_ORDER}"));
    }
    let alg: Algebra = parse("algebra", algebra)?;
    let pair: LegPair = parse("side", side)?;
    let mut p = KtParams::new(alg, pair, &exponents(alg, s, s1, s2), order);
    p.family = family;
    let m = assemble(&p).map_err(|e| e.to_string())?;
    let legs = if pair == LegPair::PhiPhi { 2 } else { 1 };
    Ok(text::matrix(&m, legs, |e| text::osc(e, text::series)))
}

pub fn verify_json(group: &str, algebra: &str, order: i32) -> Result<String, String> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(format!("order must lie in 1..={MAX_ORDER}"));
    }
    if !CHECKS.contains(&group) {
        return Err(format!("unknown group {group:?}; expected one of {}", CHECKS.join(", ")));
    }
    let alg: Algebra = parse("algebra", algebra)?;
    let mut vs = run_group(group, alg, order).map_err(|e| e.to_string())?;
    vs.sort_by_key(|v| v.id());
    let json: Vec<serde_json::Value> = vs.iter().map(|v| v.to_json()).collect();
    serde_json::to_string(&json).map_err(|e| e.to_string())
}

/// Closed form as text, e.g. `closed_form("l-hat", "a1", "plain", 1, 0, 0)`.
#[wasm_bindgen]
pub fn closed_form(kind: &str, algebra: &str, variant: &str, s: i32, s1: i32, s2: i32) -> Result<String, JsError> {
    closed_form_text(kind, algebra, variant, s, s1, s2).map_err(|e| JsError::new(&e))
}

/// Engine expansion to `order` as text.
#[wasm_bindgen]
pub fn expand(algebra: &str, side: &str, family: u8, s: i32, s1: i32, s2: i32, order: i32) -> Result<String, JsError> {
    expand_text(algebra, side, family, s, s1, s2, order).map_err(|e| JsError::new(&e))
}

/// Verdicts of one check group as a JSON array.
#[wasm_bindgen]
pub fn verify(group: &str, algebra: &str, order: i32) -> Result<String, JsError> {
    verify_json(group, algebra, order).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_lists_entries() {
        let t = closed_form_text("l-hat", "a1", "plain", 1, 0, 0).unwrap();
        assert!(t.contains("E11") && t.contains("E22"));
        assert!(closed_form_text("l-hat", "a3", "plain", 1, 0, 0).is_err());
    }

    #[test]
    fn expansion_at_order_zero() {
        let t = expand_text("a1", "chi-phi", 1, 1, 0, 0, 0).unwrap();
        assert!(t.lines().any(|l| l.starts_with("E11") && l.ends_with("q^(1 D1)")));
        assert!(expand_text("a1", "chi-phi", 1, 1, 0, 0, 99).is_err());
    }

    #[test]
    fn verify_group() {
        let v: Vec<serde_json::Value> = serde_json::from_str(&verify_json("rll", "a1", 2).unwrap()).unwrap();
        assert!(!v.is_empty() && v.iter().all(|x| x["pass"] == true));
        assert!(verify_json("everything", "a1", 2).is_err());
    }
}
