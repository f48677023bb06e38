//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON document for the page script to render.

use serde_json::json;
use wasm_bindgen::prelude::*;

use contspec_core::figure::line_svg;
use contspec_core::piecewise::LineRealization;
use contspec_core::realization::{
    build_compact_realization, build_group_realization, build_monoid_realization, CayleyTable,
    Subset,
};
use contspec_core::topology::{classify_topologies, enumerate_topologies};
use contspec_core::{canonicalize, GeneratorSet};

/// Largest exponent range the page will request; keeps redraws instant.
const MAX_RANGE: u32 = 15;

fn parse_gens(text: &str) -> Result<GeneratorSet, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

/// Canonical form, spectrum, per-exponent witnesses and the SVG diagram.
pub fn line_report(gens: &str, range: u32) -> Result<String, String> {
    let range = range.clamp(1, MAX_RANGE) as u64;
    let s = canonicalize(&parse_gens(gens)?);
    let real = LineRealization::new(s.clone(), 2 * range);
    let iterates = real.iterates(range).map_err(|e| e.to_string())?;
    let spectrum: Vec<i64> = iterates
        .iter()
        .filter(|it| it.report.continuous)
        .map(|it| it.exponent)
        .collect();
    Ok(json!({
        "canonical": s.to_json(),
        "members": s.window(range),
        "spectrum": spectrum,
        "iterates": iterates.iter().map(|it| json!({
            "exponent": it.exponent,
            "continuous": it.report.continuous,
            "witness": it.report.witnesses.first().map(|w| format!(
                "({}, {}) ↦ ({}, {}), limit ({}, {})",
                w.column, w.point, w.value.0, w.value.1, w.limit.0, w.limit.1
            )),
        })).collect::<Vec<_>>(),
        "svg": line_svg(&real, range.min(8)),
    })
    .to_string())
}

/// Homeomorphism classes on `n` points with their continuity groups.
pub fn topology_report(n: u32) -> Result<String, String> {
    let n = n as usize;
    let labeled = enumerate_topologies(n).map_err(|e| e.to_string())?;
    let classes = classify_topologies(n).map_err(|e| e.to_string())?;
    let rows: Vec<_> = classes
        .iter()
        .map(|c| {
            json!({
                "class_id": c.class_id,
                "opens": c.topology.to_string(),
                "orbit_size": c.orbit_size,
                "group_order": c.group_order,
                "group_type": c.group_type.map(|g| g.name()),
            })
        })
        .collect();
    Ok(json!({"n": n, "labeled": labeled.len(), "classes": rows}).to_string())
}

/// Spectrum of a realization over a built-in table.
pub fn group_report(builtin: &str, subset: &str, variant: &str) -> Result<String, String> {
    let g = CayleyTable::builtin(builtin).ok_or_else(|| format!("unknown table {builtin:?}"))?;
    let s = Subset::parse(&g, subset).map_err(|e| e.to_string())?;
    let real = match variant {
        "open" => build_group_realization(&g, &s),
        "monoid" => build_monoid_realization(&g, &s),
        "compact" => build_compact_realization(&g, &s),
        other => return Err(format!("unknown variant {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    let spectrum = real.spectrum();
    Ok(json!({
        "elements": g.elements().map(|x| g.name(x)).collect::<Vec<_>>(),
        "subset": s.names(&g),
        "spectrum": spectrum.names(&g),
        "bijective": real.bijective().names(&g),
        "matches": spectrum == s,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn realize_line(gens: &str, range: u32) -> Result<String, JsValue> {
    line_report(gens, range).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn topologies(n: u32) -> Result<String, JsValue> {
    topology_report(n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn realize_group(builtin: &str, subset: &str, variant: &str) -> Result<String, JsValue> {
    group_report(builtin, subset, variant).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn line_report_example() {
        let v = parse(line_report("3, 4, 5", 6));
        assert_eq!(v["spectrum"], serde_json::json!([0, 3, 4, 5, 6]));
        assert_eq!(v["spectrum"], v["members"]);
        assert!(v["svg"].as_str().unwrap().starts_with("<svg"));
        assert!(line_report("3,x", 4).is_err());
    }

    #[test]
    fn range_is_clamped() {
        let v = parse(line_report("1", 100));
        assert_eq!(v["iterates"].as_array().unwrap().len(), 2 * MAX_RANGE as usize + 1);
    }

    #[test]
    fn topology_report_three() {
        let v = parse(topology_report(3));
        assert_eq!(v["labeled"], 29);
        assert_eq!(v["classes"].as_array().unwrap().len(), 9);
        assert!(topology_report(5).is_err());
    }

    #[test]
    fn group_report_s3() {
        let v = parse(group_report("s3", "e,r1,r2", "open"));
        assert_eq!(v["spectrum"], serde_json::json!(["e", "r1", "r2"]));
        assert_eq!(v["matches"], true);
        assert!(group_report("s3", "e,s1,r1", "open").is_err());
        assert!(group_report("q8", "e", "open").is_err());
    }
}
