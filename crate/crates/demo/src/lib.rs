//! Browser bindings for the table catalog. Three operations, each
//! returning a JSON string the page renders directly: solve a fixed
//! five, inspect one fully seeded table, and summarize the full scan.
//!
//! The functions are ordinary Rust behind `#[wasm_bindgen]`, so the
//! unit tests below run on the host; the wasm build only adds the JS
//! glue.

use mubs::document::TableDocument;
use mubs::galois::{FieldCtx, FieldElement};
use mubs::pauli::verify_mub;
use mubs::phase_space::SeedParams;
use mubs::solver::{scan_all, solve_system, FixedFive};
use serde_json::{json, Map, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn element(name: &str, value: &str) -> Result<FieldElement, String> {
    FieldCtx::gf4()
        .parse_element(value)
        .map_err(|_| format!("invalid element literal '{value}' for {name}"))
}

/// Solves the four-relation system for one fixed five. The result
/// carries every solution's triple, label, validity, and rendered
/// table.
#[wasm_bindgen]
pub fn solve(a11: &str, b11: &str, a21: &str, b21: &str, b12: &str) -> Result<String, String> {
    let fixed = FixedFive::new(
        element("a11", a11)?,
        element("b11", b11)?,
        element("a21", a21)?,
        element("b21", b21)?,
        element("b12", b12)?,
    )
    .map_err(|e| e.to_string())?;
    let solutions: Vec<Value> = solve_system(&fixed)
        .iter()
        .map(|sol| {
            json!({
                "label": sol.label,
                "a12": sol.triple.a12.to_string(),
                "a22": sol.triple.a22.to_string(),
                "b22": sol.triple.b22.to_string(),
                "valid": sol.validity.is_valid(),
                "rows": sol.table.rows().map(|row| row.map(|p| p.to_string())),
                "operators": sol.table.rows().map(
                    |row| row.map(|p| mubs::pauli::PauliOp::at_point(p).name()),
                ),
            })
        })
        .collect();
    let doc = json!({
        "fixed": {
            "a11": fixed.a11.to_string(),
            "b11": fixed.b11.to_string(),
            "a21": fixed.a21.to_string(),
            "b21": fixed.b21.to_string(),
            "b12": fixed.b12.to_string(),
        },
        "count": solutions.len(),
        "solutions": solutions,
    });
    Ok(doc.to_string())
}

/// Builds and fully verifies the table generated by eight seed
/// entries: the table document with verdicts, plus each row's
/// eigenbasis and class.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn inspect(
    a11: &str,
    b11: &str,
    a12: &str,
    b12: &str,
    a21: &str,
    b21: &str,
    a22: &str,
    b22: &str,
) -> Result<String, String> {
    let seeds = SeedParams::new(
        element("a11", a11)?,
        element("b11", b11)?,
        element("a12", a12)?,
        element("b12", b12)?,
        element("a21", a21)?,
        element("b21", b21)?,
        element("a22", a22)?,
        element("b22", b22)?,
    )
    .map_err(|e| e.to_string())?;
    let table = mubs::phase_space::build_table(&seeds);
    let report = verify_mub(&table);
    let doc = TableDocument::from_table(&table, Some(&seeds)).with_verdicts(&report);
    let mut value = serde_json::to_value(&doc).map_err(|e| e.to_string())?;

    let bases: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            json!({
                "row": row.row,
                "vectors": row.basis.as_ref().map(
                    |b| b.iter().map(ToString::to_string).collect::<Vec<_>>(),
                ),
                "class": row.class.map(|c| c.to_string()),
                "noncommuting": row
                    .noncommuting
                    .iter()
                    .map(|(p, q)| format!("{p} & {q}"))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    let extras = value
        .as_object_mut()
        .expect("document serializes to an object");
    extras.insert("bases".to_owned(), Value::Array(bases));
    extras.insert(
        "signature".to_owned(),
        json!(format!(
            "{} separable, {} entangled, {} anomalous",
            report.signature.separable, report.signature.entangled, report.signature.anomalous,
        )),
    );
    Ok(value.to_string())
}

/// Sweeps all 1024 fixed fives and reports the catalog: counts, the
/// solutions-per-five histogram, and the distinct valid tables.
#[wasm_bindgen]
pub fn scan() -> String {
    let catalog = scan_all();
    let histogram: Map<String, Value> = catalog
        .histogram
        .iter()
        .map(|(count, fives)| (count.to_string(), json!(fives)))
        .collect();
    let tables: Vec<Value> = catalog
        .valid_canonical
        .iter()
        .map(|table| {
            let report = verify_mub(table);
            let doc = TableDocument::from_table(table, None).with_verdicts(&report);
            serde_json::to_value(&doc).expect("document serializes")
        })
        .collect();
    json!({
        "fixed_count": catalog.fixed_count,
        "total_solutions": catalog.total_solutions,
        "valid_tables": catalog.valid_tables,
        "invalid_tables": catalog.invalid_tables,
        "histogram": histogram,
        "distinct_tables": catalog.distinct_tables,
        "distinct_valid_tables": catalog.distinct_valid_tables,
        "tables": tables,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_reference_five() {
        let out = solve("u2", "u", "u", "u", "u2").unwrap();
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["count"], 4);
        let first = &doc["solutions"][0];
        assert_eq!(first["label"], "A");
        assert_eq!(first["a12"], "1");
        assert_eq!(first["valid"], true);
        assert_eq!(first["rows"][0][0], "(u2,u)");
        assert_eq!(first["operators"][0][0], "ZX");
    }

    #[test]
    fn solve_rejects_bad_literal() {
        let err = solve("u2", "q", "u", "u", "u2").unwrap_err();
        assert!(err.contains("'q'"));
        assert!(err.contains("b11"));
    }

    #[test]
    fn inspect_reference_seeds() {
        let out = inspect("u2", "u", "1", "u2", "u", "u", "1", "u").unwrap();
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["verdicts"]["valid"], true);
        assert_eq!(doc["seeds"]["a11"], "u2");
        assert_eq!(doc["signature"], "3 separable, 2 entangled, 0 anomalous");
        let vectors = doc["bases"][0]["vectors"].as_array().unwrap();
        assert_eq!(vectors.len(), 4);
    }

    #[test]
    fn inspect_reports_commutation_failures() {
        let out = inspect("0", "1", "u", "1", "0", "0", "0", "0").unwrap();
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["verdicts"]["valid"], false);
        assert_eq!(doc["bases"][0]["noncommuting"][0], "(0,1) & (u,1)");
    }

    #[test]
    fn scan_summary_counts() {
        let out = scan();
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["total_solutions"], 5536);
        assert_eq!(doc["valid_tables"], 2160);
        assert_eq!(doc["distinct_valid_tables"], 6);
        assert_eq!(doc["histogram"]["40"], 1);
        assert_eq!(doc["tables"].as_array().unwrap().len(), 6);
        assert_eq!(doc["tables"][0]["verdicts"]["valid"], true);
    }
}
