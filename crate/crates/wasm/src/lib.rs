//! Browser bindings for the classifier. Exposes three operations to the demo
//! page, all returning JSON strings:
//!
//! * `corpus_index()`: the built-in cases for a dropdown,
//! * `classify_case(id, n)` / `classify_equation(src, seed, ram, n)`: run
//!   the full pipeline and return the report plus SVG/ASCII polygon,
//! * `variation_text(src)`: pretty-print the first variation.
//!
//! The same functions compile natively, which is how the test suite drives
//! them.

use wasm_bindgen::prelude::*;

use gevrey_core::corpus::{corpus, find_case};
use gevrey_core::diffsum::parse_diffsum;
use gevrey_core::error::Error;
use gevrey_core::pipeline::classify;
use gevrey_core::report::{build_report, polygon_ascii, polygon_svg, ReportContext};
use gevrey_core::seedspec::parse_seed_spec;
use gevrey_core::stirling::StirlingTables;

fn error_json(e: &Error) -> String {
    serde_json::json!({ "error": e.to_string() }).to_string()
}

/// JSON array of `{id, citation, equation, family, branch}` for every
/// built-in case.
#[wasm_bindgen]
pub fn corpus_index() -> String {
    let rows: Vec<_> = corpus()
        .iter()
        .map(|c| {
            serde_json::json!({
                "id": c.id,
                "citation": c.citation,
                "equation": c.equation().to_string(),
                "family": format!("{:?}", c.family),
                "branch": c.branch,
            })
        })
        .collect();
    serde_json::Value::Array(rows).to_string()
}

/// Classify a built-in case with `n` derived coefficients.
#[wasm_bindgen]
pub fn classify_case(id: &str, n: usize) -> String {
    let run = || -> Result<String, Error> {
        let case = find_case(id)?;
        let tables = StirlingTables::new(12);
        let equation = case.equation();
        let c = classify(&equation, &case.seed, n.max(1), &tables)?;
        let ctx = ReportContext {
            case: Some(&case),
            equation: &equation,
            z_scale: case.z_exponent_scale(),
            ramification: case.z_ramification,
            branch: case.seed.branch(),
        };
        let report = build_report(&ctx, &c);
        Ok(serde_json::json!({
            "report": report,
            "svg": polygon_svg(&c.polygon),
            "ascii": polygon_ascii(&c.polygon),
        })
        .to_string())
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// Classify a user-supplied differential sum. `seed` uses the
/// `exponent=coefficient,…` syntax; `ram = 0` infers the grid from the seed.
#[wasm_bindgen]
pub fn classify_equation(equation: &str, seed: &str, ram: u32, n: usize) -> String {
    let run = || -> Result<String, Error> {
        let f = parse_diffsum(equation)?;
        let seed = parse_seed_spec(seed, if ram == 0 { None } else { Some(ram) }, None)?;
        let tables = StirlingTables::new(12);
        let c = classify(&f, &seed, n.max(1), &tables)?;
        let ctx = ReportContext {
            case: None,
            equation: &f,
            z_scale: num_rational::Rational64::from_integer(1),
            ramification: seed.ram(),
            branch: None,
        };
        let report = build_report(&ctx, &c);
        Ok(serde_json::json!({
            "report": report,
            "svg": polygon_svg(&c.polygon),
            "ascii": polygon_ascii(&c.polygon),
        })
        .to_string())
    };
    run().unwrap_or_else(|e| error_json(&e))
}

/// The first variation of a differential sum, as display text.
#[wasm_bindgen]
pub fn variation_text(equation: &str) -> String {
    match parse_diffsum(equation) {
        Ok(f) => f.first_variation().to_string(),
        Err(e) => format!("error: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_lists_all_cases() {
        let parsed: serde_json::Value = serde_json::from_str(&corpus_index()).unwrap();
        assert!(parsed.as_array().unwrap().len() >= 7);
    }

    #[test]
    fn classify_case_returns_report_and_svg() {
        let out = classify_case("P3-A-13-l4", 8);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v.get("error").is_none());
        assert_eq!(v["report"]["gevrey_candidates"][1], "1");
        assert!(v["svg"].as_str().unwrap().contains("<svg"));
    }

    #[test]
    fn classify_equation_euler_case() {
        let out = classify_equation("z*w' + w", "-1=1", 0, 4);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let candidates = v["report"]["gevrey_candidates"].as_array().unwrap();
        assert_eq!(candidates.len(), 1);
        assert_eq!(candidates[0], "0");
    }

    #[test]
    fn errors_are_json() {
        let out = classify_case("no-such-case", 4);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["error"].as_str().unwrap().contains("no-such-case"));
        assert!(variation_text("z*(").starts_with("error:"));
    }
}
