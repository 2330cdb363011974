use serde_json::{json, Value};

use crate::spectral::{FrolicherReport, ZigZag};

/// A zig-zag as arrays of term strings.
pub fn zigzag_value(z: &ZigZag) -> Value {
    json!({
        "start": [z.start.0, z.start.1],
        "length": z.len(),
        "chain": z.chain.iter().map(|b| b.term_strings()).collect::<Vec<_>>(),
        "terminal": z.terminal.term_strings(),
    })
}

/// The report as a JSON value. `serde_json` maps keep keys sorted.
pub fn report_value(report: &FrolicherReport) -> Value {
    let pages: Vec<Value> = report
        .pages
        .iter()
        .map(|page| {
            let dims: Vec<[usize; 3]> = page.iter().map(|(p, q, d)| [p, q, d]).collect();
            json!({ "r": page.r, "dims": dims })
        })
        .collect();
    let hodge: Vec<[usize; 3]> = report.hodge.iter().map(|(p, q, h)| [p, q, h]).collect();
    let mut value = json!({
        "m": report.m,
        "pages": pages,
        "betti": report.betti,
        "hodge": hodge,
        "degeneration_page": report.degeneration_page,
        "euler": report.euler,
    });
    if let Some(z) = &report.witness {
        value["witness"] = zigzag_value(z);
    }
    value
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn emit_report_json(report: &FrolicherReport) -> String {
    let mut text = report_value(report).to_string();
    text.push('\n');
    text
}
