//! The `.lie` structure-equation format and the JSON report format.

mod parse;
mod report;

pub use parse::{
    parse_form_expr, parse_structure_file, parse_structure_file_with_lints, Lint, ParseError, ParseErrorKind,
    SourceSpan,
};
pub use report::{emit_report_json, report_value, zigzag_value};

use crate::model::StructureEquations;

/// Renders equations in the `.lie` format. Generators whose differential
/// vanishes are omitted; terms appear in canonical monomial order.
pub fn serialize_structure_file(eq: &StructureEquations) -> String {
    let mut out = format!("generators {}\n", eq.m());
    for (i, d) in eq.diffs().iter().enumerate() {
        if !d.is_zero() {
            out.push_str(&format!("d f{} = {}\n", i + 1, d));
        }
    }
    out
}
