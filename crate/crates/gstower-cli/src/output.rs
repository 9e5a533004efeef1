//! Table, CSV, and JSON emission helpers.

use gstower::gspoly::Rational;
use gstower::numfmt::{decimal_string, exact_string};

pub const DECIMALS: u32 = 6;

/// Exact form plus a 6-decimal approximation: `44/13 (3.384615)`.
pub fn rational_pair(r: &Rational) -> String {
    format!("{} ({})", exact_string(r), decimal_string(r, DECIMALS))
}

/// Aligned two-or-more column table with a dashed header rule.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let ncols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        debug_assert_eq!(row.len(), ncols);
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let emit_row = |out: &mut String, cells: &[String]| {
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{cell:<w$}"));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    emit_row(
        &mut out,
        &headers.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
    );
    let rule: usize = widths.iter().sum::<usize>() + 2 * (ncols - 1);
    out.push_str(&"-".repeat(rule));
    out.push('\n');
    for row in rows {
        emit_row(&mut out, row);
    }
    out
}

/// One CSV line; the caller keeps fields comma-free.
pub fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}

pub fn json_rational(r: &Rational) -> serde_json::Value {
    serde_json::json!({
        "exact": exact_string(r),
        "decimal": decimal_string(r, DECIMALS),
    })
}
