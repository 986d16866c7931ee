//! Output formatting shared by all subcommands.
//!
//! Every float we print goes through [`g17`], which renders 17 significant
//! digits in scientific notation.  The representation is locale-independent,
//! round-trips exactly through `str::parse::<f64>`, and is stable across
//! platforms, so identical configurations produce byte-identical output.

/// Formats a finite float with 17 significant digits.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// JSON number: 17-significant-digit literal, or `null` when not finite
/// (JSON has no NaN/infinity).
pub fn json_num(x: f64) -> String {
    if x.is_finite() {
        g17(x)
    } else {
        "null".to_string()
    }
}

/// JSON string literal with the mandatory escapes applied.
pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders rows as a text table with right-aligned columns.
pub fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(&" ".repeat(w - cell.len()));
            out.push_str(cell);
        }
        out.push('\n');
    };
    let head: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    emit(&mut out, &head);
    for row in rows {
        emit(&mut out, row);
    }
    out
}
