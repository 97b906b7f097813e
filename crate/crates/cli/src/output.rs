//! Deterministic CSV/JSON assembly.
//!
//! CSV uses '.' decimals, 17 significant digits and LF line endings so
//! identical runs produce byte-identical files regardless of locale.

use std::io::Write;
use std::path::Path;

/// 17 significant digits; round-trips f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Axis label like `dH(40)` with integral x printed without a fraction.
pub fn x_label(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("dH({})", x as i64)
    } else {
        format!("dH({x})")
    }
}

pub struct Csv {
    buffer: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buffer = header.join(",");
        buffer.push('\n');
        Csv { buffer }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.buffer.push_str(&cells.join(","));
        self.buffer.push('\n');
    }

    pub fn finish(self) -> String {
        self.buffer
    }
}

/// Writes to `out` when given, otherwise to stdout.
pub fn emit(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
        }
    }
}
