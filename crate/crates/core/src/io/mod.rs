//! Instance file parsing (apx, tgf) and extension output formatting.

mod apx;
mod tgf;

use std::fmt::Write as _;
use std::str::FromStr;

use crate::framework::ArgumentationFramework;
use crate::semantics::ExtensionSet;

pub use apx::parse_apx;
pub use tgf::parse_tgf;

/// Non-fatal findings from a parse.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseDiagnostics {
    /// `(line, message)` pairs, lines counted from 1.
    pub warnings: Vec<(usize, String)>,
    /// Arguments that only appeared as attack endpoints (lenient mode).
    pub lenient_declarations: Vec<String>,
}

impl ParseDiagnostics {
    pub fn is_empty(&self) -> bool {
        self.warnings.is_empty() && self.lenient_declarations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputFormat {
    #[default]
    Apx,
    Tgf,
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "apx" => Ok(InputFormat::Apx),
            "tgf" => Ok(InputFormat::Tgf),
            _ => Err(format!("unknown input format `{s}` (expected apx or tgf)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputStyle {
    /// One `[a,b]` line per extension.
    #[default]
    Lines,
    /// `[[a,b],[c]]` on one line, without a trailing newline.
    Single,
}

fn push_extension(out: &mut String, af: &ArgumentationFramework, ext: &crate::ArgumentSet) {
    out.push('[');
    for (i, name) in af.member_names(ext).enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(name);
    }
    out.push(']');
}

pub fn format_extensions(
    af: &ArgumentationFramework,
    exts: &ExtensionSet,
    style: OutputStyle,
) -> String {
    let mut out = String::new();
    match style {
        OutputStyle::Lines => {
            for ext in exts {
                push_extension(&mut out, af, ext);
                out.push('\n');
            }
        }
        OutputStyle::Single => {
            out.push('[');
            for (i, ext) in exts.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                push_extension(&mut out, af, ext);
            }
            out.push(']');
        }
    }
    out
}

/// Renders diagnostics one per line, for the error stream.
pub fn format_diagnostics(diag: &ParseDiagnostics) -> String {
    let mut out = String::new();
    for (line, msg) in &diag.warnings {
        let _ = writeln!(out, "warning: line {line}: {msg}");
    }
    out
}
