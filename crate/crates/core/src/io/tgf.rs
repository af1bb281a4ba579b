use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::framework::{ArgumentationFramework, EndpointMode};

use super::ParseDiagnostics;

/// Trivial graph format: node ids (optionally followed by a label) up to a
/// `#` line, then `source target` edge lines.
pub fn parse_tgf(text: &str) -> Result<(ArgumentationFramework, ParseDiagnostics)> {
    let mut diag = ParseDiagnostics::default();
    let mut names: Vec<&str> = Vec::new();
    let mut seen: HashSet<&str> = HashSet::new();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    let mut in_edges = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !in_edges {
            if line == "#" {
                in_edges = true;
                continue;
            }
            let mut parts = line.split_whitespace();
            let id = parts.next().expect("non-empty line");
            if parts.next().is_some() {
                diag.warnings
                    .push((line_no, format!("label of node `{id}` ignored")));
            }
            if !seen.insert(id) {
                return Err(Error::syntax(
                    line_no,
                    format!("node `{id}` declared twice"),
                ));
            }
            names.push(id);
        } else {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let &[from, to, ..] = parts.as_slice() else {
                return Err(Error::syntax(
                    line_no,
                    "edge line needs a source and a target",
                ));
            };
            if parts.len() > 2 {
                diag.warnings
                    .push((line_no, "edge label ignored".to_owned()));
            }
            for id in [from, to] {
                if !seen.contains(id) {
                    return Err(Error::syntax(line_no, format!("unknown node `{id}`")));
                }
            }
            edges.push((from, to));
        }
    }
    if !in_edges {
        return Err(Error::syntax(
            text.lines().count().max(1),
            "missing `#` separator",
        ));
    }
    let (af, _) = ArgumentationFramework::build_with(names, edges, EndpointMode::Strict)?;
    Ok((af, diag))
}
