//! ASP encodings for argumentation semantics, the `arg`/`att` fact database,
//! and projection of answer sets back onto extensions.
//!
//! The rule texts are static resources, one rule per line. Spacing is
//! canonical: no spaces inside atom argument lists, one space after each
//! comma separating body literals, single spaces around `:-` and `|`.

mod solver;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;
use crate::semantics::SemanticsKind;

pub use solver::{
    differential_check, parse_solver_output, DifferentialReport, SolverCommand, SOLVER_ENV,
};

const CF: &str = include_str!("listings/cf.lp");
const DEF: &str = include_str!("listings/def.lp");
const RANGE: &str = include_str!("listings/range.lp");
const SAT_PREF2: &str = include_str!("listings/satpref2.lp");
const SAT_SEMI2: &str = include_str!("listings/satsemi2.lp");

/// The rule of the semi-stable saturation module that forces witnesses to be
/// admissible; the stage encoding drops it.
pub const ADMISSIBLE_COVER_RULE: &str =
    "spoil | witness(Z):att(Z,Y) :- witness(X), att(Y,X), unstable.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EncodingName {
    Cf,
    Def,
    Adm,
    Range,
    SatPref2,
    SatSemi2,
    Pref2,
    Semi2,
    Stage2,
}

impl EncodingName {
    pub const ALL: [EncodingName; 9] = [
        EncodingName::Cf,
        EncodingName::Def,
        EncodingName::Adm,
        EncodingName::Range,
        EncodingName::SatPref2,
        EncodingName::SatSemi2,
        EncodingName::Pref2,
        EncodingName::Semi2,
        EncodingName::Stage2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            EncodingName::Cf => "cf",
            EncodingName::Def => "def",
            EncodingName::Adm => "adm",
            EncodingName::Range => "range",
            EncodingName::SatPref2 => "satpref2",
            EncodingName::SatSemi2 => "satsemi2",
            EncodingName::Pref2 => "pref2",
            EncodingName::Semi2 => "semi2",
            EncodingName::Stage2 => "stage2",
        }
    }

    /// The full encoding whose answer sets correspond to `kind`, if there is one.
    pub fn for_semantics(kind: SemanticsKind) -> Option<EncodingName> {
        match kind {
            SemanticsKind::ConflictFree => Some(EncodingName::Cf),
            SemanticsKind::Admissible => Some(EncodingName::Adm),
            SemanticsKind::Preferred => Some(EncodingName::Pref2),
            SemanticsKind::SemiStable => Some(EncodingName::Semi2),
            SemanticsKind::Stage => Some(EncodingName::Stage2),
            SemanticsKind::Stable => None,
        }
    }
}

impl fmt::Display for EncodingName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EncodingName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        EncodingName::ALL
            .into_iter()
            .find(|e| e.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!(
                    "unknown encoding `{s}` (expected one of: {})",
                    EncodingName::ALL.map(EncodingName::tag).join(", ")
                )
            })
    }
}

/// Rule text for `name`; composites concatenate their modules.
pub fn emit_encoding(name: EncodingName) -> String {
    match name {
        EncodingName::Cf => CF.to_owned(),
        EncodingName::Def => DEF.to_owned(),
        EncodingName::Adm => [CF, DEF].concat(),
        EncodingName::Range => RANGE.to_owned(),
        EncodingName::SatPref2 => SAT_PREF2.to_owned(),
        EncodingName::SatSemi2 => SAT_SEMI2.to_owned(),
        EncodingName::Pref2 => [CF, DEF, SAT_PREF2].concat(),
        EncodingName::Semi2 => [CF, DEF, RANGE, SAT_SEMI2].concat(),
        EncodingName::Stage2 => {
            let mut text = [CF, RANGE].concat();
            for rule in SAT_SEMI2.lines().filter(|r| *r != ADMISSIBLE_COVER_RULE) {
                text.push_str(rule);
                text.push('\n');
            }
            text
        }
    }
}

/// `[a-z][A-Za-z0-9_]*`, an unsigned integer without leading zeros, or a
/// double-quoted string with backslash escapes.
pub fn is_valid_constant(name: &str) -> bool {
    let bytes = name.as_bytes();
    match bytes.first() {
        Some(b'a'..=b'z') => bytes[1..]
            .iter()
            .all(|b| b.is_ascii_alphanumeric() || *b == b'_'),
        Some(b'0') => bytes.len() == 1,
        Some(b'1'..=b'9') => bytes.iter().all(u8::is_ascii_digit),
        Some(b'"') => quoted_len(name) == Some(name.len()),
        _ => false,
    }
}

/// Byte length of the quoted string at the start of `s`, including quotes.
pub(crate) fn quoted_len(s: &str) -> Option<usize> {
    let mut chars = s.char_indices();
    if chars.next()?.1 != '"' {
        return None;
    }
    while let Some((i, c)) = chars.next() {
        match c {
            '"' => return Some(i + 1),
            '\\' => {
                chars.next()?;
            }
            '\n' => return None,
            _ => {}
        }
    }
    None
}

/// The fact database: `arg` facts in argument order, then `att` facts sorted
/// by `(attacker index, target index)`.
pub fn emit_apx_facts(af: &ArgumentationFramework) -> Result<String> {
    let mut out = String::new();
    for name in af.names() {
        if !is_valid_constant(name) {
            return Err(Error::InvalidConstant(name.clone()));
        }
        out.push_str("arg(");
        out.push_str(name);
        out.push_str(").\n");
    }
    for &(a, b) in af.attacks() {
        out.push_str("att(");
        out.push_str(af.name(a));
        out.push(',');
        out.push_str(af.name(b));
        out.push_str(").\n");
    }
    Ok(out)
}

/// An answer set reduced to the arguments of its `in/1` atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedAnswerSet {
    pub in_atoms: BTreeSet<String>,
    pub raw_atoms: Vec<String>,
}

/// Splits a ground atom into predicate name and argument terms.
fn parse_atom(atom: &str) -> Result<(&str, Vec<&str>)> {
    let bad = || Error::AtomParse(atom.to_owned());
    let atom = atom.trim();
    let name_end = atom
        .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .unwrap_or(atom.len());
    let name = &atom[..name_end];
    if !name.starts_with(|c: char| c.is_ascii_lowercase() || c == '_') {
        return Err(bad());
    }
    let rest = &atom[name_end..];
    if rest.is_empty() {
        return Ok((name, Vec::new()));
    }
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut args = Vec::new();
    let mut start = 0;
    let mut depth = 0usize;
    let mut idx = 0;
    while idx < inner.len() {
        let c = inner[idx..].chars().next().expect("in bounds");
        match c {
            '"' => {
                idx += quoted_len(&inner[idx..]).ok_or_else(bad)?;
                continue;
            }
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
            ',' if depth == 0 => {
                args.push(inner[start..idx].trim());
                start = idx + 1;
            }
            _ => {}
        }
        idx += c.len_utf8();
    }
    if depth != 0 {
        return Err(bad());
    }
    args.push(inner[start..].trim());
    if args.iter().any(|a| a.is_empty()) {
        return Err(bad());
    }
    Ok((name, args))
}

/// Keeps the arguments of unary `in` atoms; everything else stays in
/// `raw_atoms` only.
pub fn project_answer_set<S: AsRef<str>>(atoms: &[S]) -> Result<ProjectedAnswerSet> {
    let mut in_atoms = BTreeSet::new();
    let mut raw_atoms = Vec::with_capacity(atoms.len());
    for atom in atoms {
        let atom = atom.as_ref().trim();
        let (name, args) = parse_atom(atom)?;
        if name == "in" && args.len() == 1 {
            in_atoms.insert(args[0].to_owned());
        }
        raw_atoms.push(atom.to_owned());
    }
    Ok(ProjectedAnswerSet {
        in_atoms,
        raw_atoms,
    })
}
