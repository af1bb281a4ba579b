//! Running an external ASP solver on an emitted encoding and comparing the
//! projected answer sets with native enumeration.

use std::collections::BTreeSet;
use std::env;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;
use crate::semantics::{self, Budget, SemanticsKind};

use super::{emit_apx_facts, emit_encoding, project_answer_set, EncodingName};

pub const SOLVER_ENV: &str = "AFSOLVE_SOLVER_CMD";
const DEFAULT_TEMPLATE: &str = "clingo {all} {files}";

/// A whitespace-separated command template.
///
/// Placeholders (each a whole token): `{files}` expands to the encoding and
/// facts files, `{encoding}` and `{facts}` to one of them, `{all}` to
/// `--models=0`. Without any file placeholder both files are appended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverCommand {
    template: String,
}

impl SolverCommand {
    pub fn new(template: impl Into<String>) -> Self {
        SolverCommand {
            template: template.into(),
        }
    }

    /// `AFSOLVE_SOLVER_CMD` if set and non-empty, else `clingo` when it is on
    /// the `PATH`, else `None`.
    pub fn from_env() -> Option<Self> {
        match env::var(SOLVER_ENV) {
            Ok(t) if !t.trim().is_empty() => Some(Self::new(t)),
            _ => find_on_path("clingo").map(|_| Self::new(DEFAULT_TEMPLATE)),
        }
    }

    pub fn template(&self) -> &str {
        &self.template
    }

    fn argv(&self, encoding: &Path, facts: &Path) -> Result<Vec<String>> {
        let mut argv = Vec::new();
        let mut has_files = false;
        for token in self.template.split_whitespace() {
            match token {
                "{files}" => {
                    argv.push(encoding.display().to_string());
                    argv.push(facts.display().to_string());
                    has_files = true;
                }
                "{encoding}" => {
                    argv.push(encoding.display().to_string());
                    has_files = true;
                }
                "{facts}" => {
                    argv.push(facts.display().to_string());
                    has_files = true;
                }
                "{all}" => argv.push("--models=0".to_owned()),
                t => argv.push(t.to_owned()),
            }
        }
        if argv.is_empty() {
            return Err(Error::Solver("empty command template".into()));
        }
        if !has_files {
            argv.push(encoding.display().to_string());
            argv.push(facts.display().to_string());
        }
        Ok(argv)
    }

    /// Runs the solver on `program` plus `facts` and returns the atoms of
    /// every answer set.
    pub fn solve(&self, program: &str, facts: &str) -> Result<Vec<Vec<String>>> {
        let encoding_file = write_temp(program)?;
        let facts_file = write_temp(facts)?;
        let argv = self.argv(encoding_file.path(), facts_file.path())?;
        let output = Command::new(&argv[0])
            .args(&argv[1..])
            .output()
            .map_err(|e| Error::Solver(format!("cannot launch `{}`: {e}", argv[0])))?;
        // clingo-style exit codes: 10 satisfiable, 20 unsatisfiable, 30 both
        // (exhaustive enumeration); plain 0 for other tools.
        match output.status.code() {
            Some(0 | 10 | 20 | 30) => {}
            code => {
                return Err(Error::Solver(format!(
                    "`{}` exited with {code:?}: {}",
                    argv[0],
                    String::from_utf8_lossy(&output.stderr).trim()
                )))
            }
        }
        parse_solver_output(&String::from_utf8_lossy(&output.stdout))
    }
}

fn write_temp(text: &str) -> Result<NamedTempFile> {
    let mut file = NamedTempFile::new()?;
    file.write_all(text.as_bytes())?;
    file.flush()?;
    Ok(file)
}

fn find_on_path(program: &str) -> Option<PathBuf> {
    env::split_paths(&env::var_os("PATH")?)
        .map(|dir| dir.join(program))
        .find(|p| p.is_file())
}

/// Splits an answer line into atoms, keeping quoted strings intact.
fn split_atoms(line: &str) -> Vec<String> {
    let mut atoms = Vec::new();
    let mut current = String::new();
    let mut in_quotes = false;
    let mut escaped = false;
    for c in line.chars() {
        if in_quotes {
            current.push(c);
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_quotes = false,
                _ => {}
            }
        } else if c.is_whitespace() {
            if !current.is_empty() {
                atoms.push(std::mem::take(&mut current));
            }
        } else {
            if c == '"' {
                in_quotes = true;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        atoms.push(current);
    }
    atoms
}

/// Extracts answer sets from output in the `Answer: N` / atom-line format.
pub fn parse_solver_output(stdout: &str) -> Result<Vec<Vec<String>>> {
    let mut answers = Vec::new();
    let mut lines = stdout.lines();
    while let Some(line) = lines.next() {
        if let Some(rest) = line.trim_start().strip_prefix("Answer:") {
            // Newer clingo releases append `(Time: ...)` to the header.
            let number = rest.split_whitespace().next().unwrap_or("");
            if number.parse::<u64>().is_err() {
                return Err(Error::Solver(format!("malformed answer header `{line}`")));
            }
            let atoms = lines
                .next()
                .ok_or_else(|| Error::Solver("answer header without atom line".into()))?;
            answers.push(split_atoms(atoms));
        }
    }
    Ok(answers)
}

/// Outcome of comparing solver answer sets against native enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialReport {
    pub kind: SemanticsKind,
    pub answer_sets: usize,
    /// Distinct projections of the answer sets.
    pub projected: BTreeSet<BTreeSet<String>>,
    /// Native extensions with no corresponding answer set.
    pub missing: Vec<BTreeSet<String>>,
    /// Projections that are not native extensions.
    pub unexpected: Vec<BTreeSet<String>>,
}

impl DifferentialReport {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

/// Solves `af` under `kind` through the external solver and compares the
/// deduplicated `in/1` projections with [`semantics::enumerate`].
pub fn differential_check(
    af: &ArgumentationFramework,
    kind: SemanticsKind,
    solver: &SolverCommand,
    budget: &mut Budget,
) -> Result<DifferentialReport> {
    let encoding = EncodingName::for_semantics(kind)
        .ok_or(Error::Precondition("no encoding for this semantics"))?;
    let facts = emit_apx_facts(af)?;
    let answers = solver.solve(&emit_encoding(encoding), &facts)?;
    let mut projected = BTreeSet::new();
    for atoms in &answers {
        projected.insert(project_answer_set(atoms)?.in_atoms);
    }
    let native: BTreeSet<BTreeSet<String>> = semantics::enumerate(af, kind, budget)?
        .iter()
        .map(|s| af.member_names(s).map(str::to_owned).collect())
        .collect();
    Ok(DifferentialReport {
        kind,
        answer_sets: answers.len(),
        missing: native.difference(&projected).cloned().collect(),
        unexpected: projected.difference(&native).cloned().collect(),
        projected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_clingo_style_output() {
        let out = "clingo version 5.6.2\nReading from a.lp ...\nSolving...\n\
                   Answer: 1\narg(a) in(a) out(b)\nAnswer: 2 (Time: 0.001s)\n\nSATISFIABLE\n";
        let answers = parse_solver_output(out).unwrap();
        assert_eq!(answers.len(), 2);
        assert_eq!(answers[0], vec!["arg(a)", "in(a)", "out(b)"]);
        assert!(answers[1].is_empty());
        assert!(parse_solver_output("UNSATISFIABLE\n").unwrap().is_empty());
        assert!(parse_solver_output("Answer: x\nin(a)\n").is_err());
        assert!(parse_solver_output("Answer: 1").is_err());
    }

    #[test]
    fn quoted_atoms_survive_splitting() {
        assert_eq!(
            split_atoms("in(\"a b\") in(c)  out(\"x\\\" y\")"),
            vec!["in(\"a b\")", "in(c)", "out(\"x\\\" y\")"]
        );
    }

    #[test]
    fn template_expansion() {
        let enc = Path::new("/tmp/e.lp");
        let facts = Path::new("/tmp/f.lp");
        let argv = SolverCommand::new("clingo {all} {files}")
            .argv(enc, facts)
            .unwrap();
        assert_eq!(argv, ["clingo", "--models=0", "/tmp/e.lp", "/tmp/f.lp"]);
        let argv = SolverCommand::new("solver -n 0").argv(enc, facts).unwrap();
        assert_eq!(argv, ["solver", "-n", "0", "/tmp/e.lp", "/tmp/f.lp"]);
        let argv = SolverCommand::new("s {facts} {encoding}")
            .argv(enc, facts)
            .unwrap();
        assert_eq!(argv, ["s", "/tmp/f.lp", "/tmp/e.lp"]);
        assert!(SolverCommand::new("  ").argv(enc, facts).is_err());
    }

    #[test]
    fn launch_failure_is_an_error() {
        let cmd = SolverCommand::new("/nonexistent/solver-binary {files}");
        assert!(matches!(cmd.solve("", ""), Err(Error::Solver(_))));
    }
}
