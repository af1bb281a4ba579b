use std::collections::HashSet;

use crate::encodings::quoted_len;
use crate::error::{Error, Result};
use crate::framework::{ArgumentationFramework, EndpointMode};

use super::ParseDiagnostics;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn advance(&mut self, n: usize) {
        self.line += self.text[self.pos..self.pos + n].matches('\n').count();
        self.pos += n;
    }

    /// Skips whitespace and `%` comments.
    fn skip_trivia(&mut self) {
        loop {
            let rest = self.rest();
            let ws = rest.len() - rest.trim_start().len();
            if ws > 0 {
                self.advance(ws);
                continue;
            }
            if rest.starts_with('%') {
                let end = rest.find('\n').unwrap_or(rest.len());
                self.advance(end);
                continue;
            }
            break;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_trivia();
        if self.rest().starts_with(c) {
            self.advance(c.len_utf8());
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let found: String = self.rest().chars().take(12).collect();
        let found = if found.is_empty() {
            "end of input".to_owned()
        } else {
            format!("`{}`", found.lines().next().unwrap_or(""))
        };
        Error::syntax(self.line, format!("expected {wanted}, found {found}"))
    }

    fn keyword(&mut self) -> Result<&'a str> {
        self.skip_trivia();
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        let word = &rest[..len];
        match word {
            "arg" | "att" => {
                self.advance(len);
                Ok(word)
            }
            _ => Err(self.unexpected("`arg` or `att`")),
        }
    }

    /// `[a-z][A-Za-z0-9_]*`, an unsigned integer, or a quoted string.
    fn name(&mut self) -> Result<&'a str> {
        self.skip_trivia();
        let rest = self.rest();
        let len = match rest.as_bytes().first() {
            Some(b'a'..=b'z') => rest
                .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
                .unwrap_or(rest.len()),
            Some(b'0'..=b'9') => {
                let len = rest
                    .find(|c: char| !c.is_ascii_digit())
                    .unwrap_or(rest.len());
                if len > 1 && rest.starts_with('0') {
                    return Err(Error::syntax(self.line, "integer name with leading zero"));
                }
                if rest[len..].starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
                    return Err(self.unexpected("an argument name"));
                }
                len
            }
            Some(b'"') => quoted_len(rest)
                .ok_or_else(|| Error::syntax(self.line, "unterminated quoted name"))?,
            _ => return Err(self.unexpected("an argument name")),
        };
        let name = &rest[..len];
        self.advance(len);
        Ok(name)
    }
}

/// Parses `arg(x).` / `att(x,y).` facts with `%` comments.
///
/// In strict mode attacks must reference declared arguments and each
/// argument is declared once; lenient mode turns both into warnings.
pub fn parse_apx(
    text: &str,
    mode: EndpointMode,
) -> Result<(ArgumentationFramework, ParseDiagnostics)> {
    let mut cur = Cursor {
        text,
        pos: 0,
        line: 1,
    };
    let mut diag = ParseDiagnostics::default();
    let mut names: Vec<&str> = Vec::new();
    let mut declared: HashSet<&str> = HashSet::new();
    let mut attacks: Vec<(usize, &str, &str)> = Vec::new();

    loop {
        cur.skip_trivia();
        if cur.rest().is_empty() {
            break;
        }
        let line = cur.line;
        let kw = cur.keyword()?;
        cur.expect('(')?;
        let first = cur.name()?;
        if kw == "att" {
            cur.expect(',')?;
            let second = cur.name()?;
            attacks.push((line, first, second));
        } else if !declared.insert(first) {
            match mode {
                EndpointMode::Strict => {
                    return Err(Error::syntax(
                        line,
                        format!("argument `{first}` declared twice"),
                    ))
                }
                EndpointMode::Lenient => diag
                    .warnings
                    .push((line, format!("argument `{first}` declared twice"))),
            }
        } else {
            names.push(first);
        }
        cur.expect(')')?;
        cur.expect('.')?;
    }

    for &(line, a, b) in &attacks {
        for endpoint in [a, b] {
            if declared.contains(endpoint) {
                continue;
            }
            match mode {
                EndpointMode::Strict => {
                    return Err(Error::syntax(
                        line,
                        format!("attack endpoint `{endpoint}` is not a declared argument"),
                    ))
                }
                EndpointMode::Lenient => {
                    declared.insert(endpoint);
                    diag.warnings
                        .push((line, format!("argument `{endpoint}` declared implicitly")));
                    diag.lenient_declarations.push(endpoint.to_owned());
                }
            }
        }
    }

    let (af, _) = ArgumentationFramework::build_with(
        names,
        attacks.iter().map(|&(_, a, b)| (a, b)),
        EndpointMode::Lenient,
    )?;
    Ok((af, diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::emit_apx_facts;
    use crate::framework::tests::example1;
    use proptest::prelude::*;

    fn strict(text: &str) -> Result<ArgumentationFramework> {
        parse_apx(text, EndpointMode::Strict).map(|(af, d)| {
            assert!(d.is_empty());
            af
        })
    }

    #[test]
    fn small_file() {
        let af = strict("arg(a).\narg(b).\natt(a,b).\n").unwrap();
        assert_eq!(af.names(), &["a", "b"]);
        assert_eq!(af.attacks(), &[(0, 1)]);
    }

    #[test]
    fn example1_round_trip() {
        let af = example1();
        let text = emit_apx_facts(&af).unwrap();
        assert_eq!(strict(&text).unwrap(), af);
    }

    #[test]
    fn whitespace_comments_and_quotes() {
        let text = "% header\n  arg( a ) . arg(\"b c\").\n\n att (a , \"b c\").% trailing\narg(7).";
        let af = strict(text).unwrap();
        assert_eq!(af.names(), &["a", "\"b c\"", "7"]);
        assert_eq!(af.num_attacks(), 1);
    }

    #[test]
    fn strict_rejects_undeclared_endpoint() {
        let err = strict("arg(a).\natt(a,b).").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err}");
    }

    #[test]
    fn lenient_declares_endpoints() {
        let (af, diag) = parse_apx("att(a,b).", EndpointMode::Lenient).unwrap();
        assert_eq!(af.names(), &["a", "b"]);
        assert_eq!(diag.lenient_declarations, vec!["a", "b"]);
        assert_eq!(diag.warnings.len(), 2);
    }

    #[test]
    fn duplicate_declarations() {
        assert!(strict("arg(a).\narg(a).").is_err());
        let (af, diag) = parse_apx("arg(a).\narg(a).", EndpointMode::Lenient).unwrap();
        assert_eq!(af.len(), 1);
        assert_eq!(diag.warnings[0].0, 2);
    }

    #[test]
    fn syntax_errors_carry_lines() {
        for (text, line) in [
            ("arg(a)\n", 2),
            ("arg(A).", 1),
            ("\n\nfoo(a).", 3),
            ("arg(a).\natt(a).", 2),
            ("arg(\"x).", 1),
            ("arg(01).", 1),
            ("arg(1a).", 1),
        ] {
            match strict(text) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    proptest! {
        #[test]
        fn arbitrary_input_never_panics(text in "[a-z(),.%\"\\n 0-9]{0,60}") {
            let _ = parse_apx(&text, EndpointMode::Strict);
            let _ = parse_apx(&text, EndpointMode::Lenient);
        }
    }
}
