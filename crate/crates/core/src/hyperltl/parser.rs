//! Recursive-descent parser for the ASCII HyperLTL syntax.
//!
//! ```text
//! phi := ("forall" | "exists") IDENT "." phi | psi
//! psi := IDENT "[" IDENT "]" | "true" | "false" | "!" psi | "(" psi ")"
//!      | psi ("&" | "|" | "->" | "<->" | "U" | "R" | "W") psi
//!      | ("X" | "F" | "G") psi
//! ```
//!
//! Binding strength, tightest first: unary operators, `U`/`R`/`W`, `&`, `|`,
//! `->`, `<->`. The temporal binaries and `->` associate to the right, `&`,
//! `|` and `<->` to the left. `#` starts a comment running to end of line.

use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::{Formula, IndexedAtom, Ltl, QfFormula, Quantifier};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unbound trace variable `{var}` at {line}:{col}")]
    UnboundVariable { var: String, line: usize, col: usize },
    #[error("trace variable `{var}` quantified twice (second at {line}:{col})")]
    DuplicateVariable { var: String, line: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    True,
    False,
    Dot,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Eventually,
    Globally,
    Until,
    Release,
    WeakUntil,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Forall => "forall",
            Tok::Exists => "exists",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Dot => ".",
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Not => "!",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Implies => "->",
            Tok::Iff => "<->",
            Tok::Next => "X",
            Tok::Eventually => "F",
            Tok::Globally => "G",
            Tok::Until => "U",
            Tok::Release => "R",
            Tok::WeakUntil => "W",
            Tok::Ident(_) | Tok::Eof => "",
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().collect();
            advance(j - i, &mut i);
            match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "true" => Tok::True,
                "false" => Tok::False,
                "X" => Tok::Next,
                "F" => Tok::Eventually,
                "G" => Tok::Globally,
                "U" => Tok::Until,
                "R" => Tok::Release,
                "W" => Tok::WeakUntil,
                _ => Tok::Ident(word),
            }
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let (tok, len) = if rest.starts_with("<->") {
                (Tok::Iff, 3)
            } else if rest.starts_with("->") {
                (Tok::Implies, 2)
            } else {
                let t = match c {
                    '.' => Tok::Dot,
                    '[' => Tok::LBrack,
                    ']' => Tok::RBrack,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '!' => Tok::Not,
                    '&' => Tok::And,
                    '|' => Tok::Or,
                    _ => {
                        return Err(ParseError::Syntax {
                            line,
                            col,
                            msg: format!("unexpected character `{c}`"),
                        })
                    }
                };
                (t, 1)
            };
            advance(len, &mut i);
            tok
        };
        out.push(Spanned {
            tok,
            line: start_line,
            col: start_col,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'v> {
    toks: Vec<Spanned>,
    pos: usize,
    bound: &'v BTreeSet<String>,
}

impl<'v> Parser<'v> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Spanned, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.error_here(format!(
                "expected `{}`, found {}",
                tok.text(),
                self.peek().describe()
            )))
        }
    }

    fn ident(&mut self) -> Result<Spanned, ParseError> {
        match self.peek() {
            Tok::Ident(_) => Ok(self.bump()),
            other => Err(self.error_here(format!("expected identifier, found {}", other.describe()))),
        }
    }

    fn iff(&mut self) -> Result<QfFormula, ParseError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = Ltl::iff(lhs, self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<QfFormula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(Ltl::implies(lhs, self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<QfFormula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Ltl::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<QfFormula, ParseError> {
        let mut lhs = self.temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Ltl::and(lhs, self.temporal()?);
        }
        Ok(lhs)
    }

    fn temporal(&mut self) -> Result<QfFormula, ParseError> {
        let lhs = self.unary()?;
        let ctor: fn(QfFormula, QfFormula) -> QfFormula = match self.peek() {
            Tok::Until => Ltl::until,
            Tok::Release => Ltl::release,
            Tok::WeakUntil => Ltl::weak_until,
            _ => return Ok(lhs),
        };
        self.bump();
        Ok(ctor(lhs, self.temporal()?))
    }

    fn unary(&mut self) -> Result<QfFormula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Ltl::not(self.unary()?))
            }
            Tok::Next => {
                self.bump();
                Ok(Ltl::next(self.unary()?))
            }
            Tok::Eventually => {
                self.bump();
                Ok(Ltl::eventually(self.unary()?))
            }
            Tok::Globally => {
                self.bump();
                Ok(Ltl::globally(self.unary()?))
            }
            Tok::True => {
                self.bump();
                Ok(Ltl::True)
            }
            Tok::False => {
                self.bump();
                Ok(Ltl::False)
            }
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(prop) => {
                self.bump();
                self.expect(Tok::LBrack)?;
                let v = self.ident()?;
                self.expect(Tok::RBrack)?;
                let Tok::Ident(var) = v.tok else { unreachable!() };
                if !self.bound.contains(&var) {
                    return Err(ParseError::UnboundVariable {
                        var,
                        line: v.line,
                        col: v.col,
                    });
                }
                Ok(Ltl::Atom(IndexedAtom::new(prop, var)))
            }
            Tok::Forall | Tok::Exists => {
                Err(self.error_here("quantifiers may only appear in the leading prefix"))
            }
            other => Err(self.error_here(format!("expected formula, found {}", other.describe()))),
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() != Tok::Eof {
            return Err(self.error_here(format!(
                "unexpected {} after formula",
                self.peek().describe()
            )));
        }
        Ok(())
    }
}

/// Parses a complete HyperLTL formula (prefix and body).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut prefix = Vec::new();
    let mut bound = BTreeSet::new();
    let mut pos = 0;
    loop {
        let q = match toks[pos].tok {
            Tok::Forall => Quantifier::Forall,
            Tok::Exists => Quantifier::Exists,
            _ => break,
        };
        let var_tok = &toks[pos + 1];
        let Tok::Ident(var) = &var_tok.tok else {
            return Err(ParseError::Syntax {
                line: var_tok.line,
                col: var_tok.col,
                msg: format!("expected trace variable, found {}", var_tok.tok.describe()),
            });
        };
        if !bound.insert(var.clone()) {
            return Err(ParseError::DuplicateVariable {
                var: var.clone(),
                line: var_tok.line,
                col: var_tok.col,
            });
        }
        let dot = &toks[pos + 2];
        if dot.tok != Tok::Dot {
            return Err(ParseError::Syntax {
                line: dot.line,
                col: dot.col,
                msg: format!("expected `.`, found {}", dot.tok.describe()),
            });
        }
        prefix.push((q, var.clone()));
        pos += 3;
    }
    let mut p = Parser {
        toks,
        pos,
        bound: &bound,
    };
    let body = p.iff()?;
    p.finish()?;
    Ok(Formula { prefix, body })
}

/// Parses a quantifier-free body whose trace variables must come from `vars`.
pub fn parse_body<'a>(
    text: &str,
    vars: impl IntoIterator<Item = &'a str>,
) -> Result<QfFormula, ParseError> {
    let bound: BTreeSet<String> = vars.into_iter().map(str::to_string).collect();
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        bound: &bound,
    };
    let body = p.iff()?;
    p.finish()?;
    Ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(p: &str, v: &str) -> QfFormula {
        Ltl::Atom(IndexedAtom::new(p, v))
    }

    #[test]
    fn parses_gni() {
        let f = parse_formula(
            "forall p1. forall p2. exists p3. G (h[p1] <-> h[p3]) & G (o[p2] <-> o[p3])",
        )
        .unwrap();
        assert_eq!(
            f.prefix,
            vec![
                (Quantifier::Forall, "p1".to_string()),
                (Quantifier::Forall, "p2".to_string()),
                (Quantifier::Exists, "p3".to_string()),
            ]
        );
        let expected = Ltl::and(
            Ltl::globally(Ltl::iff(atom("h", "p1"), atom("h", "p3"))),
            Ltl::globally(Ltl::iff(atom("o", "p2"), atom("o", "p3"))),
        );
        assert_eq!(f.body, expected);
    }

    #[test]
    fn parses_trivial_universal() {
        let f = parse_formula("forall p. G true").unwrap();
        assert_eq!(f.prefix, vec![(Quantifier::Forall, "p".to_string())]);
        assert_eq!(f.body, Ltl::globally(Ltl::True));
    }

    #[test]
    fn unbound_variable() {
        let err = parse_formula("forall p. a[q]").unwrap_err();
        assert_eq!(
            err,
            ParseError::UnboundVariable {
                var: "q".into(),
                line: 1,
                col: 13
            }
        );
    }

    #[test]
    fn duplicate_variable() {
        let err = parse_formula("forall p. exists p. a[p]").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateVariable { ref var, .. } if var == "p"));
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_formula("forall p.\n  a[p] &").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 2,
                col: 9,
                msg: "expected formula, found end of input".into()
            }
        );
        assert!(matches!(
            parse_formula("forall p. a[p] $ b[p]"),
            Err(ParseError::Syntax { line: 1, col: 16, .. })
        ));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("forall p. a[p] U b[p] & c[p] | d[p] -> e[p] <-> g[p]").unwrap();
        let expected = Ltl::iff(
            Ltl::implies(
                Ltl::or(
                    Ltl::and(Ltl::until(atom("a", "p"), atom("b", "p")), atom("c", "p")),
                    atom("d", "p"),
                ),
                atom("e", "p"),
            ),
            atom("g", "p"),
        );
        assert_eq!(f.body, expected);
        let f = parse_formula("forall p. a[p] U b[p] U c[p]").unwrap();
        assert_eq!(
            f.body,
            Ltl::until(atom("a", "p"), Ltl::until(atom("b", "p"), atom("c", "p")))
        );
        let f = parse_formula("forall p. G a[p] W !b[p]").unwrap();
        assert_eq!(
            f.body,
            Ltl::weak_until(Ltl::globally(atom("a", "p")), Ltl::not(atom("b", "p")))
        );
    }

    #[test]
    fn comments_are_skipped() {
        let f = parse_formula("# header\nforall p. # trailing\n  X a[p] # done\n").unwrap();
        assert_eq!(f.body, Ltl::next(atom("a", "p")));
    }

    #[test]
    fn body_with_external_scope() {
        let f = parse_body("X a[p]", ["p"]).unwrap();
        assert_eq!(f, Ltl::next(atom("a", "p")));
        assert!(parse_body("a[q]", ["p"]).is_err());
    }

    #[test]
    fn quantifier_inside_body_is_rejected() {
        assert!(matches!(
            parse_formula("forall p. a[p] & exists q. a[q]"),
            Err(ParseError::Syntax { .. })
        ));
    }
}
