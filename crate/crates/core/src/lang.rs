//! Text format for permutation expressions.
//!
//! ```text
//! expr   := term {"*" term}
//! term   := "[" expr "," expr "]" | factor ["^" exponent]
//! exponent := int | "{" int "}" | "{" expr "}"      (braced expr = conjugation)
//! factor := primary {"'"}
//! primary := atom | "1" | cycle {cycle} | "(" expr ")"
//! cycle  := "(" nat nat {nat} ")"
//! atom   := name | name "[" nat "]"
//! ```
//!
//! Juxtaposed cycles form a single finite permutation, applied left to
//! right. `1` is the identity. Negative powers print in braces, `z^{-1}`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::{AtomRegistry, FinPerm, PermExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: expected {expected}")]
    Syntax { pos: usize, expected: &'static str },
    #[error("unknown atom `{name}` at {pos}")]
    UnknownAtom { pos: usize, name: String },
    #[error("malformed cycle at {pos}")]
    MalformedCycle { pos: usize },
    #[error("number out of range at {pos}")]
    Number { pos: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("atom `{0}` is not registered")]
pub struct UnregisteredAtom(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = s[start..i].parse().map_err(|_| ParseError::Number { pos: start })?;
            out.push((start, Tok::Nat(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "*^{}[](),'-".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                pos: i,
                expected: "a token",
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    registry: &'a AtomRegistry,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos(),
                expected,
            })
        }
    }

    fn nat(&mut self) -> Option<u64> {
        if let Some(Tok::Nat(n)) = self.peek() {
            let n = *n;
            self.at += 1;
            Some(n)
        } else {
            None
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let pos = self.pos();
        let n = self.nat().ok_or(ParseError::Syntax {
            pos,
            expected: "an integer",
        })?;
        let n = i64::try_from(n).map_err(|_| ParseError::Number { pos })?;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<PermExpr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat('*') {
            terms.push(self.term()?);
        }
        Ok(PermExpr::product(terms))
    }

    fn term(&mut self) -> Result<PermExpr, ParseError> {
        if self.eat('[') {
            let a = self.expr()?;
            self.expect(',', "`,` in commutator")?;
            let b = self.expr()?;
            self.expect(']', "`]` closing commutator")?;
            return Ok(a.comm(b));
        }
        let base = self.factor()?;
        if !self.eat('^') {
            return Ok(base);
        }
        if self.eat('{') {
            let braced_int = matches!(self.peek(), Some(Tok::Nat(_)))
                || (self.peek() == Some(&Tok::Sym('-')) && matches!(self.peek2(), Some(Tok::Nat(_))));
            // `{1}` alone is a power; `{1*x}` is a conjugation by an expression.
            let result = if braced_int && !self.nat_starts_expr() {
                base.pow(self.int()?)
            } else {
                base.conj(self.expr()?)
            };
            self.expect('}', "`}`")?;
            Ok(result)
        } else {
            Ok(base.pow(self.int()?))
        }
    }

    /// A leading `1` inside braces that continues as an expression.
    fn nat_starts_expr(&self) -> bool {
        self.peek() == Some(&Tok::Nat(1))
            && matches!(
                self.peek2(),
                Some(Tok::Sym('*')) | Some(Tok::Sym('\'')) | Some(Tok::Sym('^'))
            )
    }

    fn factor(&mut self) -> Result<PermExpr, ParseError> {
        let mut e = self.primary()?;
        while self.eat('\'') {
            e = e.inv();
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<PermExpr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let param = if self.peek() == Some(&Tok::Sym('[')) && matches!(self.peek2(), Some(Tok::Nat(_))) {
                    self.at += 1;
                    let n = self.nat().unwrap();
                    self.expect(']', "`]` closing atom parameter")?;
                    Some(n)
                } else {
                    None
                };
                self.registry
                    .resolve(&name, param)
                    .map(PermExpr::Atom)
                    .ok_or(ParseError::UnknownAtom { pos, name })
            }
            Some(Tok::Nat(1)) => {
                self.at += 1;
                Ok(PermExpr::identity())
            }
            Some(Tok::Sym('(')) => {
                if self.cycle_ahead() {
                    let mut f = FinPerm::identity();
                    while self.cycle_ahead() {
                        f = f.then(&self.cycle()?);
                    }
                    Ok(PermExpr::fin(f))
                } else {
                    self.at += 1;
                    let e = self.expr()?;
                    self.expect(')', "`)`")?;
                    Ok(e)
                }
            }
            _ => Err(ParseError::Syntax {
                pos,
                expected: "an atom, `1`, a cycle or `(`",
            }),
        }
    }

    /// `(` followed by a natural that is not a parenthesised identity.
    fn cycle_ahead(&self) -> bool {
        if self.peek() != Some(&Tok::Sym('(')) {
            return false;
        }
        match (self.toks.get(self.at + 1), self.toks.get(self.at + 2)) {
            (Some((_, Tok::Nat(1))), Some((_, Tok::Nat(_)))) => true,
            (Some((_, Tok::Nat(1))), _) => false,
            (Some((_, Tok::Nat(_))), _) => true,
            _ => false,
        }
    }

    fn cycle(&mut self) -> Result<FinPerm, ParseError> {
        let pos = self.pos();
        self.expect('(', "`(`")?;
        let mut pts = Vec::new();
        while let Some(n) = self.nat() {
            pts.push(n);
        }
        self.expect(')', "`)` closing cycle")?;
        FinPerm::cycle(&pts).map_err(|_| ParseError::MalformedCycle { pos })
    }
}

/// Parses `s`, resolving atom names against `registry`.
pub fn parse(s: &str, registry: &AtomRegistry) -> Result<PermExpr, ParseError> {
    let mut p = Parser {
        toks: lex(s)?,
        at: 0,
        end: s.len(),
        registry,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            expected: "end of input",
        });
    }
    Ok(e)
}

/// Canonical text of `e`. Single-factor products print as their factor.
pub fn print(e: &PermExpr) -> String {
    let mut s = String::new();
    write_expr(&mut s, e);
    s
}

/// Like [`print`], but rejects atoms that `registry` cannot resolve.
pub fn print_checked(e: &PermExpr, registry: &AtomRegistry) -> Result<String, UnregisteredAtom> {
    if let Some(a) = e.atoms().into_iter().find(|a| !registry.contains(a)) {
        return Err(UnregisteredAtom(format!("{a:?}")));
    }
    Ok(print(e))
}

fn write_expr(s: &mut String, e: &PermExpr) {
    match e {
        PermExpr::Prod(fs) if fs.len() >= 2 => {
            for (i, f) in fs.iter().enumerate() {
                if i > 0 {
                    s.push('*');
                }
                if matches!(f, PermExpr::Prod(g) if g.len() >= 2) {
                    s.push('(');
                    write_expr(s, f);
                    s.push(')');
                } else {
                    write_term(s, f);
                }
            }
        }
        PermExpr::Prod(fs) if fs.len() == 1 => write_expr(s, &fs[0]),
        _ => write_term(s, e),
    }
}

fn write_term(s: &mut String, e: &PermExpr) {
    match e {
        PermExpr::Pow(x, k) => {
            write_factor(s, x);
            if *k >= 0 {
                let _ = write!(s, "^{k}");
            } else {
                let _ = write!(s, "^{{{k}}}");
            }
        }
        PermExpr::Conj(x, y) => {
            write_factor(s, x);
            s.push_str("^{");
            let mut inner = String::new();
            write_expr(&mut inner, y);
            // A bare `{1}` would read back as a power.
            if inner == "1" {
                inner = "(1)".to_string();
            }
            s.push_str(&inner);
            s.push('}');
        }
        PermExpr::Comm(x, y) => {
            s.push('[');
            write_expr(s, x);
            s.push_str(", ");
            write_expr(s, y);
            s.push(']');
        }
        _ => write_factor(s, e),
    }
}

fn write_factor(s: &mut String, e: &PermExpr) {
    match e {
        PermExpr::Atom(a) => match a.param() {
            Some(n) => {
                let _ = write!(s, "{}[{}]", a.name(), n);
            }
            None => s.push_str(a.name()),
        },
        PermExpr::Fin(f) if f.is_identity() => s.push('1'),
        PermExpr::Fin(f) => {
            for c in f.cycles() {
                let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                let _ = write!(s, "({})", pts.join(" "));
            }
        }
        PermExpr::Inv(x) => {
            write_factor(s, x);
            s.push('\'');
        }
        PermExpr::Prod(fs) if fs.is_empty() => s.push('1'),
        PermExpr::Prod(fs) if fs.len() == 1 => write_factor(s, &fs[0]),
        _ => {
            s.push('(');
            write_expr(s, e);
            s.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::atoms::{tau, z};
    use crate::perm::Atom;
    use std::sync::Arc;

    fn reg() -> AtomRegistry {
        let mut r = AtomRegistry::standard();
        for name in ["w", "g0", "g1", "b", "p0"] {
            r.insert(Atom::new(name, None, Arc::new(crate::perm::atoms::ZRule)));
        }
        r.insert_family("p", |n| Atom::new("p", Some(n), Arc::new(crate::perm::atoms::ZRule)));
        r
    }

    fn atom(r: &AtomRegistry, n: &str) -> PermExpr {
        r.get(n).unwrap()
    }

    #[test]
    fn parses_nested_shapes() {
        let r = reg();
        assert_eq!(
            parse("(0 1)", &r).unwrap(),
            PermExpr::fin(FinPerm::transposition(0, 1).unwrap())
        );
        assert_eq!(
            parse("[g0, b^{w^2}]", &r).unwrap(),
            atom(&r, "g0").comm(atom(&r, "b").conj(atom(&r, "w").pow(2)))
        );
        assert_eq!(
            parse("tau^{z^3}", &r).unwrap(),
            PermExpr::atom(tau()).conj(PermExpr::atom(z()).pow(3))
        );
        assert_eq!(parse("z^{-1}", &r).unwrap(), PermExpr::atom(z()).pow(-1));
        assert_eq!(
            parse("p[4]", &r).unwrap(),
            PermExpr::Atom(r.resolve("p", Some(4)).unwrap())
        );
        assert_eq!(parse("1", &r).unwrap(), PermExpr::identity());
        assert_eq!(
            parse("(0 1)(2 3)", &r).unwrap(),
            PermExpr::fin(FinPerm::from_cycles(&[vec![0, 1], vec![2, 3]]).unwrap())
        );
    }

    #[test]
    fn prints_canonically() {
        let r = reg();
        assert_eq!(print(&PermExpr::fin(FinPerm::transposition(1, 0).unwrap())), "(0 1)");
        assert_eq!(
            print(&PermExpr::atom(tau()).conj(PermExpr::atom(z()).pow(1))),
            "tau^{z^1}"
        );
        let e = PermExpr::Prod(vec![atom(&r, "w"), atom(&r, "g0"), atom(&r, "g1")]);
        assert_eq!(print(&e), "w*g0*g1");
        assert_eq!(print(&PermExpr::atom(z()).pow(-2)), "z^{-2}");
    }

    #[test]
    fn errors_carry_positions() {
        let r = reg();
        assert_eq!(
            parse("tau*foo", &r),
            Err(ParseError::UnknownAtom {
                pos: 4,
                name: "foo".into()
            })
        );
        assert_eq!(parse("(1 1)", &r), Err(ParseError::MalformedCycle { pos: 0 }));
        assert_eq!(parse("(5)", &r), Err(ParseError::MalformedCycle { pos: 0 }));
        assert!(matches!(parse("tau*", &r), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("[tau z]", &r), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("tau)", &r), Err(ParseError::Syntax { pos: 3, .. })));
    }

    #[test]
    fn print_checked_rejects_foreign_atoms() {
        let r = AtomRegistry::standard();
        let foreign = reg().get("w").unwrap();
        assert!(print_checked(&foreign, &r).is_err());
        assert!(print_checked(&PermExpr::atom(tau()), &r).is_ok());
    }

    #[test]
    fn tricky_round_trips() {
        let r = reg();
        for s in [
            "(tau^{z^1})^{tau^{z^{-1}}}",
            "((z^2)^3)'",
            "1^2",
            "1'",
            "([tau, z])^{-1}",
            "tau*(z*w)",
            "(0 1 2)^{1*tau}",
            "tau^{1}",
            "tau^{(1)}",
        ] {
            let e = parse(s, &r).unwrap();
            assert_eq!(parse(&print(&e), &r).unwrap(), e, "{s}");
        }
    }
}
