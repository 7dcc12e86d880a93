//! S-expression syntax for magmoid terms (`.mterm` files).
//!
//! ```text
//! term := "e" | "(en" NAT ")" | "pi" | "(i" NAT NAT ")" | "(sym" IDENT NAT NAT ")"
//!       | "(prod" term term+ ")" | "(box" term term+ ")"
//! ```
//!
//! n-ary `prod`/`box` fold to the right. `;` starts a comment running to the
//! end of the line.

use super::{AtomSymbol, MagmoidTerm};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Word(&'a str),
}

#[derive(Debug, Clone)]
struct Token<'a> {
    tok: Tok<'a>,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line = match line.find(';') {
            Some(i) => &line[..i],
            None => line,
        };
        let mut chars = line.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            let column = line[..start].chars().count() + 1;
            let at = |tok| Token { tok, line: li + 1, column };
            if c.is_whitespace() {
                chars.next();
            } else if c == '(' {
                chars.next();
                out.push(at(Tok::Open));
            } else if c == ')' {
                chars.next();
                out.push(at(Tok::Close));
            } else {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' {
                        break;
                    }
                    end = i + c.len_utf8();
                    chars.next();
                }
                out.push(at(Tok::Word(&line[start..end])));
            }
        }
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn err_here(&self, msg: impl Into<String>) -> Error {
        let (line, column) = self
            .tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column));
        Error::syntax(line, column, msg)
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok<'a>> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn nat(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Word(w)) if w.bytes().all(|b| b.is_ascii_digit()) => {
                let w = *w;
                let v = w.parse().map_err(|_| self.err_here("number out of range"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err_here("expected a natural number")),
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) if is_ident(w) => {
                let w = w.to_string();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.err_here("expected a symbol name")),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.peek() {
            Some(Tok::Close) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err_here("expected `)`")),
        }
    }

    fn term(&mut self) -> Result<MagmoidTerm> {
        let here = self.pos;
        match self.next().map(|t| t.tok) {
            Some(Tok::Word("e")) => Ok(MagmoidTerm::UnitE(1)),
            Some(Tok::Word("pi")) => Ok(MagmoidTerm::Pi),
            Some(Tok::Word(w)) => {
                self.pos = here;
                Err(self.err_here(format!("unexpected `{w}`")))
            }
            Some(Tok::Close) => {
                self.pos = here;
                Err(self.err_here("unexpected `)`"))
            }
            None => Err(self.err_here("unexpected end of input")),
            Some(Tok::Open) => {
                let head = match self.next().map(|t| t.tok) {
                    Some(Tok::Word(w)) => w,
                    _ => {
                        self.pos -= 1;
                        return Err(self.err_here("expected en, i, sym, prod or box"));
                    }
                };
                let t = match head {
                    "en" => MagmoidTerm::UnitE(self.nat()?),
                    "i" => {
                        let p = self.nat()?;
                        MagmoidTerm::Iconst(p, self.nat()?)
                    }
                    "sym" => {
                        let name = self.ident()?;
                        let m = self.nat()?;
                        let n = self.nat()?;
                        MagmoidTerm::Atom(AtomSymbol::new(name, m, n))
                    }
                    "prod" | "box" => {
                        let mut args = vec![self.term()?];
                        while !matches!(self.peek(), Some(Tok::Close) | None) {
                            args.push(self.term()?);
                        }
                        if args.len() < 2 {
                            return Err(self.err_here(format!("`{head}` needs at least two operands")));
                        }
                        if head == "prod" {
                            MagmoidTerm::prod_all(args).expect("nonempty")
                        } else {
                            MagmoidTerm::sum_all(args)
                        }
                    }
                    other => {
                        self.pos -= 1;
                        return Err(self.err_here(format!("unknown form `{other}`")));
                    }
                };
                self.close()?;
                Ok(t)
            }
        }
    }
}

fn is_ident(w: &str) -> bool {
    let mut cs = w.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '\''))
}

/// Parses one term. Only the syntax is checked; use [`parse_term_checked`]
/// to also validate ranks.
pub fn parse_term(text: &str) -> Result<MagmoidTerm> {
    let tokens = tokenize(text);
    let lines = text.lines().count().max(1);
    let last_col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: (lines, last_col),
    };
    let t = p.term()?;
    if p.pos < p.tokens.len() {
        return Err(p.err_here("trailing input after term"));
    }
    Ok(t)
}

/// [`parse_term`] followed by rank validation.
pub fn parse_term_checked(text: &str) -> Result<MagmoidTerm> {
    let t = parse_term(text)?;
    t.rank()?;
    Ok(t)
}

pub fn print_term(t: &MagmoidTerm) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &MagmoidTerm, out: &mut String) {
    match t {
        MagmoidTerm::UnitE(1) => out.push('e'),
        MagmoidTerm::UnitE(n) => out.push_str(&format!("(en {n})")),
        MagmoidTerm::Pi => out.push_str("pi"),
        MagmoidTerm::Iconst(p, q) => out.push_str(&format!("(i {p} {q})")),
        MagmoidTerm::Atom(s) => {
            out.push_str(&format!("(sym {} {} {})", s.name, s.rank.m, s.rank.n));
        }
        MagmoidTerm::Prod(..) | MagmoidTerm::SumBox(..) => {
            let is_prod = matches!(t, MagmoidTerm::Prod(..));
            out.push_str(if is_prod { "(prod" } else { "(box" });
            // flatten the right spine so n-ary input prints back as written
            let mut cur = t;
            loop {
                match (cur, is_prod) {
                    (MagmoidTerm::Prod(a, b), true) | (MagmoidTerm::SumBox(a, b), false) => {
                        out.push(' ');
                        write_term(a, out);
                        cur = b;
                    }
                    _ => {
                        out.push(' ');
                        write_term(cur, out);
                        break;
                    }
                }
            }
            out.push(')');
        }
    }
}
