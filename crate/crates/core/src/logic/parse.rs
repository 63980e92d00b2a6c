//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula     := "exists" var ("," ? var)* "." formula | conjunction
//! conjunction := unary ("&" unary)*
//! unary       := "!" unary | "exists" ... | primary
//! primary     := atom | "(" formula ")"
//! atom        := name "(" (term ("," term)*)? ")"
//! term        := var | "'" literal "'"
//! var, name   := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! `!` binds tighter than `&`, and `&` tighter than `exists`, whose scope
//! extends as far right as possible.

use crate::domain::Index;
use crate::error::SyntaxError;
use crate::lex::{Cursor, TokenKind};

use super::formula::{Formula, LogicTerm};

pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut cur = Cursor::new(src)?;
    let f = formula(&mut cur)?;
    cur.expect_eof()?;
    Ok(f)
}

fn is_keyword(cur: &Cursor) -> bool {
    matches!(cur.peek_kind(), TokenKind::Ident(s) if s == "exists")
}

fn formula(cur: &mut Cursor) -> Result<Formula, SyntaxError> {
    if is_keyword(cur) {
        quantified(cur)
    } else {
        conjunction(cur)
    }
}

fn quantified(cur: &mut Cursor) -> Result<Formula, SyntaxError> {
    cur.advance();
    let mut bound: Vec<Index> = Vec::new();
    loop {
        let offset = cur.peek().offset;
        let x = name(cur, "a variable")?;
        if bound.contains(&x) {
            return Err(SyntaxError::new(
                offset,
                format!("variable `{x}` bound twice"),
            ));
        }
        bound.push(x);
        cur.eat(&TokenKind::Comma);
        if cur.eat(&TokenKind::Dot) {
            break;
        }
    }
    let body = formula(cur)?;
    Ok(Formula::Exists {
        bound,
        body: Box::new(body),
    })
}

fn conjunction(cur: &mut Cursor) -> Result<Formula, SyntaxError> {
    let mut conjuncts = vec![unary(cur)?];
    while cur.eat(&TokenKind::Amp) {
        conjuncts.push(unary(cur)?);
    }
    Ok(Formula::conjunction(conjuncts))
}

fn unary(cur: &mut Cursor) -> Result<Formula, SyntaxError> {
    if cur.eat(&TokenKind::Bang) {
        return Ok(Formula::not(unary(cur)?));
    }
    if is_keyword(cur) {
        return quantified(cur);
    }
    if cur.eat(&TokenKind::LParen) {
        let f = formula(cur)?;
        cur.expect(&TokenKind::RParen)?;
        return Ok(f);
    }
    atom(cur)
}

fn atom(cur: &mut Cursor) -> Result<Formula, SyntaxError> {
    let predicate = name(cur, "a predicate symbol")?;
    cur.expect(&TokenKind::LParen)?;
    if cur.eat(&TokenKind::RParen) {
        return Ok(Formula::atom(predicate.as_str(), []));
    }
    let mut args = vec![term(cur)?];
    loop {
        match cur.peek_kind() {
            TokenKind::Comma => {
                cur.advance();
                args.push(term(cur)?);
            }
            TokenKind::RParen => {
                cur.advance();
                break;
            }
            _ => return Err(cur.unexpected("`,` or `)`")),
        }
    }
    Ok(Formula::Atom {
        predicate: predicate.to_string(),
        args,
    })
}

fn term(cur: &mut Cursor) -> Result<LogicTerm, SyntaxError> {
    if let TokenKind::Quoted(lit) = cur.peek_kind() {
        let lit = lit.clone();
        cur.advance();
        return Ok(LogicTerm::Const(lit));
    }
    name(cur, "a term").map(LogicTerm::Var)
}

/// A lowercase identifier other than `exists`.
fn name(cur: &mut Cursor, what: &str) -> Result<Index, SyntaxError> {
    let offset = cur.peek().offset;
    match cur.peek_kind().clone() {
        TokenKind::Ident(s) if s == "exists" => Err(SyntaxError::new(
            offset,
            format!("expected {what}, found keyword `exists`"),
        )),
        TokenKind::Ident(s) if s.starts_with(|c: char| c.is_ascii_lowercase()) => {
            cur.advance();
            Ok(Index::new(s))
        }
        TokenKind::Ident(s) => Err(SyntaxError::new(
            offset,
            format!(
                "`{s}` must start with a lowercase letter; constants are written quoted, as '{s}'"
            ),
        )),
        TokenKind::Number(s) => Err(SyntaxError::new(
            offset,
            format!("unquoted constant `{s}`; write '{s}'"),
        )),
        _ => Err(cur.unexpected(what)),
    }
}
