//! Concrete syntax for algebra expressions over the relations of an instance.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := factor ("&" factor)*
//! factor  := unary ("|x|" unary)*
//! unary   := "~" unary | postfix
//! postfix := primary (":" pattern)*
//! primary := name | "(" expr ")"
//!          | "project" "{" indexes "}" "(" expr ")"
//!          | "cyl" "{" indexes "}" "(" expr ")"
//! pattern := "[" terms "]" | "{" index ":" term ("," index ":" term)* "}"
//! ```
//!
//! A bracketed pattern lists terms in the attribute order the scheme
//! declares for a stored relation, and in sorted index order for any other
//! operand. Bare identifiers are indeterminates; quoted literals are ground.

use std::collections::BTreeSet;

use etr::lex::{Cursor, TokenKind};
use etr::{Error, Expr, FnMap, Index, Instance, Pattern, Result, Signature, SyntaxError, Term};

pub fn parse_algebra(text: &str, instance: &Instance) -> Result<Expr> {
    let mut p = Parser {
        cur: Cursor::new(text)?,
        instance,
    };
    let e = p.expr()?;
    p.cur.expect_eof()?;
    Ok(e)
}

struct Parser<'a> {
    cur: Cursor,
    instance: &'a Instance,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        loop {
            if self.cur.eat(&TokenKind::Plus) {
                left = Expr::Union(Box::new(left), Box::new(self.term()?));
            } else if self.cur.eat(&TokenKind::Minus) {
                left = Expr::Difference(Box::new(left), Box::new(self.term()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut left = self.factor()?;
        while self.cur.eat(&TokenKind::Amp) {
            left = Expr::Intersect(Box::new(left), Box::new(self.factor()?));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Expr> {
        let first = self.unary()?;
        if self.cur.peek_kind() != &TokenKind::Join {
            return Ok(first);
        }
        let mut parts = vec![first];
        while self.cur.eat(&TokenKind::Join) {
            parts.push(self.unary()?);
        }
        Ok(Expr::Join(parts))
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.cur.eat(&TokenKind::Tilde) {
            return Ok(self.unary()?.complement());
        }
        let mut e = self.primary()?;
        while self.cur.eat(&TokenKind::Colon) {
            e = self.pattern(e)?;
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr> {
        let tok = self.cur.peek().clone();
        match tok.kind {
            TokenKind::LParen => {
                self.cur.advance();
                let e = self.expr()?;
                self.cur.expect(&TokenKind::RParen)?;
                Ok(e)
            }
            TokenKind::Ident(ref name)
                if (name == "project" || name == "cyl")
                    && self.cur.peek_nth(1) == &TokenKind::LBrace =>
            {
                self.cur.advance();
                let indexes = self.index_list()?;
                self.cur.expect(&TokenKind::LParen)?;
                let input = self.expr()?;
                self.cur.expect(&TokenKind::RParen)?;
                if name == "project" {
                    Ok(input.project(indexes))
                } else {
                    let extension = self.cylinder_extension(&indexes, tok.offset)?;
                    Ok(input.cylinder(extension))
                }
            }
            TokenKind::Ident(name) => {
                self.cur.advance();
                if self.instance.extent(&name).is_none() {
                    return Err(Error::UnknownRelation(name));
                }
                Ok(Expr::base(name))
            }
            _ => Err(self
                .cur
                .unexpected("a relation name, `(`, `project` or `cyl`")
                .into()),
        }
    }

    fn index(&mut self) -> Result<Index> {
        match self.cur.peek_kind().clone() {
            TokenKind::Ident(s) | TokenKind::Number(s) => {
                self.cur.advance();
                Ok(Index::new(s))
            }
            _ => Err(self.cur.unexpected("an index").into()),
        }
    }

    fn index_list(&mut self) -> Result<Vec<Index>> {
        self.cur.expect(&TokenKind::LBrace)?;
        let mut out = Vec::new();
        if !self.cur.eat(&TokenKind::RBrace) {
            loop {
                out.push(self.index()?);
                if self.cur.eat(&TokenKind::RBrace) {
                    break;
                }
                self.cur.expect(&TokenKind::Comma)?;
            }
        }
        Ok(out)
    }

    fn cylinder_extension(&self, indexes: &[Index], offset: usize) -> Result<Signature> {
        indexes
            .iter()
            .map(|i| match self.instance.scheme().attribute_domain(i) {
                Some(d) => Ok((i.clone(), d.clone())),
                None => Err(
                    SyntaxError::new(offset, format!("`{i}` is not a declared attribute")).into(),
                ),
            })
            .collect()
    }

    fn pattern_term(&mut self) -> Result<Term> {
        let tok = self.cur.peek().clone();
        match tok.kind {
            TokenKind::Ident(s) | TokenKind::Number(s) => {
                self.cur.advance();
                Ok(Term::var(s))
            }
            TokenKind::Quoted(lit) => {
                self.cur.advance();
                let value = self
                    .instance
                    .scheme()
                    .registry()
                    .literal_value(&lit)
                    .map_err(|_| {
                        SyntaxError::new(tok.offset, format!("'{lit}' is not in any domain"))
                    })?;
                Ok(Term::Ground(value))
            }
            _ => Err(self.cur.unexpected("a variable or a quoted literal").into()),
        }
    }

    fn pattern(&mut self, input: Expr) -> Result<Expr> {
        let signature = input.signature(self.instance)?;
        let offset = self.cur.peek().offset;
        let mut entries = FnMap::new();
        if self.cur.eat(&TokenKind::LBracket) {
            let mut terms = Vec::new();
            if !self.cur.eat(&TokenKind::RBracket) {
                loop {
                    terms.push(self.pattern_term()?);
                    if self.cur.eat(&TokenKind::RBracket) {
                        break;
                    }
                    self.cur.expect(&TokenKind::Comma)?;
                }
            }
            let order = self.positional_order(&input, &signature);
            if order.len() != terms.len() {
                return Err(SyntaxError::new(
                    offset,
                    format!(
                        "pattern has {} terms but the operand has {} indexes",
                        terms.len(),
                        order.len()
                    ),
                )
                .into());
            }
            entries = order.into_iter().zip(terms).collect();
        } else if self.cur.eat(&TokenKind::LBrace) {
            let mut seen = BTreeSet::new();
            loop {
                let at = self.cur.peek().offset;
                let i = self.index()?;
                if !seen.insert(i.clone()) {
                    return Err(SyntaxError::new(at, format!("index `{i}` given twice")).into());
                }
                self.cur.expect(&TokenKind::Colon)?;
                entries.insert(i, self.pattern_term()?);
                if self.cur.eat(&TokenKind::RBrace) {
                    break;
                }
                self.cur.expect(&TokenKind::Comma)?;
            }
        } else {
            return Err(self.cur.unexpected("`[` or `{`").into());
        }
        Ok(input.filter(Pattern::infer(entries, &signature)?))
    }

    fn positional_order(&self, input: &Expr, signature: &Signature) -> Vec<Index> {
        if let Expr::Base(name) = input {
            if let Some(order) = self.instance.scheme().attribute_order(name) {
                return order.to_vec();
            }
        }
        signature.keys().cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use etr::Scheme;

    fn family() -> Instance {
        let scheme = Scheme::parse(
            "[domains]\nperson = [\"mary\", \"john\", \"alan\", \"joan\"]\n\
             [attributes]\nparent = \"person\"\nchild = \"person\"\n\
             [relations]\npc = [\"parent\", \"child\"]\n",
        )
        .unwrap();
        let mut inst = Instance::new(scheme).unwrap();
        let rows = "parent,child\nmary,john\njohn,alan\nmary,joan\n";
        inst.load_relation_from("pc", rows.as_bytes(), b',')
            .unwrap();
        inst
    }

    #[test]
    fn join_of_filters() {
        let inst = family();
        let e = parse_algebra("pc:[x,y] |x| pc:[y,z]", &inst).unwrap();
        let Expr::Join(parts) = &e else {
            panic!("{e:?}")
        };
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| matches!(p, Expr::Filter { .. })));
    }

    #[test]
    fn grandparent() {
        let inst = family();
        let e = parse_algebra("project{x,z}(pc:[x,y] |x| pc:[y,z])", &inst).unwrap();
        let r = e.evaluate(&inst).unwrap();
        assert_eq!(
            r.sorted_rows().1,
            vec![vec!["mary".to_string(), "alan".to_string()]]
        );
    }

    #[test]
    fn printed_form_parses_back() {
        let inst = family();
        for src in [
            "project{x,z}(pc:[x,y] |x| pc:[y,z])",
            "pc:{parent: 'mary', child: c}",
            "~pc - pc & pc + pc",
            "cyl{}(project{parent}(pc))",
            "(pc + pc):[a,b]:[b,a]",
        ] {
            let e = parse_algebra(src, &inst).unwrap();
            assert_eq!(
                parse_algebra(&e.to_string(), &inst).unwrap(),
                e,
                "{src} -> {e}"
            );
        }
    }

    #[test]
    fn precedence() {
        let inst = family();
        let e = parse_algebra("pc + pc & ~pc", &inst).unwrap();
        assert!(matches!(e, Expr::Union(_, ref r) if matches!(**r, Expr::Intersect(..))));
    }

    #[test]
    fn errors() {
        let inst = family();
        assert!(matches!(
            parse_algebra("nope", &inst),
            Err(Error::UnknownRelation(_))
        ));
        assert!(matches!(
            parse_algebra("pc:[x]", &inst),
            Err(Error::Syntax(_))
        ));
        assert!(matches!(
            parse_algebra("pc:['bob', x]", &inst),
            Err(Error::Syntax(_))
        ));
        assert!(matches!(
            parse_algebra("pc |x|", &inst),
            Err(Error::Syntax(_))
        ));
        assert!(matches!(
            parse_algebra("pc:{parent: x, parent: y}", &inst),
            Err(Error::Syntax(_))
        ));
        assert!(matches!(
            parse_algebra("cyl{zz}(pc)", &inst),
            Err(Error::Syntax(_))
        ));
        assert!(matches!(
            parse_algebra("pc & project{parent}(pc)", &inst)
                .unwrap()
                .evaluate(&inst),
            Err(Error::SignatureMismatch { .. })
        ));
    }
}
