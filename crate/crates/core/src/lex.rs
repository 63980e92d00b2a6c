//! Tokenizer shared by the logic and algebra query syntaxes.

use crate::error::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Number(String),
    /// `'literal'`, without the quotes.
    Quoted(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Colon,
    Amp,
    Bang,
    Tilde,
    Plus,
    Minus,
    /// `|x|`
    Join,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Number(s) => format!("number `{s}`"),
            TokenKind::Quoted(s) => format!("literal '{s}'"),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Dot => "`.`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Amp => "`&`".into(),
            TokenKind::Bang => "`!`".into(),
            TokenKind::Tilde => "`~`".into(),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Join => "`|x|`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub offset: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut tokens = Vec::new();
    let bytes = src.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = src[pos..].chars().next().unwrap();
        if c.is_whitespace() {
            pos += c.len_utf8();
            continue;
        }
        let start = pos;
        let single = match c {
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '[' => Some(TokenKind::LBracket),
            ']' => Some(TokenKind::RBracket),
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            ',' => Some(TokenKind::Comma),
            '.' => Some(TokenKind::Dot),
            ':' => Some(TokenKind::Colon),
            '&' => Some(TokenKind::Amp),
            '!' => Some(TokenKind::Bang),
            '~' => Some(TokenKind::Tilde),
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            _ => None,
        };
        let kind = if let Some(kind) = single {
            pos += 1;
            kind
        } else if c == '|' {
            if src[pos..].starts_with("|x|") {
                pos += 3;
                TokenKind::Join
            } else {
                return Err(SyntaxError::new(pos, "expected `|x|`"));
            }
        } else if c == '\'' {
            let body = pos + 1;
            match src[body..].find('\'') {
                Some(len) => {
                    pos = body + len + 1;
                    TokenKind::Quoted(src[body..body + len].to_string())
                }
                None => return Err(SyntaxError::new(pos, "unterminated quoted literal")),
            }
        } else if c.is_ascii_digit() {
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            TokenKind::Number(src[start..pos].to_string())
        } else if c.is_ascii_alphabetic() || c == '_' {
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            TokenKind::Ident(src[start..pos].to_string())
        } else {
            return Err(SyntaxError::new(pos, format!("unexpected character `{c}`")));
        };
        tokens.push(Token {
            kind,
            offset: start,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        offset: src.len(),
    });
    Ok(tokens)
}

/// A cursor over a token list.
pub struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, SyntaxError> {
        Ok(Cursor {
            tokens: tokenize(src)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub fn peek_kind(&self) -> &TokenKind {
        &self.peek().kind
    }

    pub fn peek_nth(&self, n: usize) -> &TokenKind {
        &self.tokens[(self.pos + n).min(self.tokens.len() - 1)].kind
    }

    pub fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, kind: &TokenKind) -> Result<Token, SyntaxError> {
        if self.peek_kind() == kind {
            Ok(self.advance())
        } else {
            Err(self.unexpected(&kind.describe()))
        }
    }

    pub fn unexpected(&self, wanted: &str) -> SyntaxError {
        let t = self.peek();
        SyntaxError::new(
            t.offset,
            format!("expected {wanted}, found {}", t.kind.describe()),
        )
    }

    pub fn expect_eof(&self) -> Result<(), SyntaxError> {
        match self.peek_kind() {
            TokenKind::Eof => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn algebra_tokens() {
        use TokenKind::*;
        assert_eq!(
            kinds("pc:[x,'a'] |x| ~q"),
            vec![
                Ident("pc".into()),
                Colon,
                LBracket,
                Ident("x".into()),
                Comma,
                Quoted("a".into()),
                RBracket,
                Join,
                Tilde,
                Ident("q".into()),
                Eof
            ]
        );
    }

    #[test]
    fn offsets_and_errors() {
        let toks = tokenize("  exists y").unwrap();
        assert_eq!(toks[0].offset, 2);
        assert_eq!(toks[1].offset, 9);
        assert_eq!(tokenize("p('a").unwrap_err().offset, 2);
        assert_eq!(tokenize("a | b").unwrap_err().offset, 2);
        assert_eq!(tokenize("a # b").unwrap_err().offset, 2);
    }
}
