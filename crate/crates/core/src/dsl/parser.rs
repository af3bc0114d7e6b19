//! Recursive-descent parser over the token stream.

use super::ast::*;
use super::lexer::{Token, TokenKind};
use super::{DslError, Pos};
use crate::geom::Orientation;

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.at)
    }

    fn peek_at(&self, offset: usize) -> Option<&'a Token> {
        self.tokens.get(self.at + offset)
    }

    fn end_pos(&self) -> Pos {
        self.tokens
            .last()
            .map(|t| Pos::new(t.pos.line, t.pos.column + t.lexeme.chars().count()))
            .unwrap_or(Pos::new(1, 1))
    }

    fn error(&self, expected: &str) -> DslError {
        match self.peek() {
            Some(t) => DslError::Parse {
                pos: t.pos,
                expected: expected.to_string(),
                found: format!("`{}`", t.lexeme),
            },
            None => DslError::Parse {
                pos: self.end_pos(),
                expected: expected.to_string(),
                found: "end of input".to_string(),
            },
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Punct && t.lexeme == p)
    }

    fn is_keyword(&self, k: &str) -> bool {
        self.peek().is_some_and(|t| t.kind == TokenKind::Keyword && t.lexeme == k)
    }

    fn expect_punct(&mut self, p: &str) -> Result<&'a Token, DslError> {
        if self.is_punct(p) {
            self.at += 1;
            Ok(&self.tokens[self.at - 1])
        } else {
            Err(self.error(&format!("`{p}`")))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<Ident, DslError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                self.at += 1;
                Ok(Ident {
                    name: t.lexeme.clone(),
                    pos: t.pos,
                })
            }
            _ => Err(self.error(what)),
        }
    }

    fn expect_number(&mut self) -> Result<f64, DslError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Number => {
                self.at += 1;
                Ok(t.lexeme.parse().expect("lexer validated number"))
            }
            _ => Err(self.error("number")),
        }
    }

    fn program(&mut self) -> Result<Program, DslError> {
        let statements = self.block_items(true)?;
        if self.peek().is_some() {
            return Err(self.error("statement"));
        }
        Ok(Program { statements })
    }

    /// Statements up to a closing brace or end of input.
    fn block_items(&mut self, top_level: bool) -> Result<Vec<Stmt>, DslError> {
        let mut out = Vec::new();
        loop {
            while self.is_punct(";") {
                self.at += 1;
            }
            match self.peek() {
                None => break,
                Some(t) if t.kind == TokenKind::Punct && t.lexeme == "}" => break,
                Some(_) => out.push(self.statement(top_level)?),
            }
        }
        Ok(out)
    }

    fn braced_body(&mut self) -> Result<Vec<Stmt>, DslError> {
        self.expect_punct("{")?;
        let body = self.block_items(false)?;
        self.expect_punct("}")?;
        Ok(body)
    }

    fn statement(&mut self, top_level: bool) -> Result<Stmt, DslError> {
        let tok = self.peek().expect("caller checked");
        let pos = tok.pos;
        let kind = match (tok.kind, tok.lexeme.as_str()) {
            (TokenKind::Keyword, "macro") => {
                if !top_level {
                    return Err(DslError::Parse {
                        pos,
                        expected: "statement (macros may only be defined at top level)".into(),
                        found: "`macro`".into(),
                    });
                }
                self.at += 1;
                StmtKind::MacroDef(self.macro_def()?)
            }
            (TokenKind::Keyword, "iterate") => {
                self.at += 1;
                let count = self.iteration_count()?;
                let body = self.braced_body()?;
                StmtKind::Iterate { count, body }
            }
            (TokenKind::Keyword, "draw") => {
                self.at += 1;
                let target = if self.peek_at(1).is_some_and(|t| t.lexeme == "(") {
                    DrawTarget::Call(self.call()?)
                } else {
                    DrawTarget::Name(self.expect_ident("call or name to draw")?)
                };
                let attrs = if self.is_punct("[") { self.attrs()? } else { Vec::new() };
                StmtKind::Draw { target, attrs }
            }
            (TokenKind::Keyword, "style") => {
                self.at += 1;
                StmtKind::Style { attrs: self.attrs()? }
            }
            (TokenKind::Punct, "(") => {
                self.at += 1;
                let mut names = vec![self.expect_ident("name")?];
                while self.is_punct(",") {
                    self.at += 1;
                    names.push(self.expect_ident("name")?);
                }
                self.expect_punct(")")?;
                self.expect_punct("=")?;
                let call = self.call()?;
                StmtKind::Assign {
                    targets: Targets {
                        names,
                        parenthesized: true,
                    },
                    call,
                }
            }
            (TokenKind::Ident, _) => {
                let name = self.expect_ident("name")?;
                self.expect_punct("=")?;
                if self.is_keyword("point") {
                    self.at += 1;
                    self.expect_punct("(")?;
                    let x = self.expect_number()?;
                    self.expect_punct(",")?;
                    let y = self.expect_number()?;
                    self.expect_punct(")")?;
                    StmtKind::FreePoint { name, x, y }
                } else {
                    let call = self.call()?;
                    StmtKind::Assign {
                        targets: Targets {
                            names: vec![name],
                            parenthesized: false,
                        },
                        call,
                    }
                }
            }
            _ => return Err(self.error("statement")),
        };
        Ok(Stmt { kind, pos })
    }

    fn iteration_count(&mut self) -> Result<u64, DslError> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Number && t.lexeme.bytes().all(|b| b.is_ascii_digit()) => {
                self.at += 1;
                t.lexeme.parse().map_err(|_| DslError::Parse {
                    pos: t.pos,
                    expected: "iteration count".into(),
                    found: format!("`{}`", t.lexeme),
                })
            }
            _ => Err(self.error("number (non-negative integer iteration count)")),
        }
    }

    fn macro_def(&mut self) -> Result<MacroDef, DslError> {
        let name = self.expect_ident("macro name")?;
        self.expect_punct("(")?;
        let params = self.ident_list(")")?;
        self.expect_punct(")")?;
        self.expect_punct("->")?;
        self.expect_punct("(")?;
        let outputs = self.ident_list(")")?;
        if outputs.is_empty() {
            return Err(self.error("at least one output name"));
        }
        self.expect_punct(")")?;
        let body = self.braced_body()?;
        Ok(MacroDef {
            name,
            params,
            outputs,
            body,
        })
    }

    fn ident_list(&mut self, close: &str) -> Result<Vec<Ident>, DslError> {
        let mut out = Vec::new();
        if self.is_punct(close) {
            return Ok(out);
        }
        out.push(self.expect_ident("name")?);
        while self.is_punct(",") {
            self.at += 1;
            out.push(self.expect_ident("name")?);
        }
        Ok(out)
    }

    fn call(&mut self) -> Result<Call, DslError> {
        let name = self.expect_ident("function or macro name")?;
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if !self.is_punct(")") {
            args.push(self.arg()?);
            while self.is_punct(",") {
                self.at += 1;
                args.push(self.arg()?);
            }
        }
        self.expect_punct(")")?;
        Ok(Call { name, args })
    }

    fn arg(&mut self) -> Result<Arg, DslError> {
        let Some(t) = self.peek() else {
            return Err(self.error("argument"));
        };
        let kind = match (t.kind, t.lexeme.as_str()) {
            (TokenKind::Ident, name) => ArgKind::Name(name.to_string()),
            (TokenKind::Keyword, "cw") => ArgKind::Orientation(Orientation::Clockwise),
            (TokenKind::Keyword, "ccw") => ArgKind::Orientation(Orientation::Counterclockwise),
            (TokenKind::Number, lexeme) => {
                let value = lexeme.parse().expect("lexer validated number");
                let radians = self.peek_at(1).is_some_and(|n| n.kind == TokenKind::Keyword && n.lexeme == "rad");
                if radians {
                    self.at += 1;
                }
                ArgKind::Number { value, radians }
            }
            _ => return Err(self.error("argument (name, number, `cw` or `ccw`)")),
        };
        self.at += 1;
        Ok(Arg { kind, pos: t.pos })
    }

    fn attrs(&mut self) -> Result<Vec<Attr>, DslError> {
        self.expect_punct("[")?;
        let mut out = vec![self.attr()?];
        while self.is_punct(",") {
            self.at += 1;
            out.push(self.attr()?);
        }
        self.expect_punct("]")?;
        Ok(out)
    }

    fn attr(&mut self) -> Result<Attr, DslError> {
        let key = self.expect_ident("attribute name")?;
        self.expect_punct("=")?;
        let value = match self.peek() {
            Some(t) if matches!(t.kind, TokenKind::Ident | TokenKind::Keyword) => AttrValue::Word(t.lexeme.clone()),
            Some(t) if t.kind == TokenKind::Number => AttrValue::Number(t.lexeme.parse().expect("validated")),
            Some(t) if t.kind == TokenKind::Str => AttrValue::Text(t.lexeme.clone()),
            _ => return Err(self.error("attribute value")),
        };
        self.at += 1;
        Ok(Attr { key, value })
    }
}

/// Parses a token stream into a [`Program`].
pub fn parse(tokens: &[Token]) -> Result<Program, DslError> {
    Parser { tokens, at: 0 }.program()
}
