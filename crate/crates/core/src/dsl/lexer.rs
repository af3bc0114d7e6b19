use super::{DslError, Pos};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Number,
    Keyword,
    Punct,
    Str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Source text; for strings, the unescaped contents.
    pub lexeme: String,
    pub pos: Pos,
}

pub const KEYWORDS: [&str; 8] = ["point", "macro", "iterate", "draw", "style", "rad", "cw", "ccw"];

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn pos(&self) -> Pos {
        Pos::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.chars.clone();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_digits(&mut self, out: &mut String) -> usize {
        let mut n = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            out.push(c);
            self.bump();
            n += 1;
        }
        n
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Splits source text into tokens; `#` starts a comment running to end of line.
pub fn tokenize(source: &str) -> Result<Vec<Token>, DslError> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let pos = cur.pos();
        if c.is_whitespace() {
            cur.bump();
        } else if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
        } else if is_ident_start(c) {
            let mut s = String::new();
            while let Some(c) = cur.peek().filter(|c| is_ident_char(*c)) {
                s.push(c);
                cur.bump();
            }
            let kind = if KEYWORDS.contains(&s.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
            out.push(Token { kind, lexeme: s, pos });
        } else if c.is_ascii_digit()
            || (c == '.' && cur.peek2().is_some_and(|d| d.is_ascii_digit()))
            || (c == '-' && cur.peek2().is_some_and(|d| d.is_ascii_digit() || d == '.'))
        {
            out.push(lex_number(&mut cur, pos)?);
        } else if c == '"' {
            cur.bump();
            let mut s = String::new();
            loop {
                match cur.bump() {
                    None | Some('\n') => return Err(DslError::lex(pos, "unterminated string")),
                    Some('"') => break,
                    Some('\\') => match cur.bump() {
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        Some('n') => s.push('\n'),
                        _ => return Err(DslError::lex(cur.pos(), "invalid escape sequence")),
                    },
                    Some(ch) => s.push(ch),
                }
            }
            out.push(Token {
                kind: TokenKind::Str,
                lexeme: s,
                pos,
            });
        } else if c == '-' && cur.peek2() == Some('>') {
            cur.bump();
            cur.bump();
            out.push(Token {
                kind: TokenKind::Punct,
                lexeme: "->".into(),
                pos,
            });
        } else if "=(),{}[];".contains(c) {
            cur.bump();
            out.push(Token {
                kind: TokenKind::Punct,
                lexeme: c.to_string(),
                pos,
            });
        } else {
            return Err(DslError::lex(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn lex_number(cur: &mut Cursor<'_>, pos: Pos) -> Result<Token, DslError> {
    let mut s = String::new();
    if cur.peek() == Some('-') {
        s.push('-');
        cur.bump();
    }
    cur.take_digits(&mut s);
    if cur.peek() == Some('.') {
        s.push('.');
        cur.bump();
        if cur.take_digits(&mut s) == 0 {
            return Err(DslError::lex(pos, format!("malformed number `{s}`")));
        }
    }
    if matches!(cur.peek(), Some('e' | 'E')) {
        let next = cur.peek2();
        let signed = matches!(next, Some('+' | '-'));
        if signed || next.is_some_and(|d| d.is_ascii_digit()) {
            s.push('e');
            cur.bump();
            if signed {
                s.push(cur.bump().expect("peeked"));
            }
            if cur.take_digits(&mut s) == 0 {
                return Err(DslError::lex(pos, format!("malformed number `{s}`")));
            }
        } else {
            return Err(DslError::lex(pos, format!("malformed number `{s}e`")));
        }
    }
    if cur.peek() == Some('.') {
        return Err(DslError::lex(pos, format!("malformed number `{s}.`")));
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Token {
            kind: TokenKind::Number,
            lexeme: s,
            pos,
        }),
        _ => Err(DslError::lex(pos, format!("number `{s}` is out of range"))),
    }
}
