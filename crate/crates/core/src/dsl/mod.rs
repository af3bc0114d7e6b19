//! The construction language: free points, construction calls, macros and
//! bounded iteration, evaluated into a [`Scene`](crate::scene::Scene).
//!
//! ```
//! use trigonlab_core::dsl;
//!
//! let src = "A = point(0,0)\nB = point(4,0)\nC = point(0,4)\ndraw triangle(A,B,C)";
//! let program = dsl::compile(src).unwrap();
//! let scene = dsl::evaluate(&program, &Default::default()).unwrap();
//! assert_eq!(scene.count_kind("polygon"), 1);
//! ```

mod ast;
mod builtins;
mod eval;
mod format;
mod lexer;
mod parser;
mod resolve;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::geom::GeomError;

pub use ast::*;
pub use builtins::{builtin_arity, BUILTINS};
pub use eval::{evaluate, EvalFailure, Overrides, Value};
pub use format::format_program;
pub use lexer::{tokenize, Token, TokenKind, KEYWORDS};
pub use parser::parse;
pub use resolve::{resolve, ValidProgram};

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub const fn new(line: usize, column: usize) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("{pos}: lexical error: {message}")]
    Lex { pos: Pos, message: String },
    #[error("{pos}: expected {expected}, found {found}")]
    Parse { pos: Pos, expected: String, found: String },
    #[error("{pos}: undefined name `{name}`")]
    Name { pos: Pos, name: String },
    #[error("{pos}: `{name}` expects {expected} argument(s), got {got}")]
    Arity {
        pos: Pos,
        name: String,
        expected: String,
        got: usize,
    },
    #[error("{pos}: recursive macro cycle: {}", cycle.join(" -> "))]
    Recursion { pos: Pos, cycle: Vec<String> },
    #[error("{pos}: iteration count {count} exceeds the cap of {cap}")]
    Cap { pos: Pos, count: u64, cap: usize },
    #[error("{pos}: `{name}` is already assigned in this scope")]
    Rebind { pos: Pos, name: String },
    #[error("{pos}: macro `{name}` is defined more than once")]
    DuplicateMacro { pos: Pos, name: String },
    #[error("{pos}: macro `{name}` never assigns output `{output}`")]
    MissingOutput { pos: Pos, name: String, output: String },
    #[error("{pos}: {message}")]
    Attr { pos: Pos, message: String },
    #[error("{pos}: {message}")]
    Type { pos: Pos, message: String },
    #[error("{pos}: {source}")]
    Eval { pos: Pos, source: GeomError },
    #[error("override names `{name}`, which is not a top-level free point")]
    UnknownOverride { name: String },
    #[error("override for `{name}` is not a finite point")]
    InvalidOverride { name: String },
}

impl DslError {
    pub(crate) fn lex(pos: Pos, message: impl Into<String>) -> Self {
        DslError::Lex {
            pos,
            message: message.into(),
        }
    }

    pub fn pos(&self) -> Option<Pos> {
        use DslError::*;
        match self {
            Lex { pos, .. }
            | Parse { pos, .. }
            | Name { pos, .. }
            | Arity { pos, .. }
            | Recursion { pos, .. }
            | Cap { pos, .. }
            | Rebind { pos, .. }
            | DuplicateMacro { pos, .. }
            | MissingOutput { pos, .. }
            | Attr { pos, .. }
            | Type { pos, .. }
            | Eval { pos, .. } => Some(*pos),
            UnknownOverride { .. } | InvalidOverride { .. } => None,
        }
    }

    /// The message without the position prefix.
    pub fn message(&self) -> String {
        let full = self.to_string();
        match self.pos() {
            Some(pos) => full
                .strip_prefix(&format!("{pos}: "))
                .map(str::to_string)
                .unwrap_or(full),
            None => full,
        }
    }
}

/// Tokenizes, parses and resolves `source`.
pub fn compile(source: &str) -> Result<ValidProgram, DslError> {
    resolve(parse(&tokenize(source)?)?)
}
