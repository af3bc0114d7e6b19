use crate::geom::Orientation;

use super::Pos;

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub statements: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stmt {
    pub kind: StmtKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    FreePoint { name: Ident, x: f64, y: f64 },
    Assign { targets: Targets, call: Call },
    MacroDef(MacroDef),
    Iterate { count: u64, body: Vec<Stmt> },
    Draw { target: DrawTarget, attrs: Vec<Attr> },
    Style { attrs: Vec<Attr> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

/// `A` or `(A, B, C)`; a parenthesized list always destructures.
#[derive(Debug, Clone, PartialEq)]
pub struct Targets {
    pub names: Vec<Ident>,
    pub parenthesized: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Call {
    pub name: Ident,
    pub args: Vec<Arg>,
}

impl Call {
    pub fn pos(&self) -> Pos {
        self.name.pos
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arg {
    pub kind: ArgKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArgKind {
    Name(String),
    /// Plain numbers are degrees where an angle is expected.
    Number { value: f64, radians: bool },
    Orientation(Orientation),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MacroDef {
    pub name: Ident,
    pub params: Vec<Ident>,
    pub outputs: Vec<Ident>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DrawTarget {
    Call(Call),
    Name(Ident),
}

impl DrawTarget {
    pub fn pos(&self) -> Pos {
        match self {
            DrawTarget::Call(c) => c.pos(),
            DrawTarget::Name(i) => i.pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attr {
    pub key: Ident,
    pub value: AttrValue,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttrValue {
    Word(String),
    Number(f64),
    Text(String),
}

impl Program {
    /// Top-level free points with their literal coordinates, in source order.
    pub fn free_points(&self) -> Vec<(String, f64, f64)> {
        self.statements
            .iter()
            .filter_map(|s| match &s.kind {
                StmtKind::FreePoint { name, x, y } => Some((name.name.clone(), *x, *y)),
                _ => None,
            })
            .collect()
    }
}
