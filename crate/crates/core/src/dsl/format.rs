use std::fmt::Write;

use super::ast::*;
use crate::geom::Orientation;

fn ident_list(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn call(c: &Call) -> String {
    let args: Vec<String> = c
        .args
        .iter()
        .map(|a| match &a.kind {
            ArgKind::Name(n) => n.clone(),
            ArgKind::Number { value, radians: false } => format!("{value}"),
            ArgKind::Number { value, radians: true } => format!("{value} rad"),
            ArgKind::Orientation(Orientation::Clockwise) => "cw".into(),
            ArgKind::Orientation(Orientation::Counterclockwise) => "ccw".into(),
        })
        .collect();
    format!("{}({})", c.name.name, args.join(", "))
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn attrs(list: &[Attr]) -> String {
    let items: Vec<String> = list
        .iter()
        .map(|a| {
            let v = match &a.value {
                AttrValue::Word(w) => w.clone(),
                AttrValue::Number(n) => format!("{n}"),
                AttrValue::Text(t) => quote(t),
            };
            format!("{}={v}", a.key.name)
        })
        .collect();
    format!("[{}]", items.join(", "))
}

fn block(out: &mut String, stmts: &[Stmt], depth: usize) {
    for s in stmts {
        let pad = "  ".repeat(depth);
        let _ = match &s.kind {
            StmtKind::FreePoint { name, x, y } => writeln!(out, "{pad}{} = point({x}, {y})", name.name),
            StmtKind::Assign { targets, call: c } => {
                let lhs = if targets.parenthesized {
                    format!("({})", ident_list(&targets.names))
                } else {
                    ident_list(&targets.names)
                };
                writeln!(out, "{pad}{lhs} = {}", call(c))
            }
            StmtKind::MacroDef(m) => {
                let _ = writeln!(
                    out,
                    "{pad}macro {}({}) -> ({}) {{",
                    m.name.name,
                    ident_list(&m.params),
                    ident_list(&m.outputs)
                );
                block(out, &m.body, depth + 1);
                writeln!(out, "{pad}}}")
            }
            StmtKind::Iterate { count, body } => {
                let _ = writeln!(out, "{pad}iterate {count} {{");
                block(out, body, depth + 1);
                writeln!(out, "{pad}}}")
            }
            StmtKind::Draw { target, attrs: a } => {
                let what = match target {
                    DrawTarget::Call(c) => call(c),
                    DrawTarget::Name(id) => id.name.clone(),
                };
                if a.is_empty() {
                    writeln!(out, "{pad}draw {what}")
                } else {
                    writeln!(out, "{pad}draw {what} {}", attrs(a))
                }
            }
            StmtKind::Style { attrs: a } => writeln!(out, "{pad}style {}", attrs(a)),
        };
    }
}

/// Canonical source text: two-space indent, one statement per line.
pub fn format_program(program: &Program) -> String {
    let mut out = String::new();
    block(&mut out, &program.statements, 0);
    out
}
