use std::collections::{BTreeMap, HashSet};

use super::ast::*;
use super::builtins::builtin_arity;
use super::{DslError, Pos};
use crate::geom::ITERATION_CAP;
use crate::scene::PALETTE_NAMES;

/// A program that passed name, arity, recursion and cap checks.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidProgram {
    program: Program,
    macros: BTreeMap<String, MacroDef>,
}

impl ValidProgram {
    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn into_program(self) -> Program {
        self.program
    }

    pub(crate) fn macro_def(&self, name: &str) -> Option<&MacroDef> {
        self.macros.get(name)
    }

    pub fn free_points(&self) -> Vec<(String, f64, f64)> {
        self.program.free_points()
    }
}

#[derive(Clone, Copy, PartialEq)]
enum FrameKind {
    Root,
    Pass,
}

struct Frame {
    kind: FrameKind,
    names: HashSet<String>,
}

struct Scope {
    frames: Vec<Frame>,
}

impl Scope {
    fn new(initial: impl IntoIterator<Item = String>) -> Self {
        Scope {
            frames: vec![Frame {
                kind: FrameKind::Root,
                names: initial.into_iter().collect(),
            }],
        }
    }

    fn contains(&self, name: &str) -> bool {
        self.frames.iter().any(|f| f.names.contains(name))
    }

    fn define(&mut self, id: &Ident) -> Result<(), DslError> {
        let current = self.frames.last_mut().expect("root frame");
        if !current.names.insert(id.name.clone()) {
            return Err(DslError::Rebind {
                pos: id.pos,
                name: id.name.clone(),
            });
        }
        Ok(())
    }

    fn lookup(&self, name: &str, pos: Pos) -> Result<(), DslError> {
        if self.contains(name) {
            Ok(())
        } else {
            Err(DslError::Name {
                pos,
                name: name.to_string(),
            })
        }
    }
}

struct Resolver<'a> {
    macros: &'a BTreeMap<String, MacroDef>,
}

/// How many values a call yields when destructured, if it can be.
fn result_len(name: &str, macros: &BTreeMap<String, MacroDef>) -> Option<usize> {
    if let Some(m) = macros.get(name) {
        return Some(m.outputs.len());
    }
    match name {
        "triangle" | "midtri" | "circumscribe" | "medians" => Some(3),
        _ => None,
    }
}

impl Resolver<'_> {
    fn call(&self, call: &Call, scope: &Scope) -> Result<(), DslError> {
        let name = &call.name.name;
        let (expected, ok) = if let Some(m) = self.macros.get(name) {
            (m.params.len().to_string(), call.args.len() == m.params.len())
        } else if let Some(arity) = builtin_arity(name) {
            let text = arity.iter().map(usize::to_string).collect::<Vec<_>>().join(" or ");
            (text, arity.contains(&call.args.len()))
        } else {
            return Err(DslError::Name {
                pos: call.pos(),
                name: name.clone(),
            });
        };
        if !ok {
            return Err(DslError::Arity {
                pos: call.pos(),
                name: name.clone(),
                expected,
                got: call.args.len(),
            });
        }
        for arg in &call.args {
            if let ArgKind::Name(n) = &arg.kind {
                scope.lookup(n, arg.pos)?;
            }
        }
        Ok(())
    }

    fn block(&self, stmts: &[Stmt], scope: &mut Scope) -> Result<(), DslError> {
        for stmt in stmts {
            self.stmt(stmt, scope)?;
        }
        Ok(())
    }

    fn assign(&self, id: &Ident, scope: &mut Scope) -> Result<(), DslError> {
        let in_pass = scope.frames.last().is_some_and(|f| f.kind == FrameKind::Pass);
        let enclosing = scope.frames[..scope.frames.len() - 1]
            .iter()
            .any(|f| f.names.contains(&id.name));
        if enclosing && !in_pass {
            return Err(DslError::Rebind {
                pos: id.pos,
                name: id.name.clone(),
            });
        }
        scope.define(id)
    }

    fn stmt(&self, stmt: &Stmt, scope: &mut Scope) -> Result<(), DslError> {
        match &stmt.kind {
            StmtKind::FreePoint { name, .. } => self.assign(name, scope),
            StmtKind::Assign { targets, call } => {
                self.call(call, scope)?;
                let destructures = targets.parenthesized || targets.names.len() > 1;
                if destructures {
                    let want = result_len(&call.name.name, self.macros);
                    if want != Some(targets.names.len()) {
                        let yields = match want {
                            Some(n) => format!("{n} values"),
                            None => "a single value".to_string(),
                        };
                        return Err(DslError::Type {
                            pos: call.pos(),
                            message: format!(
                                "`{}` yields {yields}, cannot bind {} target(s)",
                                call.name.name,
                                targets.names.len()
                            ),
                        });
                    }
                }
                let mut seen = HashSet::new();
                for id in &targets.names {
                    if !seen.insert(&id.name) {
                        return Err(DslError::Rebind {
                            pos: id.pos,
                            name: id.name.clone(),
                        });
                    }
                }
                for id in &targets.names {
                    self.assign(id, scope)?;
                }
                Ok(())
            }
            StmtKind::MacroDef(_) => Ok(()),
            StmtKind::Iterate { count, body } => {
                if *count > ITERATION_CAP as u64 {
                    return Err(DslError::Cap {
                        pos: stmt.pos,
                        count: *count,
                        cap: ITERATION_CAP,
                    });
                }
                scope.frames.push(Frame {
                    kind: FrameKind::Pass,
                    names: HashSet::new(),
                });
                let result = self.block(body, scope);
                scope.frames.pop();
                result
            }
            StmtKind::Draw { target, attrs } => {
                match target {
                    DrawTarget::Call(c) => self.call(c, scope)?,
                    DrawTarget::Name(id) => scope.lookup(&id.name, id.pos)?,
                }
                check_attrs(attrs, true)
            }
            StmtKind::Style { attrs } => check_attrs(attrs, false),
        }
    }

    fn macro_body(&self, m: &MacroDef) -> Result<(), DslError> {
        let mut seen = HashSet::new();
        for p in &m.params {
            if !seen.insert(&p.name) {
                return Err(DslError::Rebind {
                    pos: p.pos,
                    name: p.name.clone(),
                });
            }
        }
        let mut scope = Scope::new(m.params.iter().map(|p| p.name.clone()));
        self.block(&m.body, &mut scope)?;
        for out in &m.outputs {
            if !scope.frames[0].names.contains(&out.name) {
                return Err(DslError::MissingOutput {
                    pos: out.pos,
                    name: m.name.name.clone(),
                    output: out.name.clone(),
                });
            }
        }
        Ok(())
    }
}

fn check_attrs(attrs: &[Attr], allow_label: bool) -> Result<(), DslError> {
    let mut seen = HashSet::new();
    for attr in attrs {
        let pos = attr.key.pos;
        let bad = |message: String| Err(DslError::Attr { pos, message });
        if !seen.insert(attr.key.name.as_str()) {
            return bad(format!("attribute `{}` given twice", attr.key.name));
        }
        match (attr.key.name.as_str(), &attr.value) {
            ("color", AttrValue::Word(w)) if w == "cycle" || PALETTE_NAMES.contains(&w.as_str()) => {}
            ("color", AttrValue::Text(t)) if is_hex_color(t) => {}
            ("color", _) => {
                return bad(format!(
                    "color must be one of {}, `cycle`, or a \"#rrggbb\" string",
                    PALETTE_NAMES.join(", ")
                ))
            }
            ("stroke", AttrValue::Number(w)) if *w > 0.0 => {}
            ("stroke", _) => return bad("stroke must be a positive number".into()),
            ("layer", AttrValue::Number(l)) if l.fract() == 0.0 && l.abs() <= i32::MAX as f64 => {}
            ("layer", _) => return bad("layer must be an integer".into()),
            ("label", AttrValue::Text(_) | AttrValue::Word(_)) if allow_label => {}
            ("label", _) if allow_label => return bad("label must be a name or a string".into()),
            (key, _) => return bad(format!("unknown attribute `{key}`")),
        }
    }
    Ok(())
}

pub(crate) fn is_hex_color(s: &str) -> bool {
    s.len() == 7 && s.starts_with('#') && s[1..].bytes().all(|b| b.is_ascii_hexdigit())
}

fn collect_calls<'a>(stmts: &'a [Stmt], out: &mut Vec<&'a Call>) {
    for s in stmts {
        match &s.kind {
            StmtKind::Assign { call, .. } => out.push(call),
            StmtKind::Draw {
                target: DrawTarget::Call(call),
                ..
            } => out.push(call),
            StmtKind::Iterate { body, .. } => collect_calls(body, out),
            _ => {}
        }
    }
}

fn find_cycle(macros: &BTreeMap<String, MacroDef>) -> Option<DslError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }
    fn visit(
        name: &str,
        macros: &BTreeMap<String, MacroDef>,
        marks: &mut BTreeMap<String, Mark>,
        path: &mut Vec<String>,
    ) -> Option<DslError> {
        match marks[name] {
            Mark::Done => return None,
            Mark::Active => {
                let start = path.iter().position(|n| n == name).expect("active is on path");
                let mut cycle = path[start..].to_vec();
                cycle.push(name.to_string());
                return Some(DslError::Recursion {
                    pos: macros[name].name.pos,
                    cycle,
                });
            }
            Mark::Fresh => {}
        }
        marks.insert(name.to_string(), Mark::Active);
        path.push(name.to_string());
        let mut calls = Vec::new();
        collect_calls(&macros[name].body, &mut calls);
        for call in calls {
            if macros.contains_key(&call.name.name) {
                if let Some(e) = visit(&call.name.name, macros, marks, path) {
                    return Some(e);
                }
            }
        }
        path.pop();
        marks.insert(name.to_string(), Mark::Done);
        None
    }
    let mut marks: BTreeMap<String, Mark> = macros.keys().map(|k| (k.clone(), Mark::Fresh)).collect();
    let mut order: Vec<&MacroDef> = macros.values().collect();
    order.sort_by_key(|m| m.name.pos);
    order
        .into_iter()
        .find_map(|m| visit(&m.name.name, macros, &mut marks, &mut Vec::new()))
}

/// Validates names, arities, macro structure and iteration caps.
pub fn resolve(program: Program) -> Result<ValidProgram, DslError> {
    let mut macros = BTreeMap::new();
    for stmt in &program.statements {
        if let StmtKind::MacroDef(m) = &stmt.kind {
            if macros.insert(m.name.name.clone(), m.clone()).is_some() {
                return Err(DslError::DuplicateMacro {
                    pos: m.name.pos,
                    name: m.name.name.clone(),
                });
            }
        }
    }
    if let Some(e) = find_cycle(&macros) {
        return Err(e);
    }
    let resolver = Resolver { macros: &macros };
    let mut defs: Vec<&MacroDef> = macros.values().collect();
    defs.sort_by_key(|m| m.name.pos);
    for m in defs {
        resolver.macro_body(m)?;
    }
    let mut scope = Scope::new([]);
    resolver.block(&program.statements, &mut scope)?;
    Ok(ValidProgram { program, macros })
}
