use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::ast::*;
use super::builtins::{call_builtin, ArgValue, Effects};
use super::resolve::ValidProgram;
use super::DslError;
use crate::constructions::MEDIAN_COLORS;
use crate::geom::{centroid, midpoint, Circle, Line, Orientation, Point, Segment, Triangle};
use crate::scene::{Primitive, Scene, Shape, CYCLE_COLORS, DEFAULT_COLOR};

/// Replacement coordinates for top-level free points, keyed by name.
pub type Overrides = BTreeMap<String, Point>;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Point(Point),
    Line(Line),
    Segment(Segment),
    Circle(Circle),
    Triangle(Triangle),
    Number { value: f64, radians: bool },
    Orientation(Orientation),
    Tuple(Vec<Value>),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Point(_) => "point",
            Value::Line(_) => "line",
            Value::Segment(_) => "segment",
            Value::Circle(_) => "circle",
            Value::Triangle(_) => "triangle",
            Value::Number { .. } => "number",
            Value::Orientation(_) => "orientation",
            Value::Tuple(_) => "tuple",
        }
    }

    pub(crate) fn describe(&self) -> String {
        match self {
            Value::Number { value, radians } => format!("{value}{}", if *radians { " rad" } else { "" }),
            other => other.type_name().to_string(),
        }
    }
}

/// Evaluation stopped early; `scene` holds everything drawn before the error.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalFailure {
    pub scene: Scene,
    pub error: DslError,
}

impl fmt::Display for EvalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.error.fmt(f)
    }
}

impl std::error::Error for EvalFailure {}

#[derive(Debug, Clone, Default)]
struct Style {
    color: Option<String>,
    stroke: Option<f64>,
    layer: i32,
}

impl Style {
    fn apply(&mut self, attrs: &[Attr]) {
        for attr in attrs {
            match (attr.key.name.as_str(), &attr.value) {
                ("color", AttrValue::Word(w) | AttrValue::Text(w)) => self.color = Some(w.clone()),
                ("stroke", AttrValue::Number(w)) => self.stroke = Some(*w),
                ("layer", AttrValue::Number(l)) => self.layer = *l as i32,
                _ => {}
            }
        }
    }
}

struct Frame {
    pass: bool,
    values: HashMap<String, Value>,
}

type Env = Vec<Frame>;

struct Evaluator<'a> {
    program: &'a ValidProgram,
    overrides: &'a Overrides,
    scene: Scene,
    effects: Effects,
    styles: Vec<Style>,
    passes: Vec<usize>,
}

fn lookup<'e>(env: &'e Env, name: &str) -> &'e Value {
    env.iter()
        .rev()
        .find_map(|f| f.values.get(name))
        .expect("names checked during resolution")
}

fn bind(env: &mut Env, name: &str, value: Value) {
    let last = env.len() - 1;
    if env[last].pass && !env[last].values.contains_key(name) {
        if let Some(frame) = env[..last].iter_mut().rev().find(|f| f.values.contains_key(name)) {
            frame.values.insert(name.to_string(), value);
            return;
        }
    }
    env[last].values.insert(name.to_string(), value);
}

fn arg_value(env: &Env, arg: &Arg) -> Value {
    match &arg.kind {
        ArgKind::Name(n) => lookup(env, n).clone(),
        ArgKind::Number { value, radians } => Value::Number {
            value: *value,
            radians: *radians,
        },
        ArgKind::Orientation(o) => Value::Orientation(*o),
    }
}

fn anchor(value: &Value) -> Option<Point> {
    match value {
        Value::Point(p) => Some(*p),
        Value::Segment(s) => Some(midpoint(s.p, s.q)),
        Value::Line(l) => Some(l.anchor()),
        Value::Circle(c) => Some(c.center()),
        Value::Triangle(t) => Some(centroid(t)),
        Value::Tuple(items) => items.first().and_then(anchor),
        Value::Number { .. } | Value::Orientation(_) => None,
    }
}

fn shape(value: &Value) -> Option<Shape> {
    Some(match value {
        Value::Point(p) => Shape::Point { at: *p },
        Value::Segment(s) => Shape::Segment { p: s.p, q: s.q },
        Value::Line(l) => Shape::Line {
            anchor: l.anchor(),
            direction: l.direction(),
        },
        Value::Circle(c) => Shape::Circle {
            center: c.center(),
            radius: c.radius(),
        },
        Value::Triangle(t) => Shape::Polygon {
            vertices: t.vertices().to_vec(),
        },
        _ => return None,
    })
}

impl Evaluator<'_> {
    fn style(&self) -> &Style {
        self.styles.last().expect("root style")
    }

    fn resolve_color(&self, requested: Option<&str>, index: Option<usize>) -> String {
        match requested {
            Some("cycle") => {
                let pass = self.passes.last().copied().unwrap_or(0);
                CYCLE_COLORS[pass % CYCLE_COLORS.len()].to_string()
            }
            Some(c) => c.to_string(),
            None => match index {
                Some(i) => MEDIAN_COLORS[i % MEDIAN_COLORS.len()].to_string(),
                None => DEFAULT_COLOR.to_string(),
            },
        }
    }

    fn call(&mut self, env: &Env, call: &Call) -> Result<Value, DslError> {
        let values: Vec<Value> = call.args.iter().map(|a| arg_value(env, a)).collect();
        if let Some(m) = self.program.macro_def(&call.name.name) {
            let params = m.params.iter().map(|p| p.name.clone()).zip(values).collect();
            let mut inner = vec![Frame {
                pass: false,
                values: params,
            }];
            let style = self.style().clone();
            self.styles.push(style);
            let result = self.block(&mut inner, &m.body);
            self.styles.pop();
            result?;
            let mut outs: Vec<Value> = m.outputs.iter().map(|o| lookup(&inner, &o.name).clone()).collect();
            return Ok(if outs.len() == 1 {
                outs.pop().expect("one output")
            } else {
                Value::Tuple(outs)
            });
        }
        let args: Vec<ArgValue<'_>> = values
            .iter()
            .zip(&call.args)
            .map(|(value, a)| ArgValue { value, pos: a.pos })
            .collect();
        call_builtin(&call.name.name, call.pos(), &args, &mut self.effects)
    }

    fn block(&mut self, env: &mut Env, stmts: &[Stmt]) -> Result<(), DslError> {
        for stmt in stmts {
            self.stmt(env, stmt)?;
        }
        Ok(())
    }

    fn stmt(&mut self, env: &mut Env, stmt: &Stmt) -> Result<(), DslError> {
        match &stmt.kind {
            StmtKind::FreePoint { name, x, y } => {
                let top_level = env.len() == 1 && self.styles.len() == 1;
                let p = match self.overrides.get(&name.name) {
                    Some(p) if top_level => *p,
                    _ => Point::new(*x, *y),
                };
                bind(env, &name.name, Value::Point(p));
            }
            StmtKind::Assign { targets, call } => {
                let value = self.call(env, call)?;
                let destructures = targets.parenthesized || targets.names.len() > 1;
                if destructures {
                    let parts = match value {
                        Value::Triangle(t) => t.vertices().into_iter().map(Value::Point).collect(),
                        Value::Tuple(items) => items,
                        other => vec![other],
                    };
                    for (id, v) in targets.names.iter().zip(parts) {
                        bind(env, &id.name, v);
                    }
                } else {
                    bind(env, &targets.names[0].name, value);
                }
            }
            StmtKind::MacroDef(_) => {}
            StmtKind::Iterate { count, body } => {
                let style = self.style().clone();
                for pass in 0..*count as usize {
                    env.push(Frame {
                        pass: true,
                        values: HashMap::new(),
                    });
                    self.styles.push(style.clone());
                    self.passes.push(pass);
                    let result = self.block(env, body);
                    self.passes.pop();
                    self.styles.pop();
                    env.pop();
                    result?;
                }
            }
            StmtKind::Draw { target, attrs } => {
                let (value, name) = match target {
                    DrawTarget::Call(c) => (self.call(env, c)?, None),
                    DrawTarget::Name(id) => (lookup(env, &id.name).clone(), Some(id.name.clone())),
                };
                self.draw(&value, name, attrs, target)?;
            }
            StmtKind::Style { attrs } => {
                self.styles.last_mut().expect("root style").apply(attrs);
            }
        }
        Ok(())
    }

    fn draw(&mut self, value: &Value, name: Option<String>, attrs: &[Attr], target: &DrawTarget) -> Result<(), DslError> {
        let mut style = self.style().clone();
        style.apply(attrs);
        let not_drawable = || DslError::Type {
            pos: target.pos(),
            message: format!("cannot draw a {}", value.type_name()),
        };
        let mut prims = Vec::new();
        match value {
            Value::Tuple(items) => {
                for (i, item) in items.iter().enumerate() {
                    let shape = shape(item).ok_or_else(not_drawable)?;
                    prims.push(Primitive {
                        shape,
                        color: self.resolve_color(style.color.as_deref(), Some(i)),
                        stroke: style.stroke,
                        layer: style.layer,
                        name: name.as_ref().map(|n| format!("{n}[{i}]")),
                    });
                }
            }
            other => prims.push(Primitive {
                shape: shape(other).ok_or_else(not_drawable)?,
                color: self.resolve_color(style.color.as_deref(), None),
                stroke: style.stroke,
                layer: style.layer,
                name: name.clone(),
            }),
        }
        let label = attrs.iter().find_map(|a| match (a.key.name.as_str(), &a.value) {
            ("label", AttrValue::Text(t) | AttrValue::Word(t)) => Some(t.clone()),
            _ => None,
        });
        if let (Some(text), Some(at)) = (label, anchor(value)) {
            prims.push(Primitive {
                shape: Shape::Label { at, text },
                color: self.resolve_color(style.color.as_deref(), None),
                stroke: None,
                layer: style.layer,
                name: None,
            });
        }
        self.scene.primitives.extend(prims);
        Ok(())
    }
}

fn check_overrides(program: &ValidProgram, overrides: &Overrides) -> Result<(), DslError> {
    let free: HashSet<String> = program.free_points().into_iter().map(|(n, _, _)| n).collect();
    for (name, p) in overrides {
        if !free.contains(name) {
            return Err(DslError::UnknownOverride { name: name.clone() });
        }
        if !p.is_finite() {
            return Err(DslError::InvalidOverride { name: name.clone() });
        }
    }
    Ok(())
}

/// Runs `program`, replacing top-level free points named in `overrides`.
pub fn evaluate(program: &ValidProgram, overrides: &Overrides) -> Result<Scene, EvalFailure> {
    if let Err(error) = check_overrides(program, overrides) {
        return Err(EvalFailure {
            scene: Scene::default(),
            error,
        });
    }
    let mut ev = Evaluator {
        program,
        overrides,
        scene: Scene::default(),
        effects: Effects::default(),
        styles: vec![Style::default()],
        passes: Vec::new(),
    };
    let mut env = vec![Frame {
        pass: false,
        values: HashMap::new(),
    }];
    let result = ev.block(&mut env, &program.program().statements);
    let mut scene = ev.scene;
    scene.focus = ev.effects.focus;
    match result {
        Ok(()) => Ok(scene),
        Err(error) => Err(EvalFailure { scene, error }),
    }
}
