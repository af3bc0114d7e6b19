use super::eval::Value;
use super::{DslError, Pos};
use crate::constructions::{
    brocard_point_oriented, circumscribe_similar, euler_data, medial_triangle, median_segments,
    vertex_circle_oriented,
};
use crate::geom::{self, Angle, GeomError, Line, Orientation, Point, Segment, Triangle};

/// Built-in names with their accepted argument counts.
pub const BUILTINS: [(&str, &[usize]); 15] = [
    ("midpoint", &[2]),
    ("line", &[2]),
    ("segment", &[2]),
    ("triangle", &[3]),
    ("intersect", &[2]),
    ("circle3", &[3]),
    ("midtri", &[1, 3]),
    ("medians", &[1]),
    ("circumscribe", &[2, 3]),
    ("vertexcircle", &[3, 4]),
    ("brocard", &[1, 2]),
    ("centroid", &[1]),
    ("circumcenter", &[1]),
    ("orthocenter", &[1]),
    ("eulerline", &[1]),
];

pub fn builtin_arity(name: &str) -> Option<&'static [usize]> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, a)| *a)
}

/// A call argument together with where it appeared.
pub(crate) struct ArgValue<'a> {
    pub value: &'a Value,
    pub pos: Pos,
}

fn type_error(arg: &ArgValue<'_>, expected: &str) -> DslError {
    DslError::Type {
        pos: arg.pos,
        message: format!("expected {expected}, found {}", arg.value.type_name()),
    }
}

fn point(arg: &ArgValue<'_>) -> Result<Point, DslError> {
    match arg.value {
        Value::Point(p) => Ok(*p),
        _ => Err(type_error(arg, "a point")),
    }
}

fn triangle_arg(arg: &ArgValue<'_>) -> Result<Triangle, DslError> {
    match arg.value {
        Value::Triangle(t) => Ok(*t),
        _ => Err(type_error(arg, "a triangle")),
    }
}

fn line_like(arg: &ArgValue<'_>) -> Result<Line, GeomError> {
    match arg.value {
        Value::Line(l) => Ok(*l),
        Value::Segment(s) => geom::line_through(s.p, s.q),
        _ => unreachable!("checked by caller"),
    }
}

fn angle(arg: &ArgValue<'_>) -> Result<Angle, DslError> {
    match arg.value {
        Value::Number { value, radians: true } => Ok(Angle::from_radians(*value)),
        Value::Number { value, radians: false } => Ok(Angle::from_degrees(*value)),
        _ => Err(type_error(arg, "an angle")),
    }
}

fn orientation(arg: Option<&ArgValue<'_>>) -> Result<Orientation, DslError> {
    match arg {
        None => Ok(Orientation::Clockwise),
        Some(ArgValue {
            value: Value::Orientation(o),
            ..
        }) => Ok(*o),
        Some(a) => Err(type_error(a, "`cw` or `ccw`")),
    }
}

fn side_index(arg: &ArgValue<'_>) -> Result<usize, DslError> {
    match arg.value {
        Value::Number { value, radians: false } if value.fract() == 0.0 && *value >= 0.0 && *value < 3.0 => {
            Ok(*value as usize)
        }
        _ => Err(DslError::Type {
            pos: arg.pos,
            message: format!("expected a side index 0, 1 or 2, found {}", arg.value.describe()),
        }),
    }
}

/// Side effects a built-in asks the evaluator to record.
#[derive(Default)]
pub(crate) struct Effects {
    pub focus: Option<Point>,
}

/// Runs built-in `name`; arity has already been validated.
pub(crate) fn call_builtin(
    name: &str,
    pos: Pos,
    args: &[ArgValue<'_>],
    effects: &mut Effects,
) -> Result<Value, DslError> {
    let at = |e: GeomError| DslError::Eval { pos, source: e };
    let value = match name {
        "midpoint" => Value::Point(geom::midpoint(point(&args[0])?, point(&args[1])?)),
        "line" => Value::Line(geom::line_through(point(&args[0])?, point(&args[1])?).map_err(at)?),
        "segment" => {
            let (p, q) = (point(&args[0])?, point(&args[1])?);
            if p == q {
                return Err(at(GeomError::DegenerateSegment));
            }
            Value::Segment(Segment::new(p, q))
        }
        "triangle" => Value::Triangle(
            Triangle::new(point(&args[0])?, point(&args[1])?, point(&args[2])?).map_err(at)?,
        ),
        "intersect" => {
            for a in args {
                if !matches!(a.value, Value::Line(_) | Value::Segment(_)) {
                    return Err(type_error(a, "a line or segment"));
                }
            }
            let l1 = line_like(&args[0]).map_err(at)?;
            let l2 = line_like(&args[1]).map_err(at)?;
            Value::Point(geom::intersect_lines(&l1, &l2).map_err(at)?)
        }
        "circle3" => {
            Value::Circle(geom::circle_through(point(&args[0])?, point(&args[1])?, point(&args[2])?).map_err(at)?)
        }
        "midtri" => {
            let t = if args.len() == 1 {
                triangle_arg(&args[0])?
            } else {
                Triangle::new(point(&args[0])?, point(&args[1])?, point(&args[2])?).map_err(at)?
            };
            Value::Triangle(medial_triangle(&t))
        }
        "medians" => Value::Tuple(
            median_segments(&triangle_arg(&args[0])?)
                .into_iter()
                .map(Value::Segment)
                .collect(),
        ),
        "circumscribe" => {
            let t = triangle_arg(&args[0])?;
            let theta = angle(&args[1])?;
            let orient = orientation(args.get(2))?;
            let out = circumscribe_similar(&t, theta, orient).map_err(at)?;
            if effects.focus.is_none() {
                effects.focus = brocard_point_oriented(&t, orient).ok();
            }
            Value::Triangle(out)
        }
        "vertexcircle" => {
            let t = triangle_arg(&args[0])?;
            let side = side_index(&args[1])?;
            let theta = angle(&args[2])?;
            let orient = orientation(args.get(3))?;
            Value::Circle(vertex_circle_oriented(&t, side, theta, orient).map_err(at)?)
        }
        "brocard" => {
            let t = triangle_arg(&args[0])?;
            let orient = orientation(args.get(1))?;
            Value::Point(brocard_point_oriented(&t, orient).map_err(at)?)
        }
        "centroid" => Value::Point(geom::centroid(&triangle_arg(&args[0])?)),
        "circumcenter" => Value::Point(geom::circumcenter(&triangle_arg(&args[0])?).map_err(at)?),
        "orthocenter" => Value::Point(geom::orthocenter(&triangle_arg(&args[0])?).map_err(at)?),
        "eulerline" => Value::Line(euler_data(&triangle_arg(&args[0])?).map_err(at)?.line),
        other => unreachable!("unknown builtin `{other}` passed resolution"),
    };
    Ok(value)
}
