use num_complex::Complex64;

use super::{scene_scale, Angle, GeomError, Point, Segment, DEGENERACY_EPS};

/// Below this `|1 − a|` a similarity is treated as a pure translation.
const TRANSLATION_EPS: f64 = 1e-12;

/// A direct plane similarity `z ↦ a·z + b` with `a = scale·e^{i·rotation}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    a: Complex64,
    b: Complex64,
}

fn to_c(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

fn from_c(z: Complex64) -> Point {
    Point::new(z.re, z.im)
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        a: Complex64::new(1.0, 0.0),
        b: Complex64::new(0.0, 0.0),
    };

    pub fn new(rotation: Angle, scale: f64, translation: Point) -> Result<Similarity, GeomError> {
        if scale.is_nan() || scale <= 0.0 || scale.is_infinite() {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Similarity {
            a: Complex64::from_polar(scale, rotation.radians()),
            b: to_c(translation),
        })
    }

    /// Spiral similarity centered at `center`.
    pub fn about(center: Point, rotation: Angle, scale: f64) -> Result<Similarity, GeomError> {
        let s = Similarity::new(rotation, scale, Point::ORIGIN)?;
        let c = to_c(center);
        Ok(Similarity { a: s.a, b: c - s.a * c })
    }

    pub fn translation(v: Point) -> Similarity {
        Similarity {
            a: Complex64::new(1.0, 0.0),
            b: to_c(v),
        }
    }

    /// Signed rotation in `(−π, π]`.
    pub fn rotation(&self) -> Angle {
        Angle::from_radians(self.a.arg()).normalized_signed()
    }

    pub fn scale(&self) -> f64 {
        self.a.norm()
    }

    pub fn translation_part(&self) -> Point {
        from_c(self.b)
    }

    pub fn apply(&self, p: Point) -> Point {
        from_c(self.a * to_c(p) + self.b)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        Similarity {
            a: self.a * other.a,
            b: self.a * other.b + self.b,
        }
    }

    pub fn inverse(&self) -> Similarity {
        let inv = self.a.inv();
        Similarity { a: inv, b: -inv * self.b }
    }
}

fn ensure_segment(s: &Segment) -> Result<Complex64, GeomError> {
    if !s.is_finite() {
        return Err(GeomError::NonFinite);
    }
    if s.length() < DEGENERACY_EPS * scene_scale(&[s.p, s.q]) {
        return Err(GeomError::DegenerateSegment);
    }
    Ok(to_c(s.q) - to_c(s.p))
}

/// The direct similarity taking `seg1.p → seg2.p` and `seg1.q → seg2.q`.
pub fn similarity_between(seg1: &Segment, seg2: &Segment) -> Result<Similarity, GeomError> {
    let (v1, v2) = (ensure_segment(seg1)?, ensure_segment(seg2)?);
    let a = v2 / v1;
    Ok(Similarity {
        a,
        b: to_c(seg2.p) - a * to_c(seg1.p),
    })
}

/// The unique point left in place by `s`, i.e. `b / (1 − a)`.
pub fn similarity_fixed_point(s: &Similarity) -> Result<Point, GeomError> {
    let denom = Complex64::new(1.0, 0.0) - s.a;
    if denom.norm() < TRANSLATION_EPS {
        return Err(GeomError::NoFixedPoint);
    }
    from_c(s.b / denom).ensure_finite()
}
