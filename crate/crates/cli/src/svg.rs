use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use trigonlab_core::geom::Point;
use trigonlab_core::scene::{Primitive, Scene, Shape};

use crate::viewport::Viewport;
use crate::RenderError;

/// Appearance settings; every length is in output pixels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RenderStyle {
    pub width: f64,
    pub stroke_width: f64,
    pub palette: BTreeMap<String, String>,
    pub background: String,
    pub point_radius: f64,
    pub label_font_size: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        let palette = [
            ("black", "#000000"),
            ("red", "#d62728"),
            ("green", "#2ca02c"),
            ("blue", "#1f77b4"),
            ("orange", "#ff7f0e"),
            ("purple", "#9467bd"),
            ("gray", "#7f7f7f"),
            ("yellow", "#bcbd22"),
            ("cyan", "#17becf"),
            ("magenta", "#e377c2"),
            ("brown", "#8c564b"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
        RenderStyle {
            width: 800.0,
            stroke_width: 1.5,
            palette,
            background: "#ffffff".into(),
            point_radius: 3.0,
            label_font_size: 14.0,
        }
    }
}

fn is_hex(s: &str) -> bool {
    s.len() == 7 && s.starts_with('#') && s[1..].bytes().all(|b| b.is_ascii_hexdigit())
}

impl RenderStyle {
    /// Reads a TOML style file; palette entries are merged over the defaults.
    pub fn from_toml(text: &str) -> Result<RenderStyle, RenderError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Partial {
            width: Option<f64>,
            stroke_width: Option<f64>,
            palette: Option<BTreeMap<String, String>>,
            background: Option<String>,
            point_radius: Option<f64>,
            label_font_size: Option<f64>,
        }
        let p: Partial = toml::from_str(text).map_err(|e| RenderError::Style(e.to_string()))?;
        let mut style = RenderStyle::default();
        if let Some(v) = p.width {
            style.width = v;
        }
        if let Some(v) = p.stroke_width {
            style.stroke_width = v;
        }
        if let Some(v) = p.background {
            style.background = v;
        }
        if let Some(v) = p.point_radius {
            style.point_radius = v;
        }
        if let Some(v) = p.label_font_size {
            style.label_font_size = v;
        }
        style.palette.extend(p.palette.unwrap_or_default());
        style.validate()?;
        Ok(style)
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        let bad = |m: &str| Err(RenderError::Style(m.to_string()));
        for (name, v) in [
            ("width", self.width),
            ("stroke_width", self.stroke_width),
            ("point_radius", self.point_radius),
            ("label_font_size", self.label_font_size),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(&format!("{name} must be positive"));
            }
        }
        for required in ["red", "green", "blue", "black"] {
            if !self.palette.contains_key(required) {
                return bad(&format!("palette is missing `{required}`"));
            }
        }
        if let Some((k, _)) = self.palette.iter().find(|(_, v)| !is_hex(v)) {
            return bad(&format!("palette entry `{k}` is not a #rrggbb color"));
        }
        if !is_hex(&self.background) {
            return bad("background is not a #rrggbb color");
        }
        Ok(())
    }

    fn color(&self, name: &str) -> String {
        if is_hex(name) {
            name.to_ascii_lowercase()
        } else {
            self.palette.get(name).cloned().unwrap_or_else(|| self.palette["black"].clone())
        }
    }
}

/// Maps geometry (y up) onto document user units (y down). The document's
/// `viewBox` is the viewport itself, so user units are geometry units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DocTransform {
    pub viewport: Viewport,
    pub width: f64,
    pub height: f64,
}

impl DocTransform {
    pub fn new(viewport: Viewport, width: f64) -> DocTransform {
        DocTransform {
            viewport,
            width,
            height: width / viewport.aspect,
        }
    }

    /// `[min_x, min_y, width, height]` of the viewBox.
    pub fn viewbox(&self) -> [f64; 4] {
        let vp = &self.viewport;
        [
            vp.center.x - vp.half_width(),
            -(vp.center.y + vp.half_extent),
            2.0 * vp.half_width(),
            2.0 * vp.half_extent,
        ]
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(p.x, -p.y)
    }

    /// User units per output pixel.
    pub fn pixel(&self) -> f64 {
        2.0 * self.viewport.half_extent / self.height
    }

    /// Decimals that resolve a thousandth of a pixel.
    pub fn digits(&self) -> usize {
        (3.0 - self.pixel().log10()).ceil().clamp(0.0, 15.0) as usize
    }
}

/// Fixed-decimal output with trailing zeros dropped.
pub fn num(v: f64, digits: usize) -> String {
    let mut s = format!("{v:.digits$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn element(out: &mut String, prim: &Primitive, tf: &DocTransform, style: &RenderStyle) {
    let d = tf.digits();
    let num = |v: f64| num(v, d);
    let px = tf.pixel();
    let color = style.color(&prim.color);
    let stroke = format!(
        "fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"",
        num(prim.stroke.unwrap_or(style.stroke_width) * px)
    );
    let _ = match &prim.shape {
        Shape::Point { at } => {
            let p = tf.apply(*at);
            writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\"/>",
                num(p.x),
                num(p.y),
                num(style.point_radius * px)
            )
        }
        Shape::Segment { p, q } => {
            let (a, b) = (tf.apply(*p), tf.apply(*q));
            writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {stroke}/>",
                num(a.x),
                num(a.y),
                num(b.x),
                num(b.y)
            )
        }
        Shape::Line { anchor, direction } => {
            let vp = &tf.viewport;
            let foot = *anchor + *direction * (vp.center - *anchor).dot(*direction);
            let reach = 2.0 * (vp.half_extent + vp.half_width());
            let (a, b) = (tf.apply(foot - *direction * reach), tf.apply(foot + *direction * reach));
            writeln!(
                out,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {stroke}/>",
                num(a.x),
                num(a.y),
                num(b.x),
                num(b.y)
            )
        }
        Shape::Circle { center, radius } => {
            let c = tf.apply(*center);
            writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" {stroke}/>",
                num(c.x),
                num(c.y),
                num(*radius)
            )
        }
        Shape::Polygon { vertices } => {
            let points: Vec<String> = vertices
                .iter()
                .map(|v| {
                    let p = tf.apply(*v);
                    format!("{},{}", num(p.x), num(p.y))
                })
                .collect();
            writeln!(out, "<polygon points=\"{}\" {stroke}/>", points.join(" "))
        }
        Shape::Label { at, text } => {
            let p = tf.apply(*at);
            writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"{color}\">{}</text>",
                num(p.x),
                num(p.y),
                num(style.label_font_size * px),
                escape(text)
            )
        }
    };
}

/// Renders `scene` as an SVG 1.1 document, one element per primitive in
/// layer order, after a background rectangle.
pub fn render_svg(scene: &Scene, viewport: &Viewport, style: &RenderStyle) -> String {
    let tf = DocTransform::new(*viewport, style.width);
    let d = tf.digits();
    let [x, y, w, h] = tf.viewbox().map(|v| num(v, d));
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{x} {y} {w} {h}\">",
        num(tf.width, 3),
        num(tf.height, 3)
    );
    let _ = writeln!(
        out,
        "<rect x=\"{x}\" y=\"{y}\" width=\"{w}\" height=\"{h}\" fill=\"{}\"/>",
        style.background
    );
    for prim in scene.layered() {
        element(&mut out, prim, &tf, style);
    }
    out.push_str("</svg>\n");
    out
}

/// Viewports of a zoom sequence: frame `k` has half-extent
/// `h0 * zoom^k` and keeps `anchor` at a fixed document position.
pub fn zoom_viewports(viewport: &Viewport, anchor: Point, zoom: f64, frames: usize) -> Result<Vec<Viewport>, RenderError> {
    if !(zoom.is_finite() && zoom > 0.0 && zoom != 1.0) {
        return Err(RenderError::InvalidZoom(zoom));
    }
    if frames == 0 {
        return Err(RenderError::NoFrames);
    }
    viewport.validate()?;
    let out: Vec<Viewport> = (0..frames)
        .map(|k| viewport.scaled_about(anchor, zoom.powi(k as i32)))
        .collect();
    for vp in &out {
        vp.validate()?;
    }
    Ok(out)
}

/// Renders a zoom sequence about the scene's focus, or the viewport center
/// when the scene has none. Frame 0 equals [`render_svg`].
pub fn render_frames(
    scene: &Scene,
    viewport: &Viewport,
    style: &RenderStyle,
    zoom: f64,
    frames: usize,
) -> Result<Vec<String>, RenderError> {
    let anchor = scene.focus.unwrap_or(viewport.center);
    Ok(zoom_viewports(viewport, anchor, zoom, frames)?
        .iter()
        .map(|vp| render_svg(scene, vp, style))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(shape: Shape) -> Scene {
        Scene {
            primitives: vec![Primitive {
                shape,
                color: "red".into(),
                stroke: None,
                layer: 0,
                name: None,
            }],
            focus: None,
        }
    }

    fn vp() -> Viewport {
        Viewport::new(Point::new(1.0, 2.0), 3.0, 1.5).unwrap()
    }

    #[test]
    fn affine_corners_and_center() {
        let tf = DocTransform::new(vp(), 900.0);
        let [x, y, w, h] = tf.viewbox();
        let doc = |p: Point| {
            let q = tf.apply(p);
            ((q.x - x) / w * tf.width, (q.y - y) / h * tf.height)
        };
        let close = |(a, b): (f64, f64), (c, d): (f64, f64)| (a - c).abs() < 1e-9 && (b - d).abs() < 1e-9;
        assert!(close(doc(Point::new(1.0, 2.0)), (450.0, 300.0)));
        assert!(close(doc(Point::new(1.0 - 4.5, 5.0)), (0.0, 0.0)));
        assert!(close(doc(Point::new(5.5, -1.0)), (900.0, 600.0)));
        assert!(close(doc(Point::new(5.5, 5.0)), (900.0, 0.0)));
        assert!(close(doc(Point::new(-3.5, -1.0)), (0.0, 600.0)));
    }

    #[test]
    fn one_polygon_element() {
        let scene = one(Shape::Polygon {
            vertices: vec![Point::ORIGIN, Point::new(1.0, 0.0), Point::new(0.0, 1.0)],
        });
        let svg = render_svg(&scene, &vp(), &RenderStyle::default());
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.contains("stroke=\"#d62728\""));
        assert_eq!(svg, render_svg(&scene, &vp(), &RenderStyle::default()));
    }

    #[test]
    fn labels_are_escaped() {
        let scene = one(Shape::Label {
            at: Point::ORIGIN,
            text: "a<b & \"c\"".into(),
        });
        let svg = render_svg(&scene, &vp(), &RenderStyle::default());
        assert!(svg.contains("a&lt;b &amp; &quot;c&quot;</text>"));
    }

    #[test]
    fn numbers() {
        assert_eq!(num(1.0, 6), "1");
        assert_eq!(num(-0.0000001, 6), "0");
        assert_eq!(num(2.5, 6), "2.5");
        assert_eq!(num(1.0 / 3.0, 6), "0.333333");
        let tf = DocTransform::new(Viewport::new(Point::ORIGIN, 1.0, 1.0).unwrap(), 800.0);
        assert_eq!(tf.digits(), 6);
        let tiny = DocTransform::new(Viewport::new(Point::ORIGIN, 1e-4, 1.0).unwrap(), 800.0);
        assert_eq!(tiny.digits(), 10);
    }

    #[test]
    fn zoom_sequence() {
        let vps = zoom_viewports(&vp(), Point::new(0.0, 0.0), 1.5, 4).unwrap();
        assert_eq!(vps[0], vp());
        for w in vps.windows(2) {
            assert!((w[1].half_extent / w[0].half_extent - 1.5).abs() < 1e-12);
        }
        assert!(zoom_viewports(&vp(), Point::ORIGIN, 1.0, 4).is_err());
        assert!(zoom_viewports(&vp(), Point::ORIGIN, 2.0, 0).is_err());
        assert!(zoom_viewports(&vp(), Point::ORIGIN, -2.0, 1).is_err());
    }

    #[test]
    fn style_file() {
        let style = RenderStyle::from_toml("stroke_width = 2.0\n[palette]\nred = \"#ff0000\"\n").unwrap();
        assert_eq!(style.stroke_width, 2.0);
        assert_eq!(style.palette["red"], "#ff0000");
        assert_eq!(style.palette["blue"], "#1f77b4");
        assert!(RenderStyle::from_toml("stroke_width = 0\n").is_err());
        assert!(RenderStyle::from_toml("[palette]\nred = \"crimson\"\n").is_err());
        assert!(RenderStyle::from_toml("unknown = 1\n").is_err());
    }
}
