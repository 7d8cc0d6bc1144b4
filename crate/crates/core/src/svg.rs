//! Deterministic SVG figures of a configuration.
//!
//! Shapes are drawn in model coordinates under one y-up transform; labels are placed in
//! pixel coordinates so the text is not mirrored.

use std::fmt::Write as _;

use crate::ajima::{build_arc, ArcGeometry};
use crate::apollonius::{apollonius, inner_circle_in, soddy_line, Triad};
use crate::kernel::{Circle2, Point2};
use crate::triangle::{Triangle, Vertex};
use crate::verify::{witnesses, Context};

pub const DEFAULT_SCALE: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Apollonius,
    Soddy,
    Witness,
}

impl std::str::FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Layer, String> {
        match s {
            "apollonius" => Ok(Layer::Apollonius),
            "soddy" => Ok(Layer::Soddy),
            "registry-witness" | "witness" => Ok(Layer::Witness),
            _ => Err(format!("unknown layer {s:?} (apollonius, soddy, registry-witness)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub tri: Triangle,
    /// Per-side arc measures in degrees.
    pub thetas: [f64; 3],
    pub layers: Vec<Layer>,
    /// Pixels per model unit.
    pub scale: f64,
}

struct Canvas {
    body: String,
    labels: String,
    min: Point2,
    max: Point2,
    scale: f64,
}

const MARGIN: f64 = 0.6;

fn num(x: f64) -> String {
    // fixed precision keeps the output stable across platforms; avoid "-0"
    let s = format!("{x:.5}");
    let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

impl Canvas {
    fn px(&self, p: Point2) -> (f64, f64) {
        ((p.x - self.min.x) * self.scale, (self.max.y - p.y) * self.scale)
    }

    fn circle(&mut self, c: &Circle2, class: &str) {
        let _ = writeln!(
            self.body,
            r#"    <circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
            num(c.center.x),
            num(c.center.y),
            num(c.radius)
        );
    }

    fn polyline(&mut self, pts: &[Point2], class: &str, closed: bool) {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, num(p.x), num(p.y));
        }
        if closed {
            d.push('Z');
        }
        let _ = writeln!(self.body, r#"    <path class="{class}" d="{}"/>"#, d.trim_end());
    }

    fn arc(&mut self, arc: &ArcGeometry, b: Point2, c: Point2) {
        let large = u8::from(arc.theta_deg > 180.0);
        // sweep in model coordinates: counterclockwise from B through the arc midpoint
        let m = arc.arc_midpoint();
        let ccw = (b - arc.center).cross(m - arc.center) > 0.0;
        let _ = writeln!(
            self.body,
            r#"    <path class="arc" d="M{} {} A{} {} 0 {large} {} {} {}"/>"#,
            num(b.x),
            num(b.y),
            num(arc.radius),
            num(arc.radius),
            u8::from(ccw),
            num(c.x),
            num(c.y)
        );
    }

    fn point(&mut self, p: Point2, label: &str, class: &str) {
        let r = 2.5 / self.scale;
        let _ = writeln!(
            self.body,
            r#"    <circle class="pt {class}" cx="{}" cy="{}" r="{}"/>"#,
            num(p.x),
            num(p.y),
            num(r)
        );
        let (x, y) = self.px(p);
        let _ = writeln!(
            self.labels,
            r#"    <text x="{}" y="{}">{}</text>"#,
            num(x + 4.0),
            num(y - 4.0),
            escape(label)
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Figure {
    pub fn new(tri: Triangle, thetas: [f64; 3]) -> Figure {
        Figure {
            tri,
            thetas,
            layers: Vec::new(),
            scale: DEFAULT_SCALE,
        }
    }

    fn general(&self) -> bool {
        self.thetas[0] == self.thetas[1] && self.thetas[1] == self.thetas[2]
    }

    pub fn render(&self) -> String {
        let arcs: Vec<ArcGeometry> = Vertex::ALL
            .iter()
            .filter_map(|v| build_arc(&self.tri, *v, self.thetas[v.index()]).ok())
            .collect();
        let triad = Triad::mixed(&self.tri, self.thetas).ok();

        // bounds: the triangle and the drawn arcs' extreme points
        let mut pts: Vec<Point2> = self.tri.vertices.to_vec();
        pts.extend(arcs.iter().map(|a| a.arc_midpoint()));
        let min = Point2::new(
            pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min) - MARGIN,
            pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min) - MARGIN,
        );
        let max = Point2::new(
            pts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max) + MARGIN,
            pts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max) + MARGIN,
        );
        let mut cv = Canvas {
            body: String::new(),
            labels: String::new(),
            min,
            max,
            scale: self.scale,
        };

        let [a, b, c] = self.tri.vertices;
        cv.polyline(&[a, b, c], "triangle", true);
        for (arc, v) in arcs.iter().zip(Vertex::ALL) {
            let w = self.tri.relabeled(v);
            cv.arc(arc, w.vertices[1], w.vertices[2]);
        }
        if let Some(triad) = &triad {
            for g in triad.gammas() {
                cv.circle(&g, "gamma");
            }
        }
        let incircle = Circle2 {
            center: self.tri.incenter(),
            radius: self.tri.metrics().r,
        };
        cv.circle(&incircle, "incircle");
        for (p, name) in [(a, "A"), (b, "B"), (c, "C")] {
            cv.point(p, name, "vertex");
        }
        cv.point(incircle.center, "I", "center");

        let apol = triad
            .as_ref()
            .filter(|_| self.general())
            .and_then(|t| apollonius(t).ok());
        if self.layers.contains(&Layer::Apollonius) {
            match (&apol, &triad) {
                (Some(res), _) => {
                    cv.circle(&res.inner.circle(), "apollonius inner");
                    cv.circle(&res.outer.circle(), "apollonius outer");
                }
                (None, Some(t)) => {
                    // unequal arcs: the two inner circles that touch
                    if let Ok((p, rho)) = inner_circle_in(&self.tri, t.gammas()) {
                        cv.circle(&Circle2 { center: p, radius: rho.abs() }, "apollonius inner");
                    }
                    if let Ok((p, rho)) = inner_circle_in(&self.tri, t.omegas()) {
                        cv.circle(&Circle2 { center: p, radius: rho.abs() }, "apollonius omega");
                    }
                }
                _ => {}
            }
        }
        if self.layers.contains(&Layer::Soddy) {
            if let Some(res) = &apol {
                let ge = self.tri.gergonne_point();
                let (u, v) = (res.inner.center, res.outer.center);
                if soddy_line(&self.tri, res).is_ok() {
                    let mut line = [ge, u, incircle.center, v];
                    let dir = v - ge;
                    line.sort_by(|p, q| (*p - ge).dot(dir).total_cmp(&(*q - ge).dot(dir)));
                    cv.polyline(&[line[0], line[3]], "soddy", false);
                }
                cv.point(ge, "Ge", "soddy");
                cv.point(u, "U", "soddy");
                cv.point(v, "V", "soddy");
            }
        }
        if self.layers.contains(&Layer::Witness) && self.general() {
            let ctx = Context::new(self.tri, self.thetas[0]);
            for (name, p) in witnesses(&ctx) {
                cv.point(Point2::new(p[0], p[1]), &name, "witness");
            }
        }

        let (w, h) = ((max.x - min.x) * self.scale, (max.y - min.y) * self.scale);
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            num(w),
            num(h),
            num(w),
            num(h)
        );
        out.push_str(STYLE);
        let _ = writeln!(
            out,
            r#"  <g transform="matrix({} 0 0 {} {} {})">"#,
            num(self.scale),
            num(-self.scale),
            num(-min.x * self.scale),
            num(max.y * self.scale)
        );
        out.push_str(&cv.body);
        out.push_str("  </g>\n  <g class=\"labels\">\n");
        out.push_str(&cv.labels);
        out.push_str("  </g>\n</svg>\n");
        out
    }
}

const STYLE: &str = r#"  <style>
    path, circle { fill: none; vector-effect: non-scaling-stroke; stroke-width: 1.2; }
    .triangle { stroke: #000; }
    .arc { stroke: #c0392b; }
    .gamma { stroke: #2471a3; }
    .incircle { stroke: #7f8c8d; stroke-dasharray: 4 3; }
    .apollonius { stroke: #1e8449; }
    .apollonius.omega { stroke: #b9770e; }
    .soddy { stroke: #8e44ad; }
    .pt { fill: #000; stroke: none; }
    .witness { fill: #d35400; }
    text { font: 12px sans-serif; }
  </style>
"#;

#[cfg(test)]
mod tests {
    use super::*;

    fn fig(layers: Vec<Layer>) -> String {
        let t = Triangle::from_sides(4.0, 5.0, 6.0).unwrap();
        Figure {
            layers,
            ..Figure::new(t, [150.0; 3])
        }
        .render()
    }

    #[test]
    fn default_layers() {
        let s = fig(vec![]);
        assert!(s.starts_with("<?xml"));
        assert_eq!(s.matches(r#"class="arc""#).count(), 3);
        assert_eq!(s.matches(r#"class="gamma""#).count(), 3);
        assert!(!s.contains(r#"class="apollonius"#));
        assert!(s.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn optional_layers_and_determinism() {
        let all = vec![Layer::Apollonius, Layer::Soddy, Layer::Witness];
        let s = fig(all.clone());
        assert_eq!(s.matches(r#"class="apollonius"#).count(), 2);
        assert!(s.contains(">Ge<") && s.contains(">U<") && s.contains(">V<"));
        assert_eq!(s, fig(all));
    }

    #[test]
    fn number_format() {
        assert_eq!(num(-0.000001), "0");
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(2.0), "2");
    }

    #[test]
    fn layer_names() {
        assert_eq!("soddy".parse::<Layer>(), Ok(Layer::Soddy));
        assert!("nope".parse::<Layer>().is_err());
    }
}
