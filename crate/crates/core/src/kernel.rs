//! Planar primitives and tolerance-aware predicates.
//!
//! Every predicate returns its residual alongside the verdict so that callers
//! can assert quantitative bounds instead of trusting a boolean.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum GeomError {
    #[error("points are collinear at the working scale")]
    CollinearInput,
    #[error("ray has near-zero length")]
    DegenerateRay,
    #[error("concentric circles of equal radius have no defined touch point")]
    ConcentricAmbiguous,
    #[error("concentric circles have no radical axis")]
    ConcentricCircles,
    #[error("circle centers are collinear; radical center is at infinity")]
    CollinearCenters,
    #[error("homothety ratio must be finite and nonzero")]
    ZeroRatio,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("non-finite input")]
    NonFinite,
}

/// Relative tolerance with an absolute floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs_floor: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs_floor: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs_floor: f64) -> Self {
        assert!(rel > 0.0 && abs_floor >= 0.0, "invalid tolerance");
        Tolerance { rel, abs_floor }
    }

    /// Effective epsilon for quantities of magnitude `scale`.
    pub fn eps(&self, scale: f64) -> f64 {
        (self.rel * scale.abs()).max(self.abs_floor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn lerp(self, o: Point2, s: f64) -> Point2 {
        self + (o - self) * s
    }

    pub fn midpoint(self, o: Point2) -> Point2 {
        self.lerp(o, 0.5)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, k: f64) -> Point2 {
        Point2::new(self.x / k, self.y / k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// A line through an anchor point with a unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub p: Point2,
    pub d: Point2,
}

impl Line2 {
    pub fn new(p: Point2, dir: Point2) -> Result<Line2, GeomError> {
        if !p.is_finite() || !dir.is_finite() {
            return Err(GeomError::NonFinite);
        }
        let d = dir.normalized().ok_or(GeomError::DegenerateRay)?;
        Ok(Line2 { p, d })
    }

    pub fn through(p: Point2, q: Point2) -> Result<Line2, GeomError> {
        Line2::new(p, q - p)
    }

    pub fn normal(&self) -> Point2 {
        self.d.perp()
    }

    /// Signed distance, positive on the left of the direction.
    pub fn signed_distance(&self, q: Point2) -> f64 {
        self.d.cross(q - self.p)
    }

    pub fn distance(&self, q: Point2) -> f64 {
        self.signed_distance(q).abs()
    }

    /// Parameter of the orthogonal projection of `q` along the direction.
    pub fn param(&self, q: Point2) -> f64 {
        self.d.dot(q - self.p)
    }

    pub fn at(&self, s: f64) -> Point2 {
        self.p + self.d * s
    }

    pub fn project(&self, q: Point2) -> Point2 {
        self.at(self.param(q))
    }

    pub fn intersect(&self, other: &Line2) -> Result<Point2, GeomError> {
        let den = self.d.cross(other.d);
        if den.abs() < 1e-14 {
            return Err(GeomError::ParallelLines);
        }
        let s = (other.p - self.p).cross(other.d) / den;
        Ok(self.at(s))
    }

    pub fn parallel_through(&self, q: Point2) -> Line2 {
        Line2 { p: q, d: self.d }
    }

    pub fn perpendicular_through(&self, q: Point2) -> Line2 {
        Line2 {
            p: q,
            d: self.d.perp(),
        }
    }

    /// Homogeneous coordinates `(n_x, n_y, -n·p/scale)` with a unit normal,
    /// so that determinants of three lines are dimensionless.
    pub fn homogeneous(&self, scale: f64) -> [f64; 3] {
        let n = self.normal();
        [n.x, n.y, -n.dot(self.p) / scale]
    }

    /// Whether `other` describes the same point set within `tol` at `scale`.
    pub fn same_as(&self, other: &Line2, tol: &Tolerance, scale: f64) -> bool {
        self.d.cross(other.d).abs() <= tol.rel && self.distance(other.p) <= tol.eps(scale)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle2 {
    pub center: Point2,
    pub radius: f64,
}

impl Circle2 {
    pub fn new(center: Point2, radius: f64) -> Circle2 {
        debug_assert!(radius >= 0.0, "negative radius {radius}");
        Circle2 { center, radius }
    }

    /// Power of a point: `|q - center|^2 - radius^2`.
    pub fn power(&self, q: Point2) -> f64 {
        (q - self.center).norm_sq() - self.radius * self.radius
    }

    /// Length of a tangent segment from `q`; zero for points inside.
    pub fn tangent_length(&self, q: Point2) -> f64 {
        self.power(q).max(0.0).sqrt()
    }

    /// Distance from `q` to the circumference.
    pub fn boundary_residual(&self, q: Point2) -> f64 {
        (q.dist(self.center) - self.radius).abs()
    }

    pub fn point_at(&self, angle: f64) -> Point2 {
        self.center + Point2::new(angle.cos(), angle.sin()) * self.radius
    }
}

/// A boolean verdict together with the residual that decided it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub holds: bool,
    pub residual: f64,
}

impl Decision {
    fn new(residual: f64, eps: f64) -> Decision {
        Decision {
            holds: residual <= eps,
            residual,
        }
    }
}

fn spread(points: &[Point2]) -> f64 {
    let mut s: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            s = s.max(p.dist(*q));
        }
    }
    s
}

/// Circle through three points.
pub fn circle_through(p1: Point2, p2: Point2, p3: Point2) -> Result<Circle2, GeomError> {
    let scale = spread(&[p1, p2, p3]);
    let u = p2 - p1;
    let v = p3 - p1;
    let den = 2.0 * u.cross(v);
    if !(den.abs() > 1e-12 * scale * scale) || scale == 0.0 {
        return Err(GeomError::CollinearInput);
    }
    let (uu, vv) = (u.norm_sq(), v.norm_sq());
    let off = Point2::new(v.y * uu - u.y * vv, u.x * vv - v.x * uu) / den;
    Ok(Circle2::new(p1 + off, off.norm()))
}

/// Intersections of a line with a circle, ordered along the line direction.
/// A tangency collapses to a single point.
pub fn intersect_line_circle(l: &Line2, c: &Circle2) -> Vec<Point2> {
    let tol = Tolerance::default();
    let s0 = l.param(c.center);
    let foot = l.at(s0);
    let h = l.distance(c.center);
    let eps = tol.eps(c.radius.max(h));
    if h > c.radius + eps {
        return Vec::new();
    }
    let half_sq = c.radius * c.radius - h * h;
    if (h - c.radius).abs() <= eps || half_sq <= 0.0 {
        return vec![foot];
    }
    let half = half_sq.sqrt();
    vec![l.at(s0 - half), l.at(s0 + half)]
}

/// Unsigned angle at `vertex` between the rays towards `p` and `q`, in `[0, π]`.
pub fn angle_at(p: Point2, vertex: Point2, q: Point2) -> Result<f64, GeomError> {
    let u = p - vertex;
    let v = q - vertex;
    let scale = u.norm().max(v.norm());
    if u.norm() <= 1e-14 * scale.max(1e-300) || v.norm() <= 1e-14 * scale.max(1e-300) || scale == 0.0
    {
        return Err(GeomError::DegenerateRay);
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// Signed angle from ray `vertex→p` to ray `vertex→q`, counterclockwise positive, in `(-π, π]`.
pub fn signed_angle(p: Point2, vertex: Point2, q: Point2) -> Result<f64, GeomError> {
    let u = p - vertex;
    let v = q - vertex;
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(GeomError::DegenerateRay);
    }
    Ok(u.cross(v).atan2(u.dot(v)))
}

/// Acute angle between two lines, in `[0, π/2]`.
pub fn line_angle(l1: &Line2, l2: &Line2) -> f64 {
    l1.d.cross(l2.d).abs().atan2(l1.d.dot(l2.d).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BisectorKind {
    Internal,
    External,
}

pub fn bisector(p: Point2, vertex: Point2, q: Point2, kind: BisectorKind) -> Result<Line2, GeomError> {
    let u = (p - vertex).normalized().ok_or(GeomError::DegenerateRay)?;
    let v = (q - vertex).normalized().ok_or(GeomError::DegenerateRay)?;
    let sum = u + v;
    // straight angle: any perpendicular to the ray is the bisector
    let internal = if sum.norm() < 1e-12 { u.perp() } else { sum };
    let dir = match kind {
        BisectorKind::Internal => internal,
        BisectorKind::External => internal.perp(),
    };
    Line2::new(vertex, dir)
}

pub fn is_collinear(p1: Point2, p2: Point2, p3: Point2, tol: &Tolerance) -> Decision {
    let scale = spread(&[p1, p2, p3]);
    if scale == 0.0 {
        return Decision::new(0.0, tol.eps(0.0));
    }
    // height of the triangle over its longest side
    let residual = (p2 - p1).cross(p3 - p1).abs() / scale;
    Decision::new(residual, tol.eps(scale))
}

pub fn is_concyclic(pts: [Point2; 4], tol: &Tolerance) -> Decision {
    let scale = spread(&pts);
    let triples = [(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 3, 1), (1, 2, 3, 0)];
    // use the best-conditioned triple to define the circle
    let best = triples
        .iter()
        .max_by(|x, y| {
            let ax = (pts[x.1] - pts[x.0]).cross(pts[x.2] - pts[x.0]).abs();
            let ay = (pts[y.1] - pts[y.0]).cross(pts[y.2] - pts[y.0]).abs();
            ax.total_cmp(&ay)
        })
        .copied()
        .unwrap();
    match circle_through(pts[best.0], pts[best.1], pts[best.2]) {
        Ok(c) => Decision::new(c.boundary_residual(pts[best.3]), tol.eps(scale)),
        // all four collinear: a line is a degenerate circle only when the
        // points coincide pairwise, so report the collinearity height
        Err(_) => Decision {
            holds: false,
            residual: f64::INFINITY,
        },
    }
}

/// Concurrence of three lines measured projectively: the determinant of their
/// normalized homogeneous coordinates. Parallel triples count as concurrent
/// at infinity.
pub fn are_concurrent(l1: &Line2, l2: &Line2, l3: &Line2, scale: f64, tol: &Tolerance) -> Decision {
    let [a, b, c] = [l1.homogeneous(scale), l2.homogeneous(scale), l3.homogeneous(scale)];
    let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    Decision::new(det.abs(), tol.rel)
}

/// Distance from the intersection of the best-conditioned pair to the third line.
pub fn concurrence_distance(lines: [&Line2; 3]) -> Result<(Point2, f64), GeomError> {
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let best = pairs
        .iter()
        .max_by(|x, y| {
            let sx = lines[x.0].d.cross(lines[x.1].d).abs();
            let sy = lines[y.0].d.cross(lines[y.1].d).abs();
            sx.total_cmp(&sy)
        })
        .unwrap();
    let p = lines[best.0].intersect(lines[best.1])?;
    Ok((p, lines[best.2].distance(p)))
}

pub fn is_parallel(l1: &Line2, l2: &Line2, tol: &Tolerance) -> Decision {
    Decision::new(l1.d.cross(l2.d).abs(), tol.rel)
}

pub fn is_perpendicular(l1: &Line2, l2: &Line2, tol: &Tolerance) -> Decision {
    Decision::new(l1.d.dot(l2.d).abs(), tol.rel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TangencyKind {
    External,
    Internal,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangency {
    pub kind: TangencyKind,
    pub touch: Option<Point2>,
    /// Smaller of the external and internal distance residuals.
    pub residual: f64,
}

pub fn tangency(c1: &Circle2, c2: &Circle2, tol: &Tolerance) -> Result<Tangency, GeomError> {
    let d = c1.center.dist(c2.center);
    let scale = d + c1.radius + c2.radius;
    let eps = tol.eps(scale);
    if d <= eps && (c1.radius - c2.radius).abs() <= eps {
        return Err(GeomError::ConcentricAmbiguous);
    }
    let ext = (d - (c1.radius + c2.radius)).abs();
    let int = (d - (c1.radius - c2.radius).abs()).abs();
    let dir = c2.center - c1.center;
    if ext <= eps && ext <= int {
        let sum = c1.radius + c2.radius;
        let touch = if sum > 0.0 {
            c1.center + dir * (c1.radius / sum)
        } else {
            c1.center
        };
        return Ok(Tangency {
            kind: TangencyKind::External,
            touch: Some(touch),
            residual: ext,
        });
    }
    if int <= eps {
        // external division of the center segment in the ratio r1 : r2
        let diff = c1.radius - c2.radius;
        let touch = c1.center + dir * (c1.radius / diff);
        return Ok(Tangency {
            kind: TangencyKind::Internal,
            touch: Some(touch),
            residual: int,
        });
    }
    Ok(Tangency {
        kind: TangencyKind::None,
        touch: None,
        residual: ext.min(int),
    })
}

pub fn radical_axis(c1: &Circle2, c2: &Circle2) -> Result<Line2, GeomError> {
    let dir = c2.center - c1.center;
    let d = dir.norm();
    if d <= 1e-14 * (c1.radius + c2.radius + c1.center.norm()).max(1e-300) {
        return Err(GeomError::ConcentricCircles);
    }
    let u = dir / d;
    let x = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d);
    Line2::new(c1.center + u * x, u.perp())
}

pub fn radical_center(c1: &Circle2, c2: &Circle2, c3: &Circle2) -> Result<Point2, GeomError> {
    let scale = spread(&[c1.center, c2.center, c3.center]);
    let e1 = (c2.center - c1.center) * 2.0;
    let e2 = (c3.center - c1.center) * 2.0;
    let det = e1.cross(e2);
    if det.abs() <= 1e-12 * scale * scale || scale == 0.0 {
        return Err(GeomError::CollinearCenters);
    }
    let k = |c: &Circle2| c.center.norm_sq() - c.radius * c.radius;
    let f1 = k(c2) - k(c1);
    let f2 = k(c3) - k(c1);
    Ok(Point2::new(
        (f1 * e2.y - f2 * e1.y) / det,
        (e1.x * f2 - e2.x * f1) / det,
    ))
}

/// Central similarity about `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Homothety {
    pub center: Point2,
    pub ratio: f64,
}

impl Homothety {
    pub fn new(center: Point2, ratio: f64) -> Result<Homothety, GeomError> {
        if !ratio.is_finite() || ratio == 0.0 {
            return Err(GeomError::ZeroRatio);
        }
        Ok(Homothety { center, ratio })
    }

    pub fn inverse(&self) -> Homothety {
        Homothety {
            center: self.center,
            ratio: 1.0 / self.ratio,
        }
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        self.center + (p - self.center) * self.ratio
    }

    pub fn apply_circle(&self, c: &Circle2) -> Circle2 {
        Circle2::new(self.apply(c.center), c.radius * self.ratio.abs())
    }
}

/// Foot of the perpendicular from `q` onto line `l`.
pub fn foot(q: Point2, l: &Line2) -> Point2 {
    l.project(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn circle_through_examples() {
        let c = circle_through(p(0.0, 0.0), p(2.0, 0.0), p(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!(c.center.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.center.y, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.radius, 1.0, epsilon = 1e-15);

        assert_eq!(
            circle_through(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)),
            Err(GeomError::CollinearInput)
        );

        let c = circle_through(p(0.0, 0.0), p(4.0, 0.0), p(0.0, 3.0)).unwrap();
        assert_abs_diff_eq!(c.center.x, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.center.y, 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.radius, 2.5, epsilon = 1e-15);
    }

    #[test]
    fn line_circle_examples() {
        let unit = Circle2::new(Point2::ORIGIN, 1.0);
        let x_axis = Line2::new(Point2::ORIGIN, p(1.0, 0.0)).unwrap();
        let pts = intersect_line_circle(&x_axis, &unit);
        assert_eq!(pts, vec![p(-1.0, 0.0), p(1.0, 0.0)]);

        let y1 = Line2::new(p(0.0, 1.0), p(1.0, 0.0)).unwrap();
        let pts = intersect_line_circle(&y1, &unit);
        assert_eq!(pts.len(), 1);
        assert_abs_diff_eq!(pts[0].x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pts[0].y, 1.0, epsilon = 1e-15);

        let y2 = Line2::new(p(0.0, 2.0), p(1.0, 0.0)).unwrap();
        assert!(intersect_line_circle(&y2, &unit).is_empty());
    }

    #[test]
    fn angle_examples() {
        let o = Point2::ORIGIN;
        assert_abs_diff_eq!(angle_at(p(1.0, 0.0), o, p(0.0, 1.0)).unwrap(), FRAC_PI_2);
        assert_abs_diff_eq!(angle_at(p(1.0, 0.0), o, p(1.0, 0.0)).unwrap(), 0.0);
        assert_abs_diff_eq!(angle_at(p(1.0, 0.0), o, p(-1.0, 0.0)).unwrap(), PI);
        assert_eq!(angle_at(o, o, p(1.0, 0.0)), Err(GeomError::DegenerateRay));
    }

    #[test]
    fn bisector_examples() {
        let o = Point2::ORIGIN;
        let l = bisector(p(1.0, 0.0), o, p(0.0, 1.0), BisectorKind::Internal).unwrap();
        assert_abs_diff_eq!(l.d.x, 1.0 / SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(l.d.y, 1.0 / SQRT_2, epsilon = 1e-15);
        assert_eq!(l.p, o);

        let l = bisector(p(1.0, 0.0), o, p(0.0, 1.0), BisectorKind::External).unwrap();
        assert_abs_diff_eq!(l.d.cross(p(1.0, -1.0)), 0.0, epsilon = 1e-15);

        let l = bisector(p(1.0, 0.0), o, p(-1.0, 0.0), BisectorKind::Internal).unwrap();
        assert_abs_diff_eq!(l.d.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l.d.y.abs(), 1.0, epsilon = 1e-15);

        assert!(bisector(o, o, p(1.0, 0.0), BisectorKind::Internal).is_err());
    }

    #[test]
    fn predicate_examples() {
        let tol = Tolerance::default();
        let d = is_collinear(p(0.0, 0.0), p(1.0, 1.0), p(2.0, 2.0), &tol);
        assert!(d.holds);
        assert_eq!(d.residual, 0.0);

        let d = is_concyclic([p(1.0, 0.0), p(0.0, 1.0), p(-1.0, 0.0), p(0.0, -1.0)], &tol);
        assert!(d.holds);

        let x0 = Line2::new(Point2::ORIGIN, p(0.0, 1.0)).unwrap();
        let y0 = Line2::new(Point2::ORIGIN, p(1.0, 0.0)).unwrap();
        let diag = Line2::new(p(0.0, 1.0), p(1.0, 1.0)).unwrap();
        assert!(!are_concurrent(&x0, &y0, &diag, 1.0, &tol).holds);
        let diag0 = Line2::new(Point2::ORIGIN, p(1.0, 1.0)).unwrap();
        assert!(are_concurrent(&x0, &y0, &diag0, 1.0, &tol).holds);

        assert!(is_perpendicular(&x0, &y0, &tol).holds);
        assert!(!is_parallel(&x0, &y0, &tol).holds);
        assert!(is_parallel(&y0, &Line2::new(p(0.0, 5.0), p(-2.0, 0.0)).unwrap(), &tol).holds);
    }

    #[test]
    fn tangency_examples() {
        let tol = Tolerance::default();
        let t = tangency(
            &Circle2::new(p(0.0, 0.0), 1.0),
            &Circle2::new(p(3.0, 0.0), 2.0),
            &tol,
        )
        .unwrap();
        assert_eq!(t.kind, TangencyKind::External);
        assert_eq!(t.touch, Some(p(1.0, 0.0)));

        let t = tangency(
            &Circle2::new(p(0.0, 0.0), 3.0),
            &Circle2::new(p(1.0, 0.0), 2.0),
            &tol,
        )
        .unwrap();
        assert_eq!(t.kind, TangencyKind::Internal);
        assert_eq!(t.touch, Some(p(3.0, 0.0)));

        let t = tangency(
            &Circle2::new(p(0.0, 0.0), 1.0),
            &Circle2::new(p(5.0, 0.0), 1.0),
            &tol,
        )
        .unwrap();
        assert_eq!(t.kind, TangencyKind::None);
        assert_eq!(t.touch, None);

        assert_eq!(
            tangency(
                &Circle2::new(p(0.0, 0.0), 1.0),
                &Circle2::new(p(0.0, 0.0), 1.0),
                &tol
            ),
            Err(GeomError::ConcentricAmbiguous)
        );
    }

    #[test]
    fn point_circle_tangency() {
        let tol = Tolerance::default();
        let t = tangency(
            &Circle2::new(p(1.0, 0.0), 0.0),
            &Circle2::new(p(0.0, 0.0), 1.0),
            &tol,
        )
        .unwrap();
        assert_ne!(t.kind, TangencyKind::None);
        assert_abs_diff_eq!(t.touch.unwrap().x, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn radical_examples() {
        let tol = Tolerance::default();
        let axis = radical_axis(
            &Circle2::new(p(0.0, 0.0), 1.0),
            &Circle2::new(p(4.0, 0.0), 1.0),
        )
        .unwrap();
        let x2 = Line2::new(p(2.0, 0.0), p(0.0, 1.0)).unwrap();
        assert!(axis.same_as(&x2, &tol, 4.0));

        let c = radical_center(
            &Circle2::new(p(0.0, 0.0), 0.7),
            &Circle2::new(p(2.0, 0.0), 0.7),
            &Circle2::new(p(1.0, 2.0), 0.7),
        )
        .unwrap();
        let cc = circle_through(p(0.0, 0.0), p(2.0, 0.0), p(1.0, 2.0)).unwrap();
        assert_abs_diff_eq!(c.x, cc.center.x, epsilon = 1e-14);
        assert_abs_diff_eq!(c.y, cc.center.y, epsilon = 1e-14);

        assert_eq!(
            radical_axis(
                &Circle2::new(p(0.0, 0.0), 1.0),
                &Circle2::new(p(0.0, 0.0), 2.0)
            ),
            Err(GeomError::ConcentricCircles)
        );
        assert_eq!(
            radical_center(
                &Circle2::new(p(0.0, 0.0), 1.0),
                &Circle2::new(p(1.0, 0.0), 1.0),
                &Circle2::new(p(2.0, 0.0), 1.0)
            ),
            Err(GeomError::CollinearCenters)
        );
    }

    #[test]
    fn homothety_examples() {
        let h = Homothety::new(Point2::ORIGIN, 2.0).unwrap();
        assert_eq!(h.apply(p(1.0, 1.0)), p(2.0, 2.0));
        let id = Homothety::new(p(3.0, -1.0), 1.0).unwrap();
        assert_eq!(id.apply(p(0.5, 7.0)), p(0.5, 7.0));
        let flip = Homothety::new(Point2::ORIGIN, -1.0).unwrap();
        let c = flip.apply_circle(&Circle2::new(p(2.0, 0.0), 1.0));
        assert_eq!(c, Circle2::new(p(-2.0, 0.0), 1.0));
        assert_eq!(Homothety::new(Point2::ORIGIN, 0.0), Err(GeomError::ZeroRatio));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn pt() -> impl Strategy<Value = Point2> {
        (coord(), coord()).prop_map(|(x, y)| Point2::new(x, y))
    }

    proptest! {
        #[test]
        fn line_circle_points_lie_on_both(a in pt(), ang in 0.0..PI, c in pt(), r in 0.1..5.0f64) {
            let l = Line2::new(a, Point2::new(ang.cos(), ang.sin())).unwrap();
            let circ = Circle2::new(c, r);
            let eps = 1e-9 * (r + a.dist(c));
            for q in intersect_line_circle(&l, &circ) {
                prop_assert!(circ.boundary_residual(q) <= eps);
                prop_assert!(l.distance(q) <= eps);
            }
        }

        #[test]
        fn tangency_touch_on_both(c1 in pt(), r1 in 0.1..4.0f64, r2 in 0.1..4.0f64, ang in 0.0..(2.0 * PI), internal in any::<bool>()) {
            let tol = Tolerance::default();
            let d = if internal { (r1 - r2).abs() } else { r1 + r2 };
            prop_assume!(d > 1e-3);
            let c2 = c1 + Point2::new(ang.cos(), ang.sin()) * d;
            let (a, b) = (Circle2::new(c1, r1), Circle2::new(c2, r2));
            let t = tangency(&a, &b, &tol).unwrap();
            prop_assert_ne!(t.kind, TangencyKind::None);
            let touch = t.touch.unwrap();
            prop_assert!(a.boundary_residual(touch) <= 1e-9 * (d + r1 + r2));
            prop_assert!(b.boundary_residual(touch) <= 1e-9 * (d + r1 + r2));
        }

        #[test]
        fn radical_axis_symmetric(c1 in pt(), c2 in pt(), r1 in 0.0..5.0f64, r2 in 0.0..5.0f64) {
            prop_assume!(c1.dist(c2) > 0.1);
            let tol = Tolerance::default();
            let (a, b) = (Circle2::new(c1, r1), Circle2::new(c2, r2));
            let l1 = radical_axis(&a, &b).unwrap();
            let l2 = radical_axis(&b, &a).unwrap();
            let scale = c1.dist(c2) + r1 + r2 + c1.norm() + c2.norm();
            prop_assert!(l1.same_as(&l2, &tol, scale));
            let q = l1.at(1.7);
            prop_assert!((a.power(q) - b.power(q)).abs() <= 1e-9 * scale * scale);
        }

        #[test]
        fn homothety_inverse_roundtrip(c in pt(), q in pt(), k in prop_oneof![-5.0..-0.1f64, 0.1..5.0f64]) {
            let h = Homothety::new(c, k).unwrap();
            let back = h.inverse().apply(h.apply(q));
            prop_assert!(back.dist(q) <= 1e-12 * (1.0 + q.norm() + c.norm()) * k.abs().max(1.0 / k.abs()));
        }

        #[test]
        fn predicates_scale_invariant(a in pt(), b in pt(), c in pt(), d in pt()) {
            let tol = Tolerance::default();
            let s = 1e3;
            let col = is_collinear(a, b, c, &tol);
            let col_s = is_collinear(a * s, b * s, c * s, &tol);
            prop_assert_eq!(col.holds, col_s.holds);
            let cyc = is_concyclic([a, b, c, d], &tol);
            let cyc_s = is_concyclic([a * s, b * s, c * s, d * s], &tol);
            prop_assert_eq!(cyc.holds, cyc_s.holds);
            if let (Ok(l1), Ok(l2), Ok(l3)) = (Line2::through(a, b), Line2::through(b, c), Line2::through(c, d)) {
                let l1s = Line2::through(a * s, b * s).unwrap();
                let l2s = Line2::through(b * s, c * s).unwrap();
                let l3s = Line2::through(c * s, d * s).unwrap();
                prop_assert_eq!(
                    are_concurrent(&l1, &l2, &l3, 10.0, &tol).holds,
                    are_concurrent(&l1s, &l2s, &l3s, 10.0 * s, &tol).holds
                );
                prop_assert_eq!(is_parallel(&l1, &l2, &tol).holds, is_parallel(&l1s, &l2s, &tol).holds);
                prop_assert_eq!(is_perpendicular(&l1, &l3, &tol).holds, is_perpendicular(&l1s, &l3s, &tol).holds);
            }
        }
    }
}
