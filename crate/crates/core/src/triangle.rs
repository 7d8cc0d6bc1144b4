//! Triangles, their metric scalars, classical centers and barycentric coordinates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{Line2, Point2};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum TriangleError {
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("vertices must be in counterclockwise order")]
    Clockwise,
    #[error("barycentric coordinates sum to zero")]
    ZeroBary,
}

/// A vertex label. Side `a` is the side opposite vertex `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    A,
    B,
    C,
}

impl Vertex {
    pub const ALL: [Vertex; 3] = [Vertex::A, Vertex::B, Vertex::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Vertex {
        Vertex::ALL[i % 3]
    }

    pub fn next(self) -> Vertex {
        Vertex::from_index(self.index() + 1)
    }

    pub fn prev(self) -> Vertex {
        Vertex::from_index(self.index() + 2)
    }

    pub fn side_name(self) -> &'static str {
        match self {
            Vertex::A => "a",
            Vertex::B => "b",
            Vertex::C => "c",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    /// Vertices `A`, `B`, `C` in counterclockwise order.
    pub vertices: [Point2; 3],
}

impl Triangle {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Result<Triangle, TriangleError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(TriangleError::DegenerateTriangle);
        }
        let scale = a.dist(b).max(b.dist(c)).max(c.dist(a));
        let cross = (b - a).cross(c - a);
        if scale == 0.0 || cross.abs() <= 1e-12 * scale * scale {
            return Err(TriangleError::DegenerateTriangle);
        }
        if cross < 0.0 {
            return Err(TriangleError::Clockwise);
        }
        Ok(Triangle {
            vertices: [a, b, c],
        })
    }

    /// Canonical placement: `B = (0,0)`, `C = (a,0)`, `A` above the x-axis.
    pub fn from_sides(a: f64, b: f64, c: f64) -> Result<Triangle, TriangleError> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(a) && ok(b) && ok(c)) || a >= b + c || b >= c + a || c >= a + b {
            return Err(TriangleError::DegenerateTriangle);
        }
        let x = (a * a + c * c - b * b) / (2.0 * a);
        let area = heron(a, b, c);
        let y = 2.0 * area / a;
        Triangle::new(Point2::new(x, y), Point2::ORIGIN, Point2::new(a, 0.0))
    }

    pub fn vertex(&self, v: Vertex) -> Point2 {
        self.vertices[v.index()]
    }

    /// The same triangle with `v` playing the role of `A`; orientation is kept.
    pub fn relabeled(&self, v: Vertex) -> Triangle {
        let i = v.index();
        Triangle {
            vertices: [
                self.vertices[i],
                self.vertices[(i + 1) % 3],
                self.vertices[(i + 2) % 3],
            ],
        }
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        let [pa, pb, pc] = self.vertices;
        [pb.dist(pc), pc.dist(pa), pa.dist(pb)]
    }

    /// Largest side length, used as the configuration scale.
    pub fn diameter(&self) -> f64 {
        let [a, b, c] = self.side_lengths();
        a.max(b).max(c)
    }

    pub fn metrics(&self) -> TriangleMetrics {
        let [a, b, c] = self.side_lengths();
        TriangleMetrics::from_sides(a, b, c)
    }

    /// Directed line through the side opposite `v`, oriented so the interior is on its left.
    pub fn side_line(&self, v: Vertex) -> Line2 {
        let p = self.vertex(v.next());
        let q = self.vertex(v.prev());
        Line2::through(p, q).expect("validated triangle")
    }

    pub fn incenter(&self) -> Point2 {
        let [a, b, c] = self.side_lengths();
        self.bary_to_point(BaryCoords::new(a, b, c))
            .expect("positive weights")
    }

    /// Center of the excircle opposite `v`.
    pub fn excenter(&self, v: Vertex) -> Point2 {
        let mut w = self.side_lengths();
        w[v.index()] = -w[v.index()];
        self.bary_to_point(BaryCoords::new(w[0], w[1], w[2]))
            .expect("excenter weights never cancel")
    }

    pub fn gergonne_point(&self) -> Point2 {
        let m = self.metrics();
        self.bary_to_point(BaryCoords::new(
            1.0 / (m.p - m.a),
            1.0 / (m.p - m.b),
            1.0 / (m.p - m.c),
        ))
        .expect("positive weights")
    }

    pub fn circumcenter(&self) -> Point2 {
        let [pa, pb, pc] = self.vertices;
        crate::kernel::circle_through(pa, pb, pc)
            .expect("validated triangle")
            .center
    }

    /// Incircle touch points on `BC`, `CA`, `AB`.
    pub fn contact_points(&self) -> ContactPoints {
        let m = self.metrics();
        let [pa, pb, pc] = self.vertices;
        ContactPoints {
            l: pb.lerp(pc, (m.p - m.b) / m.a),
            m_c: pc.lerp(pa, (m.p - m.c) / m.b),
            n_c: pa.lerp(pb, (m.p - m.a) / m.c),
        }
    }

    pub fn bary_to_point(&self, b: BaryCoords) -> Result<Point2, TriangleError> {
        let sum = b.u + b.v + b.w;
        let mag = b.u.abs().max(b.v.abs()).max(b.w.abs());
        if !(sum.abs() > 1e-14 * mag) || !sum.is_finite() {
            return Err(TriangleError::ZeroBary);
        }
        let [pa, pb, pc] = self.vertices;
        // translate to A first to keep the weighted sum well conditioned
        Ok(pa + ((pb - pa) * b.v + (pc - pa) * b.w) / sum)
    }

    /// Normalized (areal) barycentric coordinates of `q`.
    pub fn point_to_bary(&self, q: Point2) -> BaryCoords {
        let [pa, pb, pc] = self.vertices;
        let total = (pb - pa).cross(pc - pa);
        BaryCoords::new(
            (pb - q).cross(pc - q) / total,
            (pc - q).cross(pa - q) / total,
            (pa - q).cross(pb - q) / total,
        )
    }

    /// Cevian `AL`, `AG_e` lengths and the ratio `LG_e / AG_e`, measured on the figure.
    pub fn gergonne_cevian_ratios(&self) -> CevianRatios {
        let pa = self.vertices[0];
        let l = self.contact_points().l;
        let ge = self.gergonne_point();
        let al = pa.dist(l);
        let age = pa.dist(ge);
        CevianRatios {
            al_len: al,
            age_len: age,
            lge_over_age: l.dist(ge) / age,
        }
    }
}

/// Area from side lengths by the numerically stable form of Heron's formula.
pub fn heron(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    let prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * prod.max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleMetrics {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Semiperimeter.
    pub p: f64,
    pub area: f64,
    /// Twice the area.
    pub s: f64,
    pub r: f64,
    pub big_r: f64,
    /// `(4R + r) / p`.
    pub w: f64,
}

impl TriangleMetrics {
    pub fn from_sides(a: f64, b: f64, c: f64) -> TriangleMetrics {
        let p = (a + b + c) / 2.0;
        let area = heron(a, b, c);
        let r = area / p;
        let big_r = a * b * c / (4.0 * area);
        TriangleMetrics {
            a,
            b,
            c,
            p,
            area,
            s: 2.0 * area,
            r,
            big_r,
            w: (4.0 * big_r + r) / p,
        }
    }

    pub fn side(&self, v: Vertex) -> f64 {
        [self.a, self.b, self.c][v.index()]
    }

    /// Metrics with `v` playing the role of `A`.
    pub fn relabeled(&self, v: Vertex) -> TriangleMetrics {
        let s = [self.a, self.b, self.c];
        let i = v.index();
        TriangleMetrics {
            a: s[i],
            b: s[(i + 1) % 3],
            c: s[(i + 2) % 3],
            ..*self
        }
    }

    /// `tan(V/2) = r / (p - side)`.
    pub fn half_tan(&self, v: Vertex) -> f64 {
        self.r / (self.p - self.side(v))
    }

    pub fn angle(&self, v: Vertex) -> f64 {
        2.0 * self.half_tan(v).atan()
    }

    /// Conway's `S_A = (b² + c² − a²)/2`, and cyclically.
    pub fn conway(&self, v: Vertex) -> f64 {
        let m = self.relabeled(v);
        (m.b * m.b + m.c * m.c - m.a * m.a) / 2.0
    }
}

/// Homogeneous barycentric coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaryCoords {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BaryCoords {
    pub const fn new(u: f64, v: f64, w: f64) -> BaryCoords {
        BaryCoords { u, v, w }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }

    /// Rotate components so that index `v` comes first, matching [`Triangle::relabeled`].
    pub fn relabeled(&self, v: Vertex) -> BaryCoords {
        let c = self.as_array();
        let i = v.index();
        BaryCoords::new(c[i], c[(i + 1) % 3], c[(i + 2) % 3])
    }

    /// Inverse of [`BaryCoords::relabeled`].
    pub fn unrelabeled(&self, v: Vertex) -> BaryCoords {
        let c = self.as_array();
        let i = v.index();
        let mut out = [0.0; 3];
        for (k, x) in c.iter().enumerate() {
            out[(k + i) % 3] = *x;
        }
        BaryCoords::new(out[0], out[1], out[2])
    }

    /// Projective equality: all 2×2 minors vanish relative to the magnitudes.
    pub fn proj_eq(&self, o: &BaryCoords, rel: f64) -> bool {
        let x = self.as_array();
        let y = o.as_array();
        let nx = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let ny = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if nx == 0.0 || ny == 0.0 {
            return false;
        }
        (0..3).all(|i| {
            let j = (i + 1) % 3;
            (x[i] * y[j] - x[j] * y[i]).abs() <= rel * nx * ny
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactPoints {
    /// On `BC`.
    pub l: Point2,
    /// On `CA`.
    pub m_c: Point2,
    /// On `AB`.
    pub n_c: Point2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CevianRatios {
    pub al_len: f64,
    pub age_len: f64,
    pub lge_over_age: f64,
}

impl CevianRatios {
    /// Closed forms for the same three quantities.
    pub fn closed_form(m: &TriangleMetrics) -> CevianRatios {
        let (a, b, c, p) = (m.a, m.b, m.c, m.p);
        let k = a * p - (b - c) * (b - c);
        CevianRatios {
            al_len: ((p - a) * k / a).sqrt(),
            age_len: (p - a) * (a * (p - a) * k).sqrt() / (p * m.r * m.w),
            lge_over_age: (p - b) * (p - c) / (a * (p - a)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{are_concurrent, Tolerance};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn right_345() -> Triangle {
        // legs on the axes, right angle at C
        Triangle::new(
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 3.0),
            Point2::new(0.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn metrics_345() {
        let m = Triangle::from_sides(3.0, 4.0, 5.0).unwrap().metrics();
        assert_relative_eq!(m.p, 6.0);
        assert_relative_eq!(m.area, 6.0, max_relative = 1e-15);
        assert_relative_eq!(m.r, 1.0, max_relative = 1e-15);
        assert_relative_eq!(m.big_r, 2.5, max_relative = 1e-15);
        assert_relative_eq!(m.w, 11.0 / 6.0, max_relative = 1e-15);
    }

    #[test]
    fn metrics_equilateral() {
        let m = TriangleMetrics::from_sides(2.0, 2.0, 2.0);
        assert_relative_eq!(m.r, 1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(m.big_r, 2.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(m.w, 3f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            Triangle::new(Point2::ORIGIN, Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)),
            Err(TriangleError::DegenerateTriangle)
        );
        assert_eq!(
            Triangle::from_sides(1.0, 2.0, 3.0),
            Err(TriangleError::DegenerateTriangle)
        );
        assert_eq!(
            Triangle::new(Point2::ORIGIN, Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)),
            Err(TriangleError::Clockwise)
        );
    }

    #[test]
    fn centers_345() {
        let t = right_345();
        let i = t.incenter();
        assert_relative_eq!(i.x, 1.0, max_relative = 1e-14);
        assert_relative_eq!(i.y, 1.0, max_relative = 1e-14);
        let e = t.excenter(Vertex::C);
        assert_relative_eq!(e.x, 6.0, max_relative = 1e-14);
        assert_relative_eq!(e.y, 6.0, max_relative = 1e-14);
    }

    #[test]
    fn gergonne_345_on_cevians() {
        let t = Triangle::from_sides(3.0, 4.0, 5.0).unwrap();
        let g = t.gergonne_point();
        let b = t.point_to_bary(g);
        // (1/(p-a) : 1/(p-b) : 1/(p-c)) = (1/3 : 1/2 : 1)
        assert!(b.proj_eq(&BaryCoords::new(1.0 / 3.0, 0.5, 1.0), 1e-12));
        let cp = t.contact_points();
        let [pa, pb, pc] = t.vertices;
        let l1 = Line2::through(pa, cp.l).unwrap();
        let l2 = Line2::through(pb, cp.m_c).unwrap();
        let l3 = Line2::through(pc, cp.n_c).unwrap();
        assert!(are_concurrent(&l1, &l2, &l3, 5.0, &Tolerance::default()).holds);
        assert!(l1.distance(g) < 1e-12);
    }

    #[test]
    fn equilateral_centers_coincide() {
        let t = Triangle::from_sides(2.0, 2.0, 2.0).unwrap();
        let cen = t.bary_to_point(BaryCoords::new(1.0, 1.0, 1.0)).unwrap();
        assert!(t.incenter().dist(cen) < 1e-15);
        assert!(t.gergonne_point().dist(cen) < 1e-15);
    }

    #[test]
    fn bary_basics() {
        let t = Triangle::from_sides(4.0, 5.0, 6.0).unwrap();
        assert_eq!(
            t.bary_to_point(BaryCoords::new(1.0, 0.0, 0.0)).unwrap(),
            t.vertices[0]
        );
        assert_eq!(
            t.bary_to_point(BaryCoords::new(1.0, -1.0, 0.0)),
            Err(TriangleError::ZeroBary)
        );
    }

    #[test]
    fn cevian_ratios_equilateral_and_456() {
        let t = Triangle::from_sides(2.0, 2.0, 2.0).unwrap();
        let c = t.gergonne_cevian_ratios();
        assert_relative_eq!(c.al_len, 3f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(c.lge_over_age, 0.5, max_relative = 1e-13);

        let t = Triangle::from_sides(4.0, 5.0, 6.0).unwrap();
        let m = t.metrics();
        let got = t.gergonne_cevian_ratios();
        let want = CevianRatios::closed_form(&m);
        assert_relative_eq!(got.al_len, want.al_len, max_relative = 1e-12);
        assert_relative_eq!(got.age_len, want.age_len, max_relative = 1e-12);
        assert_relative_eq!(got.lge_over_age, want.lge_over_age, max_relative = 1e-12);
        assert_relative_eq!(
            got.al_len / got.age_len,
            1.0 + (m.p - m.b) * (m.p - m.c) / (m.a * (m.p - m.a)),
            max_relative = 1e-12
        );
    }

    fn sides() -> impl Strategy<Value = (f64, f64, f64)> {
        (0.5..5.0f64, 0.5..5.0f64, 0.5..5.0f64).prop_filter("triangle inequality", |(a, b, c)| {
            let m = a.max(*b).max(*c);
            2.0 * m < a + b + c - 1e-3
        })
    }

    proptest! {
        #[test]
        fn half_angle_lemmas((a, b, c) in sides()) {
            let m = TriangleMetrics::from_sides(a, b, c);
            let [x, y, z] = Vertex::ALL.map(|v| m.half_tan(v));
            prop_assert!((x + y + z - m.w).abs() <= 1e-10 * m.w);
            prop_assert!((x * y + y * z + z * x - 1.0).abs() <= 1e-10);
            prop_assert!((x * y * z - m.r / m.p).abs() <= 1e-10 * m.r / m.p);
            let rw = (2.0 * (a * b + b * c + c * a) - a * a - b * b - c * c) / (2.0 * (a + b + c));
            prop_assert!((m.r * m.w - rw).abs() <= 1e-10 * rw);
            for v in Vertex::ALL {
                let k = m.relabeled(v);
                let w2 = k.r / (k.p - k.a) * (k.a * (k.p - k.a) / ((k.p - k.b) * (k.p - k.c)) + 1.0);
                prop_assert!((w2 - m.w).abs() <= 1e-10 * m.w);
            }
            prop_assert!(m.w >= 3f64.sqrt() * (1.0 - 1e-12));
        }

        #[test]
        fn bary_roundtrip((a, b, c) in sides(), u in 0.05..1.0f64, v in 0.05..1.0f64, w in 0.05..1.0f64) {
            let t = Triangle::from_sides(a, b, c).unwrap();
            let q = t.bary_to_point(BaryCoords::new(u, v, w)).unwrap();
            let back = t.bary_to_point(t.point_to_bary(q)).unwrap();
            prop_assert!(back.dist(q) <= 1e-12 * t.diameter());
        }

        #[test]
        fn contact_and_centers((a, b, c) in sides()) {
            let t = Triangle::from_sides(a, b, c).unwrap();
            let m = t.metrics();
            let i = t.incenter();
            for v in Vertex::ALL {
                prop_assert!((t.side_line(v).signed_distance(i) - m.r).abs() <= 1e-10 * t.diameter());
                let e = t.excenter(v);
                let re = m.area / (m.p - m.side(v));
                prop_assert!((t.side_line(v).signed_distance(e) + re).abs() <= 1e-9 * re.max(1.0));
                prop_assert!((t.side_line(v.next()).signed_distance(e) - re).abs() <= 1e-9 * re.max(1.0));
            }
            let cp = t.contact_points();
            let [pa, pb, pc] = t.vertices;
            prop_assert!((pb.dist(cp.l) - (m.p - m.b)).abs() <= 1e-12 * m.p);
            prop_assert!((pc.dist(cp.l) - (m.p - m.c)).abs() <= 1e-12 * m.p);
            prop_assert!((pa.dist(cp.m_c) - (m.p - m.a)).abs() <= 1e-12 * m.p);
        }
    }
}
