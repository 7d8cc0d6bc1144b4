//! One side's configuration: the arc `ω`, the Ajima circle `γ` inscribed in the
//! opposite angle and externally tangent to `ω`, and the named auxiliary points.
//!
//! Everything is computed in the frame where the working side is `a = BC`; the
//! other sides are handled by [`Triangle::relabeled`].

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{
    intersect_line_circle, Circle2, Line2, Point2, TangencyKind, Tolerance,
};
use crate::triangle::{Triangle, TriangleMetrics, Vertex};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum AjimaError {
    #[error("theta {0}° outside (0°, 360°)")]
    ThetaOutOfRange(f64),
    #[error("no interior Ajima circle: signed radius {rho}")]
    ExtendedCaseOnly { rho: f64 },
    #[error("bisection bracket has no sign change")]
    NoRoot,
    #[error("construction failed: {0}")]
    Construction(Undefined),
}

/// Why an auxiliary point does not exist for a given configuration.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Undefined {
    #[error("lines are parallel")]
    Parallel,
    #[error("line is tangent to the circle")]
    Tangent,
    #[error("line misses the circle")]
    NoIntersection,
    #[error("defining points coincide")]
    Coincident,
    #[error("required point is undefined")]
    Upstream,
}

pub type Aux = Result<Point2, Undefined>;

/// Where the second intersection of line `AC` with `ω` falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JPosition {
    BetweenAC,
    BeyondC,
    BeyondA,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcGeometry {
    pub side: Vertex,
    pub theta_deg: f64,
    pub theta: f64,
    /// `tan(θ/4)`.
    pub t: f64,
    pub center: Point2,
    pub radius: f64,
    /// Midpoint of the arc `BC` on the far side from `T`.
    pub midarc_n: Point2,
    /// Unit normal to `BC` pointing into the triangle.
    pub inward: Point2,
}

impl ArcGeometry {
    pub fn circle(&self) -> Circle2 {
        Circle2::new(self.center, self.radius)
    }

    /// Midpoint of the arc of measure `θ` itself.
    pub fn arc_midpoint(&self) -> Point2 {
        self.center + self.inward * self.radius
    }
}

fn check_theta(theta_deg: f64) -> Result<f64, AjimaError> {
    if !(theta_deg > 0.0 && theta_deg < 360.0) {
        return Err(AjimaError::ThetaOutOfRange(theta_deg));
    }
    Ok(theta_deg.to_radians())
}

/// `tan(θ/4)` for `θ` in degrees.
pub fn t_of(theta_deg: f64) -> f64 {
    (theta_deg.to_radians() / 4.0).tan()
}

/// Inverse of [`t_of`].
pub fn theta_of(t: f64) -> f64 {
    4.0 * t.atan().to_degrees()
}

pub fn build_arc(tri: &Triangle, side: Vertex, theta_deg: f64) -> Result<ArcGeometry, AjimaError> {
    let theta = check_theta(theta_deg)?;
    let [_, pb, pc] = tri.relabeled(side).vertices;
    let a = pb.dist(pc);
    let inward = (pc - pb).perp() / a;
    let mid = pb.midpoint(pc);
    let half = theta / 2.0;
    // signed offset along the inward normal: below BC for θ < 180°
    let center = mid - inward * (a / 2.0 * half.cos() / half.sin());
    let radius = a / (2.0 * half.sin());
    Ok(ArcGeometry {
        side,
        theta_deg,
        theta,
        t: (theta / 4.0).tan(),
        center,
        radius,
        midarc_n: center - inward * radius,
        inward,
    })
}

/// The three closed forms for the arc radius: `(a/2)csc(θ/2)`, `a(t²+1)/(4t)`, `R(t²+1)sin A/(2t)`.
pub fn arc_radius_forms(m: &TriangleMetrics, side: Vertex, theta_deg: f64) -> [f64; 3] {
    let theta = theta_deg.to_radians();
    let t = (theta / 4.0).tan();
    let a = m.side(side);
    [
        a / 2.0 / (theta / 2.0).sin(),
        a * (t * t + 1.0) / (4.0 * t),
        m.big_r * (t * t + 1.0) * m.angle(side).sin() / (2.0 * t),
    ]
}

/// Signed Ajima radius `r(1 − tan(A/2)·t)`; negative when the interior circle does not exist.
pub fn ajima_radius(m: &TriangleMetrics, v: Vertex, t: f64) -> f64 {
    m.r * (1.0 - m.half_tan(v) * t)
}

/// The three closed forms of the Ajima radius, in the order tangent, `rt/(p−a)`, area.
pub fn ajima_radius_forms(m: &TriangleMetrics, v: Vertex, t: f64) -> [f64; 3] {
    let k = m.relabeled(v);
    [
        ajima_radius(m, v, t),
        k.r * (1.0 - k.r * t / (k.p - k.a)),
        (k.area - (k.p - k.b) * (k.p - k.c) * t) / k.p,
    ]
}

/// Center of the (possibly extended) Ajima circle on the bisector line from the vertex,
/// at signed distance `ρ / sin(A/2)`.
pub fn signed_center(tri: &Triangle, v: Vertex, rho: f64) -> Point2 {
    let w = tri.relabeled(v);
    let [pa, _, _] = w.vertices;
    let i = w.incenter();
    let m = w.metrics();
    let k = m.r / pa.dist(i);
    pa + (i - pa) / pa.dist(i) * (rho / k)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AjimaConfiguration {
    pub arc: ArcGeometry,
    /// The working triangle, relabeled so that the side is `BC`.
    pub tri: Triangle,
    pub metrics: TriangleMetrics,
    pub incenter: Point2,
    pub d: Point2,
    pub rho: f64,
    pub t_touch: Point2,
    /// Touch point of `γ` on `AC`.
    pub e: Point2,
    /// Touch point of `γ` on `AB`.
    pub f_t: Point2,
    /// Incircle touch point on `AC`.
    pub h: Point2,
    /// Incircle touch point on `BC`.
    pub l: Point2,
    pub n: Point2,
    pub mid: Point2,
    /// `AL ∩ γ` nearer `L`.
    pub lp: Point2,
    /// `AL ∩ γ` nearer `A`.
    pub x: Point2,
    pub j: Aux,
    pub j_position: Option<JPosition>,
    /// Second intersection of `AT` with `γ`.
    pub y: Aux,
    /// Nearer intersection of `AT` with the incircle.
    pub yp: Aux,
    /// Farther intersection of `AT` with the incircle.
    pub t_incircle: Aux,
    /// Second intersection of line `IT` with `γ`.
    pub tp: Aux,
    /// `TI ∩ BC`.
    pub z: Aux,
    /// `AT ∩ BC`.
    pub m_t: Aux,
    /// `AI ∩ EF_t`.
    pub g: Aux,
    /// `EF_t ∩ BC`.
    pub k_x: Aux,
    /// Point on `AC` where the parallel to `BJ` through `I` lands.
    pub f_par: Aux,
}

impl AjimaConfiguration {
    pub fn gamma(&self) -> Circle2 {
        Circle2::new(self.d, self.rho)
    }

    pub fn incircle(&self) -> Circle2 {
        Circle2::new(self.incenter, self.metrics.r)
    }

    pub fn a(&self) -> Point2 {
        self.tri.vertices[0]
    }

    pub fn b(&self) -> Point2 {
        self.tri.vertices[1]
    }

    pub fn c(&self) -> Point2 {
        self.tri.vertices[2]
    }

    pub fn scale(&self) -> f64 {
        self.tri.diameter()
    }

    pub fn line_bc(&self) -> Line2 {
        Line2::through(self.b(), self.c()).expect("validated triangle")
    }
}

pub(crate) fn line(p: Point2, q: Point2) -> Result<Line2, Undefined> {
    let scale = p.norm().max(q.norm()).max(1e-300);
    if p.dist(q) <= 1e-13 * scale {
        return Err(Undefined::Coincident);
    }
    Line2::through(p, q).map_err(|_| Undefined::Coincident)
}

pub(crate) fn meet(l1: &Line2, l2: &Line2) -> Aux {
    if l1.d.cross(l2.d).abs() < 1e-12 {
        return Err(Undefined::Parallel);
    }
    l1.intersect(l2).map_err(|_| Undefined::Parallel)
}

/// The intersection of `l` with `c` farther from `known`, which is expected to be on both.
pub(crate) fn other_intersection(l: &Line2, c: &Circle2, known: Point2) -> Aux {
    let pts = intersect_line_circle(l, c);
    match pts.as_slice() {
        [] => Err(Undefined::NoIntersection),
        [_] => Err(Undefined::Tangent),
        [p, q] => Ok(if p.dist(known) >= q.dist(known) { *p } else { *q }),
        _ => unreachable!(),
    }
}

/// Both intersections ordered by distance from `from`.
pub(crate) fn intersections_by_distance(l: &Line2, c: &Circle2, from: Point2) -> Result<[Point2; 2], Undefined> {
    let pts = intersect_line_circle(l, c);
    match pts.as_slice() {
        [] => Err(Undefined::NoIntersection),
        [p] => Ok([*p, *p]),
        [p, q] => Ok(if p.dist(from) <= q.dist(from) { [*p, *q] } else { [*q, *p] }),
        _ => unreachable!(),
    }
}

/// Closed-form construction of `γ` and its auxiliary points.
pub fn build_gamma(tri: &Triangle, arc: &ArcGeometry) -> Result<AjimaConfiguration, AjimaError> {
    let w = tri.relabeled(arc.side);
    let m = w.metrics();
    let [pa, pb, pc] = w.vertices;
    let rho = ajima_radius(&m, Vertex::A, arc.t);
    let tol = Tolerance::default();
    if rho <= tol.eps(m.r) {
        return Err(AjimaError::ExtendedCaseOnly { rho });
    }
    let i = w.incenter();
    let d = signed_center(&w, Vertex::A, rho);
    let o = arc.center;
    let t_touch = d + (o - d) * (rho / (rho + arc.radius));

    let ab = Line2::through(pa, pb).expect("validated triangle");
    let ac = Line2::through(pa, pc).expect("validated triangle");
    let bc = Line2::through(pb, pc).expect("validated triangle");
    let e = ac.project(d);
    let f_t = ab.project(d);
    let h = pa.lerp(pc, (m.p - m.a) / m.b);
    let l = pb.lerp(pc, (m.p - m.b) / m.a);
    let mid = pb.midpoint(pc);
    let gamma = Circle2::new(d, rho);
    let incircle = Circle2::new(i, m.r);
    let omega = arc.circle();

    // homothety at A maps the incircle to γ, carrying L to L′
    let lp = pa + (l - pa) * (rho / m.r);
    let al = Line2::through(pa, l).expect("L differs from A");
    let x = match intersections_by_distance(&al, &gamma, pa) {
        Ok([near, far]) => {
            if far.dist(lp) <= near.dist(lp) {
                near
            } else {
                far
            }
        }
        Err(_) => lp,
    };

    let (j, j_position) = match other_intersection(&ac, &omega, pc) {
        Ok(j) => {
            let s = ac.param(j);
            let pos = if s < 0.0 {
                JPosition::BeyondA
            } else if s > m.b {
                JPosition::BeyondC
            } else {
                JPosition::BetweenAC
            };
            (Ok(j), Some(pos))
        }
        Err(e) => (Err(e), None),
    };

    let at = line(pa, t_touch);
    let y = at.and_then(|l| other_intersection(&l, &gamma, t_touch));
    let (yp, t_incircle) = match at.and_then(|l| intersections_by_distance(&l, &incircle, pa)) {
        Ok([near, far]) => (Ok(near), Ok(far)),
        Err(e) => (Err(e), Err(e)),
    };
    let it = line(i, t_touch);
    let tp = it.and_then(|l| other_intersection(&l, &gamma, t_touch));
    let z = it.and_then(|l| meet(&l, &bc));
    let m_t = at.and_then(|l| meet(&l, &bc));
    let ef = line(e, f_t);
    let g = ef.and_then(|l| meet(&l, &Line2::through(pa, i).expect("I differs from A")));
    let k_x = ef.and_then(|l| meet(&l, &bc));
    let f_par = j
        .and_then(|j| line(pb, j))
        .and_then(|bj| meet(&bj.parallel_through(i), &ac));

    Ok(AjimaConfiguration {
        arc: *arc,
        tri: w,
        metrics: m,
        incenter: i,
        d,
        rho,
        t_touch,
        e,
        f_t,
        h,
        l,
        n: arc.midarc_n,
        mid,
        lp,
        x,
        j,
        j_position,
        y,
        yp,
        t_incircle,
        tp,
        z,
        m_t,
        g,
        k_x,
        f_par,
    })
}

/// Second construction route: `N → I` meets `ω` at `T`; the center is then the point of
/// the bisector whose circle through `T` touches both sides, taking the root tangent to `ω`.
pub fn build_gamma_midarc(tri: &Triangle, arc: &ArcGeometry) -> Result<Circle2, AjimaError> {
    let w = tri.relabeled(arc.side);
    let [pa, pb, pc] = w.vertices;
    let i = w.incenter();
    let ni = line(arc.midarc_n, i).map_err(AjimaError::Construction)?;
    let t = other_intersection(&ni, &arc.circle(), arc.midarc_n).map_err(AjimaError::Construction)?;
    let u = (i - pa).normalized().expect("I differs from A");
    let sin_half = (crate::kernel::angle_at(pb, pa, pc).expect("validated triangle") / 2.0).sin();
    // |A + s·u − T| = s·sin(A/2)
    let q = t - pa;
    let (qa, qb, qc) = (1.0 - sin_half * sin_half, -2.0 * u.dot(q), q.norm_sq());
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return Err(AjimaError::NoRoot);
    }
    let sq = disc.sqrt();
    // cancellation-free pair of roots
    let k = -0.5 * (qb + sq.copysign(qb));
    let roots = [k / qa, qc / k];
    let miss = |s: f64| ((pa + u * s).dist(arc.center) - (s * sin_half + arc.radius)).abs();
    let s = if miss(roots[0]) <= miss(roots[1]) { roots[0] } else { roots[1] };
    Ok(Circle2::new(pa + u * s, s * sin_half))
}

/// Independent oracle: bisection on the center's distance `s` from `A` along the bisector
/// for `|center(s) − O| = ρ(s) + R`, with `ρ(s) = s·sin(A/2)`.
pub fn ajima_oracle(tri: &Triangle, arc: &ArcGeometry) -> Result<Circle2, AjimaError> {
    let w = tri.relabeled(arc.side);
    let [pa, pb, pc] = w.vertices;
    let half_a = crate::kernel::angle_at(pb, pa, pc).expect("validated triangle") / 2.0;
    let k = half_a.sin();
    let dir = crate::kernel::bisector(pb, pa, pc, crate::kernel::BisectorKind::Internal)
        .expect("validated triangle")
        .d;
    let i = w.incenter();
    let s_max = pa.dist(i);
    let g = |s: f64| (pa + dir * s).dist(arc.center) - (s * k + arc.radius);
    let (mut lo, mut hi) = (0.0, s_max);
    let (g_lo, g_hi) = (g(lo), g(hi));
    if g_lo == 0.0 {
        return Ok(Circle2::new(pa, 0.0));
    }
    if g_lo.signum() == g_hi.signum() {
        return Err(AjimaError::NoRoot);
    }
    let stop = 1e-13 * w.diameter();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 || (hi - lo) <= 1e-16 * s_max {
            lo = mid;
            hi = mid;
            break;
        }
        if gm.signum() == g_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        if gm.abs() <= stop && (hi - lo) <= 1e-15 * s_max {
            break;
        }
    }
    let s = 0.5 * (lo + hi);
    Ok(Circle2::new(pa + dir * s, s * k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VariantLabel {
    C1,
    C2,
    C3,
    C4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantCircle {
    pub label: VariantLabel,
    pub circle: Circle2,
    /// Signed position of the center along the bisector from `A` (negative: opposite ray).
    pub s: f64,
    pub kind: TangencyKind,
    pub touch: Point2,
    pub touch_inside_triangle: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VariantCircles {
    pub circles: Vec<VariantCircle>,
}

impl VariantCircles {
    pub fn get(&self, label: VariantLabel) -> Option<&VariantCircle> {
        self.circles.iter().find(|c| c.label == label)
    }
}

/// All circles centered on the bisector line through `A`, tangent to both side lines
/// and tangent (externally or internally) to `ω`.
///
/// With `w = O − A` and radius `k|s|`, the squared tangency condition on each ray is the
/// quadratic `(1 − k²)s² − 2s(u·w) − 2εσkRs + |w|² − R² = 0`; every root with the
/// right sign is a genuine tangency.
pub fn variant_circles(tri: &Triangle, arc: &ArcGeometry) -> VariantCircles {
    let w_tri = tri.relabeled(arc.side);
    let [pa, pb, pc] = w_tri.vertices;
    let bis = crate::kernel::bisector(pb, pa, pc, crate::kernel::BisectorKind::Internal)
        .expect("validated triangle");
    let u = bis.d;
    let k = (crate::kernel::angle_at(pb, pa, pc).expect("validated triangle") / 2.0).sin();
    let wv = arc.center - pa;
    let big_r = arc.radius;
    let scale = w_tri.diameter();

    let mut found: Vec<(f64, TangencyKind)> = Vec::new();
    for (eps, kind) in [(1.0, TangencyKind::External), (-1.0, TangencyKind::Internal)] {
        for sigma in [1.0, -1.0] {
            let qa = 1.0 - k * k;
            let qb = -2.0 * u.dot(wv) - 2.0 * eps * sigma * k * big_r;
            let qc = wv.norm_sq() - big_r * big_r;
            for s in solve_quadratic(qa, qb, qc) {
                if sigma * s < -1e-12 * scale {
                    continue;
                }
                if found
                    .iter()
                    .any(|(s0, k0)| *k0 == kind && (s0 - s).abs() <= 1e-9 * scale)
                {
                    continue;
                }
                found.push((s, kind));
            }
        }
    }

    let mut ext: Vec<f64> = found
        .iter()
        .filter(|f| f.1 == TangencyKind::External)
        .map(|f| f.0)
        .collect();
    let int: Vec<f64> = found
        .iter()
        .filter(|f| f.1 == TangencyKind::Internal)
        .map(|f| f.0)
        .collect();
    ext.sort_by(|x, y| x.abs().total_cmp(&y.abs()));

    let inside = |q: Point2| {
        let b = w_tri.point_to_bary(q);
        b.u >= -1e-9 && b.v >= -1e-9 && b.w >= -1e-9
    };
    let make = |label, s: f64, kind| {
        let center = pa + u * s;
        let rho = k * s.abs();
        let dir = (arc.center - center).normalized().unwrap_or(arc.inward);
        let touch = match kind {
            TangencyKind::External => center + dir * rho,
            // the touch point is on the far side of whichever circle is smaller
            _ => {
                if rho <= big_r {
                    center - dir * rho
                } else {
                    center + dir * rho
                }
            }
        };
        VariantCircle {
            label,
            circle: Circle2::new(center, rho),
            s,
            kind,
            touch,
            touch_inside_triangle: inside(touch),
        }
    };

    let mut circles = Vec::new();
    for (idx, s) in ext.iter().take(2).enumerate() {
        let label = if idx == 0 { VariantLabel::C1 } else { VariantLabel::C4 };
        circles.push(make(label, *s, TangencyKind::External));
    }
    let mut int_circles: Vec<VariantCircle> = int
        .iter()
        .map(|s| make(VariantLabel::C2, *s, TangencyKind::Internal))
        .collect();
    // touch inside the triangle first, then by distance from A
    int_circles.sort_by(|x, y| {
        y.touch_inside_triangle
            .cmp(&x.touch_inside_triangle)
            .then(x.s.abs().total_cmp(&y.s.abs()))
    });
    for (idx, mut c) in int_circles.into_iter().take(2).enumerate() {
        c.label = if idx == 0 { VariantLabel::C2 } else { VariantLabel::C3 };
        circles.push(c);
    }
    circles.sort_by_key(|c| c.label as u8);
    VariantCircles { circles }
}

fn solve_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a.abs() < 1e-300 {
        return if b != 0.0 { vec![-c / b] } else { Vec::new() };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc > -1e-12 * b * b {
            return vec![-b / (2.0 * a)];
        }
        return Vec::new();
    }
    // cancellation-free pair
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// A closed-form length together with its value measured on the figure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measured {
    pub formula: f64,
    pub measured: f64,
}

impl Measured {
    pub fn rel_error(&self) -> f64 {
        (self.formula - self.measured).abs() / self.formula.abs().max(self.measured.abs()).max(1e-300)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lengths {
    /// `A` to the touch point on `AC`.
    pub ak: Measured,
    pub al: Measured,
    pub alp: Measured,
    pub ax: Measured,
    /// Between the incircle and `γ` touch points on `AC`.
    pub hk: Measured,
    pub if_len: Result<Measured, Undefined>,
}

pub fn lengths(cfg: &AjimaConfiguration) -> Lengths {
    let m = &cfg.metrics;
    let (a, b, c, p, r, t) = (m.a, m.b, m.c, m.p, m.r, cfg.arc.t);
    let pa = cfg.a();
    let k = a * p - (b - c) * (b - c);
    let al = ((p - a) * k / a).sqrt();
    Lengths {
        ak: Measured {
            formula: p - a - r * t,
            measured: pa.dist(cfg.e),
        },
        al: Measured {
            formula: al,
            measured: pa.dist(cfg.l),
        },
        alp: Measured {
            formula: cfg.rho / r * al,
            measured: pa.dist(cfg.lp),
        },
        ax: Measured {
            formula: (p - a - r * t) * (a * (p - a)).sqrt() / k.sqrt(),
            measured: pa.dist(cfg.x),
        },
        hk: Measured {
            formula: r * t,
            measured: cfg.h.dist(cfg.e),
        },
        if_len: cfg.f_par.map(|f| Measured {
            formula: r / (cfg.arc.theta / 2.0).sin(),
            measured: cfg.incenter.dist(f),
        }),
    }
}
