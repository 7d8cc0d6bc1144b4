//! Check registry and randomized sampling harness.
//!
//! Every registry entry is a pure function of a [`Context`] (one triangle and one arc
//! measure) returning a dimensionless residual or a not-applicable reason. Per-side
//! predicates are evaluated on all three sides and report the worst residual.

use std::cell::OnceCell;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ajima::{
    ajima_oracle, ajima_radius, ajima_radius_forms, arc_radius_forms, build_arc, build_gamma,
    build_gamma_midarc, lengths, signed_center, theta_of, variant_circles, AjimaConfiguration,
    AjimaError, Aux, JPosition, VariantCircles, VariantLabel,
};
use crate::apollonius::{
    apollonius, bary_d, bary_oa, bary_t, bary_touchpoints, concurrence_t, generic_apollonius_oracle,
    miyamoto_tangency, rho_inner, rho_outer, soddy_line, ApolloniusError, ApolloniusResult, Triad,
};
use crate::identities::{
    identity_suite, radius_relation_suite, scaling_suite, sin2x_residual, SemicircleBaseline,
    TriadMeasurements, TriadScalars,
};
use crate::kernel::{
    bisector, concurrence_distance, intersect_line_circle, radical_center, BisectorKind, Circle2,
    Line2, Point2,
};
use crate::outcome::{all_of, rel, worst, NaKind, NaReason, Outcome};
use crate::triangle::{BaryCoords, CevianRatios, Triangle, TriangleMetrics, Vertex};

pub const REPORT_VERSION: &str = "1";
pub const DEFAULT_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheckId(String),
    #[error("invalid sampling policy: {0}")]
    InvalidPolicy(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleDescriptor {
    pub index: u64,
    pub seed: u64,
    pub sides: [f64; 3],
    pub theta_deg: f64,
    /// Independent per-side measures used by the mixed-arc checks.
    pub thetas_deg: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable { reason: NaReason },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: &'static str,
    pub verdict: Verdict,
    /// Dimensionless; `None` when not applicable.
    pub residual: Option<f64>,
    pub threshold: f64,
    pub sample: SampleDescriptor,
    pub witness: Vec<(String, [f64; 2])>,
}

pub type Witness = Vec<(String, [f64; 2])>;

type CheckFn = fn(&Context, &mut Witness) -> Outcome;

pub struct CheckDef {
    pub id: &'static str,
    pub summary: &'static str,
    run: CheckFn,
}

/// Lazily built constructions shared by all checks on one sample.
pub struct Context {
    pub tri: Triangle,
    pub theta: f64,
    pub thetas: [f64; 3],
    pub metrics: TriangleMetrics,
    pub scale: f64,
    configs: [OnceCell<Result<AjimaConfiguration, AjimaError>>; 3],
    triad: OnceCell<Result<Triad, ApolloniusError>>,
    apol: OnceCell<Result<ApolloniusResult, ApolloniusError>>,
    variants: [OnceCell<VariantCircles>; 3],
}

const NO_GAMMA: NaReason = NaReason::domain("no interior Ajima circle");
const NO_TRIAD: NaReason = NaReason::domain("interior condition fails");

impl Context {
    pub fn new(tri: Triangle, theta: f64) -> Context {
        let thetas = mixed_thetas(&tri.metrics(), theta);
        Context::with_thetas(tri, theta, thetas)
    }

    pub fn with_thetas(tri: Triangle, theta: f64, thetas: [f64; 3]) -> Context {
        Context {
            thetas,
            metrics: tri.metrics(),
            scale: tri.diameter(),
            tri,
            theta,
            configs: Default::default(),
            triad: OnceCell::new(),
            apol: OnceCell::new(),
            variants: Default::default(),
        }
    }

    pub fn config(&self, v: Vertex) -> Result<&AjimaConfiguration, NaReason> {
        self.configs[v.index()]
            .get_or_init(|| build_gamma(&self.tri, &build_arc(&self.tri, v, self.theta)?))
            .as_ref()
            .map_err(|e| match e {
                AjimaError::ThetaOutOfRange(_) => NaReason::domain("theta out of range"),
                _ => NO_GAMMA,
            })
    }

    fn sides(&self, f: impl Fn(&AjimaConfiguration) -> Outcome) -> Outcome {
        worst(Vertex::ALL.map(|v| self.config(v).and_then(&f)))
    }

    pub fn triad(&self) -> Result<&Triad, NaReason> {
        self.triad
            .get_or_init(|| Triad::general(&self.tri, self.theta))
            .as_ref()
            .map_err(|_| NO_TRIAD)
    }

    pub fn apollonius(&self) -> Result<&ApolloniusResult, NaReason> {
        let triad = self.triad()?;
        self.apol
            .get_or_init(|| apollonius(triad))
            .as_ref()
            .map_err(|e| match e {
                ApolloniusError::ConcurrentTriad { .. } => {
                    NaReason::unconstructible("triad nearly concurrent")
                }
                _ => NaReason::unconstructible("Apollonius circle"),
            })
    }

    pub fn variants(&self, v: Vertex) -> Result<&VariantCircles, NaReason> {
        let arc = build_arc(&self.tri, v, self.theta).map_err(|_| NaReason::domain("theta"))?;
        Ok(self.variants[v.index()].get_or_init(|| variant_circles(&self.tri, &arc)))
    }

    /// Residual of a length equality, normalized by the configuration scale.
    fn len(&self, x: f64) -> f64 {
        x.abs() / self.scale
    }
}

fn aux(p: Aux) -> Result<Point2, NaReason> {
    p.map_err(|_| NaReason::unconstructible("auxiliary point undefined"))
}

/// Unsigned angle with a guard against rays too short to define a direction.
fn ang(scale: f64, p: Point2, v: Point2, q: Point2) -> Result<f64, NaReason> {
    if p.dist(v) < 1e-6 * scale || q.dist(v) < 1e-6 * scale {
        return Err(NaReason::unconstructible("degenerate ray"));
    }
    crate::kernel::angle_at(p, v, q).map_err(|_| NaReason::unconstructible("degenerate ray"))
}

fn ln(scale: f64, p: Point2, q: Point2) -> Result<Line2, NaReason> {
    if p.dist(q) < 1e-6 * scale {
        return Err(NaReason::unconstructible("line through coincident points"));
    }
    Line2::through(p, q).map_err(|_| NaReason::unconstructible("degenerate line"))
}

fn collinear(scale: f64, pts: &[Point2]) -> Outcome {
    let mut best = (0, 1, 0.0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[i].dist(pts[j]);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let l = ln(scale, pts[best.0], pts[best.1])?;
    Ok(pts.iter().map(|p| l.distance(*p)).fold(0.0, f64::max) / scale)
}

fn concyclic(scale: f64, pts: &[Point2]) -> Outcome {
    let mut best = (0, 1, 2, 0.0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let a = (pts[j] - pts[i]).cross(pts[k] - pts[i]).abs();
                if a > best.3 {
                    best = (i, j, k, a);
                }
            }
        }
    }
    if best.3 < 1e-10 * scale * scale {
        return Err(NaReason::unconstructible("points nearly collinear"));
    }
    let c = crate::kernel::circle_through(pts[best.0], pts[best.1], pts[best.2])
        .map_err(|_| NaReason::unconstructible("points nearly collinear"))?;
    Ok(pts.iter().map(|p| c.boundary_residual(*p)).fold(0.0, f64::max) / scale)
}

fn parallel(l1: &Line2, l2: &Line2) -> Outcome {
    Ok(l1.d.cross(l2.d).abs())
}

fn perpendicular(l1: &Line2, l2: &Line2) -> Outcome {
    Ok(l1.d.dot(l2.d).abs())
}

fn concurrent(scale: f64, lines: [&Line2; 3]) -> Outcome {
    let max_cross = [(0, 1), (1, 2), (0, 2)]
        .iter()
        .map(|(i, j)| lines[*i].d.cross(lines[*j].d).abs())
        .fold(0.0, f64::max);
    if max_cross < 1e-9 {
        // parallel lines meet at infinity
        return Ok(max_cross);
    }
    let (p, d) = concurrence_distance(lines).map_err(|_| NaReason::unconstructible("parallel"))?;
    // a meeting point far outside the figure is a poorly conditioned witness
    Ok(d / scale.max(p.norm().min(1e6 * scale)))
}

fn bary_gap(tri: &Triangle, b: BaryCoords, q: Point2, scale: f64) -> Outcome {
    let p = tri
        .bary_to_point(b)
        .map_err(|_| NaReason::unconstructible("point at infinity"))?;
    Ok(p.dist(q) / scale)
}

fn angle_diff(x: f64, y: f64) -> Outcome {
    Ok((x - y).abs())
}

// -- configuration properties --------------------------------------------------------

fn p01(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.b(), g.t_touch, g.incenter)?, ang(s, g.incenter, g.t_touch, g.c())?)
    })
}

fn p02(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let (bf, ce) = (g.b().dist(g.f_t), g.c().dist(g.e));
        let (bt, ct) = (g.b().dist(g.t_touch), g.c().dist(g.t_touch));
        Ok(rel(bf * ct, ce * bt, &[]))
    })
}

fn p03(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let z = aux(g.z)?;
        let (bf, ce) = (g.b().dist(g.f_t), g.c().dist(g.e));
        Ok(rel(bf * g.c().dist(z), ce * g.b().dist(z), &[]))
    })
}

fn p04(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| concyclic(c.scale, &[g.e, g.t_touch, g.incenter, g.c()]))
}

fn p05(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.b(), g.t_touch, g.c())?, 2.0 * ang(s, g.incenter, g.e, g.c())?)
    })
}

fn excenter_of(p: Point2, q: Point2, r: Point2) -> Point2 {
    // excenter opposite p of triangle pqr
    let (lp, lq, lr) = (q.dist(r), r.dist(p), p.dist(q));
    (p * -lp + q * lq + r * lr) / (-lp + lq + lr)
}

fn p06(c: &Context, w: &mut Witness) -> Outcome {
    let mut parts = Vec::new();
    for v in Vertex::ALL {
        parts.push(c.config(v).and_then(|g| {
            if g.j_position != Some(JPosition::BetweenAC) {
                return Err(NaReason::domain("J not between A and C"));
            }
            let j = aux(g.j)?;
            // excircle of BJC opposite C
            let x = excenter_of(g.c(), g.b(), j);
            w.push((format!("X_ex:{}", v.side_name()), [x.x, x.y]));
            collinear(c.scale, &[x, g.f_t, g.e])
        }));
    }
    worst(parts)
}

fn p07(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| collinear(c.scale, &[g.t_touch, g.incenter, g.n]))
}

fn p08(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.n, g.b(), g.c())?, ang(s, g.b(), g.c(), g.n)?)
    })
}

fn p09(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let j = aux(g.j)?;
        parallel(&ln(c.scale, g.incenter, g.e)?, &ln(c.scale, g.n, j)?)
    })
}

fn p10(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let f = aux(g.f_par)?;
        Ok(c.len(g.incenter.dist(f) - f.dist(g.e)))
    })
}

fn p11(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        let foot = g.line_bc().project(g.t_touch);
        angle_diff(
            ang(s, g.b(), g.t_touch, foot)?,
            ang(s, g.arc.center, g.t_touch, g.c())?,
        )
    })
}

/// Read with line angles and the ray from `O` towards the arc holding `T`; below 180° that
/// ray points at the midpoint of `BC`.
fn p12(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        let o = g.arc.center;
        let lhs = ang(s, g.arc.arc_midpoint(), o, g.t_touch)?;
        let ito = ang(s, g.incenter, g.t_touch, o)?;
        angle_diff(lhs, 2.0 * ito.min(std::f64::consts::PI - ito))
    })
}

fn p13(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| perpendicular(&ln(c.scale, aux(g.tp)?, g.d)?, &g.line_bc()))
}

fn p14(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.e, g.d, aux(g.tp)?)?, ang(s, g.a(), g.c(), g.b())?)
    })
}

// -- incircle properties ---------------------------------------------------------------

fn p15(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| perpendicular(&ln(c.scale, g.d, g.lp)?, &g.line_bc()))
}

fn p16(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let tangent = Line2::new(g.lp, (g.lp - g.d).perp())
            .map_err(|_| NaReason::unconstructible("point circle"))?;
        parallel(&tangent, &g.line_bc())
    })
}

fn p17(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        let (y, yp, t2) = (aux(g.y)?, aux(g.yp)?, aux(g.t_incircle)?);
        all_of([
            parallel(&ln(s, y, g.lp)?, &ln(s, yp, g.l)?),
            parallel(&ln(s, g.lp, g.t_touch)?, &ln(s, g.l, t2)?),
            parallel(&ln(s, y, g.d)?, &ln(s, yp, g.incenter)?),
        ])
    })
}

fn p18(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        // the figure has T on C's side of AL; mirror otherwise
        let al = ln(s, g.a(), g.l)?;
        let same_as_c = al.signed_distance(g.t_touch) * al.signed_distance(g.c()) > 0.0;
        let far = if same_as_c { g.b() } else { g.c() };
        angle_diff(ang(s, g.x, g.t_touch, g.lp)?, ang(s, g.x, g.l, far)?)
    })
}

fn k_g(c: &Context, g: &AjimaConfiguration) -> Result<Point2, NaReason> {
    let tl = ln(c.scale, g.t_touch, g.lp)?;
    tl.intersect(&g.line_bc())
        .map_err(|_| NaReason::unconstructible("TL' parallel to BC"))
}

fn p19(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| concyclic(c.scale, &[g.x, g.t_touch, g.l, k_g(c, g)?]))
}

fn p20(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let ext = bisector(g.b(), g.t_touch, g.c(), BisectorKind::External)
            .map_err(|_| NaReason::unconstructible("degenerate angle"))?;
        parallel(&ln(c.scale, g.t_touch, g.lp)?, &ext)
    })
}

fn p21(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        concurrent(s, [&ln(s, g.e, g.f_t)?, &ln(s, g.t_touch, g.lp)?, &g.line_bc()])
    })
}

fn p22(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        concurrent(s, [&ln(s, aux(g.y)?, g.x)?, &ln(s, g.t_touch, g.lp)?, &g.line_bc()])
    })
}

fn p23(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.a(), g.t_touch, g.lp)?, ang(s, g.lp, g.t_touch, g.l)?)
    })
}

fn p24(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| Ok(c.len(g.t_touch.dist(g.l) - g.t_touch.dist(aux(g.t_incircle)?))))
}

fn p25(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        let m = aux(g.m_t)?;
        angle_diff(ang(s, g.l, g.t_touch, g.incenter)?, ang(s, g.incenter, g.t_touch, m)?)
    })
}

fn p26(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.a(), g.t_touch, g.d)?, ang(s, g.incenter, g.l, g.t_touch)?)
    })
}

fn p27(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let m = aux(g.m_t)?;
        let circ = crate::kernel::circle_through(g.t_touch, g.l, m)
            .map_err(|_| NaReason::unconstructible("T, L, M collinear"))?;
        let d = circ.center.dist(g.d);
        let tangent = (d - (circ.radius + g.rho)).abs().min((d - (circ.radius - g.rho).abs()).abs());
        all_of([
            Ok(tangent / c.scale),
            collinear(c.scale, &[circ.center, g.d, g.t_touch]),
        ])
    })
}

fn p28(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.d, g.t_touch, g.incenter)?, ang(s, g.t_touch, g.incenter, g.l)?)
    })
}

fn p29(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| concyclic(c.scale, &[g.x, aux(g.yp)?, g.t_touch, g.l]))
}

fn p30(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        perpendicular(&ln(s, g.incenter, g.t_touch)?, &ln(s, g.t_touch, g.lp)?)
    })
}

fn p31(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| concyclic(c.scale, &[g.x, aux(g.g)?, g.incenter, g.l]))
}

fn p32(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let k = aux(g.k_x)?;
        if k.dist(g.incenter) > 1e3 * c.scale {
            return Err(NaReason::unconstructible("K far away"));
        }
        let mid = k.midpoint(g.incenter);
        let rad = k.dist(g.incenter) / 2.0;
        let pts = [g.x, aux(g.g)?, aux(g.yp)?, g.t_touch, g.incenter, g.l, k];
        Ok(pts.iter().map(|p| (p.dist(mid) - rad).abs()).fold(0.0, f64::max) / c.scale)
    })
}

fn p33(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let s = c.scale;
        angle_diff(ang(s, g.a(), g.t_touch, g.d)?, ang(s, g.incenter, g.x, g.t_touch)?)
    })
}

/// `N` here is the midpoint of the arc that holds `T`.
fn p34(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| collinear(c.scale, &[g.lp, g.t_touch, g.arc.arc_midpoint()]))
}

/// Outer Apollonius circle and `γ` touch internally at the outer touch point; a chord
/// of the outer circle through the center of `γ`, parallel to the opposite side, is cut
/// by `γ`.
fn p35(c: &Context, _: &mut Witness) -> Outcome {
    let triad = c.triad()?;
    let res = c.apollonius()?;
    worst(Vertex::ALL.map(|v| {
        let g = &triad.configs[v.index()];
        let p = res.outer.touch[v.index()];
        let chord = g.line_bc().parallel_through(g.d);
        let outer = intersect_line_circle(&chord, &res.outer.circle());
        let inner = intersect_line_circle(&chord, &g.gamma());
        let ([a, b], [cc, d]) = (two(&outer)?, two(&inner)?);
        let s = c.scale;
        angle_diff(ang(s, a, p, cc)?, ang(s, d, p, b)?)
    }))
}

fn two(pts: &[Point2]) -> Result<[Point2; 2], NaReason> {
    match pts {
        [a, b] => Ok([*a, *b]),
        _ => Err(NaReason::unconstructible("chord misses circle")),
    }
}

// -- formulas against constructions ---------------------------------------------------

fn f01(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let f = aux(g.f_par)?;
        let a = ang(c.scale, g.incenter, f, g.a())?;
        angle_diff(a, g.arc.theta / 2.0)
    })
}

fn f02(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let m = lengths(g).if_len.map_err(|_| NaReason::unconstructible("F undefined"))?;
        Ok(m.rel_error())
    })
}

fn f03(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| angle_diff(ang(c.scale, g.h, g.incenter, g.e)?, g.arc.theta / 4.0))
}

fn f04(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| angle_diff(ang(c.scale, g.d, g.e, g.incenter)?, g.arc.theta / 4.0))
}

fn f05(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| Ok(lengths(g).hk.rel_error() * g.metrics.r / c.scale))
}

fn f06(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let forms = ajima_radius_forms(&c.metrics, g.arc.side, g.arc.t);
        let r = c.metrics.r;
        // measured: distance from the constructed center to both side lines
        let w = &g.tri;
        let ab = w.side_line(Vertex::C).distance(g.d);
        let ac = w.side_line(Vertex::B).distance(g.d);
        Ok(forms
            .iter()
            .chain([ab, ac].iter())
            .map(|f| (f - g.rho).abs() / r)
            .fold(0.0, f64::max))
    })
}

fn f07(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let forms = arc_radius_forms(&c.metrics, g.arc.side, g.arc.theta_deg);
        let o = g.arc.center;
        let mut r = forms
            .iter()
            .chain([o.dist(g.b()), o.dist(g.c())].iter())
            .map(|f| rel(*f, g.arc.radius, &[]))
            .fold(0.0, f64::max);
        let central = ang(c.scale, g.b(), o, g.c())?;
        let want = g.arc.theta.min(std::f64::consts::TAU - g.arc.theta);
        r = r.max((central - want).abs());
        Ok(r)
    })
}

fn f08(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let ls = lengths(g);
        Ok(ls
            .alp
            .rel_error()
            .max(ls.al.rel_error())
            .max(rel(ls.alp.measured / ls.al.measured, g.rho / g.metrics.r, &[])))
    })
}

fn f09(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| Ok(lengths(g).ak.rel_error()))
}

fn f10(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let ls = lengths(g);
        let m = &g.metrics;
        let ratio = m.a * (m.p - m.a) / (m.a * m.p - (m.b - m.c).powi(2));
        Ok(ls.ax.rel_error().max(rel(ls.ax.measured / ls.alp.measured, ratio, &[])))
    })
}

/// The quarter-angle relation with the extended circle on the opposite ray, at an arc
/// measure beyond the interior bound.
fn f11(c: &Context, _: &mut Witness) -> Outcome {
    worst(Vertex::ALL.map(|v| {
        let m = &c.metrics;
        let bound = 2.0 * (180.0 - m.angle(v).to_degrees());
        if bound >= 359.0 {
            return Err(NaReason::domain("no room above the interior bound"));
        }
        let frac = (c.theta / 360.0).clamp(0.05, 0.95);
        let theta = bound + frac * (360.0 - bound);
        let t = crate::ajima::t_of(theta);
        let rho = ajima_radius(m, v, t);
        let w = c.tri.relabeled(v);
        let d = signed_center(&c.tri, v, rho);
        let ac = w.side_line(Vertex::B);
        let e = ac.project(d);
        let mk = w.metrics();
        let h = w.vertices[0].lerp(w.vertices[2], (mk.p - mk.a) / mk.b);
        angle_diff(ang(c.scale, h, w.incenter(), e)?, theta.to_radians() / 4.0)
    }))
}

fn c01(c: &Context, _: &mut Witness) -> Outcome {
    worst(Vertex::ALL.map(|v| {
        let g = c.config(v)?;
        let arc = g.arc;
        let mid = build_gamma_midarc(&c.tri, &arc)
            .map_err(|_| NaReason::unconstructible("midarc route"))?;
        let orc = ajima_oracle(&c.tri, &arc).map_err(|_| NaReason::unconstructible("oracle"))?;
        let r = c.metrics.r;
        Ok([
            (mid.radius - g.rho).abs() / r,
            (orc.radius - g.rho).abs() / r,
            mid.center.dist(g.d) / c.scale,
            orc.center.dist(g.d) / c.scale,
        ]
        .into_iter()
        .fold(0.0, f64::max))
    }))
}

// -- triangle lemmas ----------------------------------------------------------------------

fn half_tans(m: &TriangleMetrics) -> [f64; 3] {
    Vertex::ALL.map(|v| (m.angle(v) / 2.0).tan())
}

fn g01(c: &Context, _: &mut Witness) -> Outcome {
    let [x, y, z] = half_tans(&c.metrics);
    Ok(rel(x + y + z, c.metrics.w, &[]))
}

fn g02(c: &Context, _: &mut Witness) -> Outcome {
    let [x, y, z] = half_tans(&c.metrics);
    Ok(rel(x * y + y * z + z * x, 1.0, &[]))
}

fn g03(c: &Context, _: &mut Witness) -> Outcome {
    let [x, y, z] = half_tans(&c.metrics);
    Ok(rel(x * y * z, c.metrics.r / c.metrics.p, &[]))
}

fn g04(c: &Context, _: &mut Witness) -> Outcome {
    let m = &c.metrics;
    let (a, b, cc) = (m.a, m.b, m.c);
    let rhs = (2.0 * (a * b + b * cc + cc * a) - a * a - b * b - cc * cc) / (2.0 * (a + b + cc));
    Ok(rel(m.r * m.w, rhs, &[]))
}

fn g05(c: &Context, _: &mut Witness) -> Outcome {
    all_of(Vertex::ALL.map(|v| {
        let k = c.metrics.relabeled(v);
        let rhs = k.r / (k.p - k.a) * (k.a * (k.p - k.a) / ((k.p - k.b) * (k.p - k.c)) + 1.0);
        Ok(rel(k.w, rhs, &[]))
    }))
}

fn g06(c: &Context, _: &mut Witness) -> Outcome {
    all_of(Vertex::ALL.map(|v| {
        let w = c.tri.relabeled(v);
        let h = w.side_line(Vertex::B).project(w.incenter());
        let k = w.metrics();
        Ok(rel(w.vertices[0].dist(h), k.p - k.a, &[]))
    }))
}

fn g07(c: &Context, _: &mut Witness) -> Outcome {
    all_of(Vertex::ALL.map(|v| {
        let w = c.tri.relabeled(v);
        let got = w.gergonne_cevian_ratios();
        let want = CevianRatios::closed_form(&w.metrics());
        let k = w.metrics();
        let cor = 1.0 + (k.p - k.b) * (k.p - k.c) / (k.a * (k.p - k.a));
        Ok([
            rel(got.al_len, want.al_len, &[]),
            rel(got.age_len, want.age_len, &[]),
            rel(got.lge_over_age, want.lge_over_age, &[]),
            rel(got.al_len / got.age_len, cor, &[]),
        ]
        .into_iter()
        .fold(0.0, f64::max))
    }))
}

fn g08(c: &Context, _: &mut Witness) -> Outcome {
    all_of(Vertex::ALL.map(|v| Ok(sin2x_residual(c.metrics.angle(v) / 2.0))))
}

fn g09(c: &Context, _: &mut Witness) -> Outcome {
    // W ≥ √3, with G_eI = r√(1 − 3/W²) measured
    let m = &c.metrics;
    let gi = c.tri.gergonne_point().dist(c.tri.incenter());
    let want = m.r * (1.0 - 3.0 / (m.w * m.w)).max(0.0).sqrt();
    let below = (3f64.sqrt() - m.w).max(0.0);
    Ok(c.len(gi - want).max(below))
}

// -- general triad --------------------------------------------------------------------------

fn t01(c: &Context, _: &mut Witness) -> Outcome {
    let triad = c.triad()?;
    let g = triad.gammas();
    let want = 2.0 * c.metrics.r * triad.t();
    all_of([(0, 1), (1, 2), (2, 0)].map(|(i, j)| {
        let d = g[i].center.dist(g[j].center);
        let len = (d * d - (g[i].radius - g[j].radius).powi(2)).max(0.0).sqrt();
        Ok(c.len(len - want))
    }))
}

fn t02(c: &Context, _: &mut Witness) -> Outcome {
    let triad = c.triad()?;
    let contact = c.tri.contact_points();
    let touch = [contact.l, contact.m_c, contact.n_c];
    all_of([0, 1, 2].map(|k| {
        let (cb, cc) = (&triad.configs[(k + 1) % 3], &triad.configs[(k + 2) % 3]);
        Ok(cb.f_t.midpoint(cc.e).dist(touch[k]) / c.scale)
    }))
}

fn t03(c: &Context, _: &mut Witness) -> Outcome {
    let triad = c.triad()?;
    let g = triad.gammas();
    let contact = c.tri.contact_points();
    let touch = [contact.l, contact.m_c, contact.n_c];
    let s2 = c.scale * c.scale;
    all_of([0, 1, 2].map(|k| {
        let (gb, gc) = (g[(k + 1) % 3], g[(k + 2) % 3]);
        let vtx = c.tri.vertices[k];
        Ok(((gb.power(vtx) - gc.power(vtx)).abs() / s2)
            .max((gb.power(touch[k]) - gc.power(touch[k])).abs() / s2))
    }))
}

fn t04(c: &Context, w: &mut Witness) -> Outcome {
    let g = c.triad()?.gammas();
    let s = radical_center(&g[0], &g[1], &g[2])
        .map_err(|_| NaReason::unconstructible("centers collinear"))?;
    w.push(("S".into(), [s.x, s.y]));
    Ok(s.dist(c.tri.gergonne_point()) / c.scale)
}

fn t05(c: &Context, _: &mut Witness) -> Outcome {
    let triad = c.triad()?;
    let want = c.metrics.r / (triad.t().atan()).cos();
    let i = c.tri.incenter();
    all_of(
        triad
            .configs
            .iter()
            .flat_map(|g| [g.e, g.f_t])
            .map(|p| Ok(c.len(p.dist(i) - want)))
            .collect::<Vec<_>>(),
    )
}

fn cevians(c: &Context, pts: [Point2; 3]) -> Outcome {
    let s = c.scale;
    let v = c.tri.vertices;
    concurrent(s, [&ln(s, v[0], pts[0])?, &ln(s, v[1], pts[1])?, &ln(s, v[2], pts[2])?])
}

fn t06(c: &Context, _: &mut Witness) -> Outcome {
    let triad = c.triad()?;
    cevians(c, triad.configs.map(|g| g.arc.center))
}

fn t07(c: &Context, _: &mut Witness) -> Outcome {
    let triad = c.triad()?;
    cevians(c, triad.configs.map(|g| g.t_touch))
}

// -- Apollonius circles ---------------------------------------------------------------------

fn a01(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| bary_gap(&c.tri, bary_d(&c.metrics, g.arc.side, g.arc.t), g.d, c.scale))
}

fn a02(c: &Context, _: &mut Witness) -> Outcome {
    worst(Vertex::ALL.map(|v| {
        let arc = build_arc(&c.tri, v, c.theta).map_err(|_| NaReason::domain("theta"))?;
        bary_gap(&c.tri, bary_oa(&c.metrics, v, c.theta), arc.center, c.scale)
    }))
}

fn a03(c: &Context, _: &mut Witness) -> Outcome {
    c.sides(|g| {
        let ratio = g.d + (g.arc.center - g.d) * (g.rho / (g.rho + g.arc.radius));
        let b = bary_t(&c.metrics, g.arc.side, c.theta);
        all_of([
            bary_gap(&c.tri, b, g.t_touch, c.scale),
            bary_gap(&c.tri, b, ratio, c.scale),
        ])
    })
}

fn a04(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let tb = bary_touchpoints(&c.metrics, c.triad()?.t());
    all_of([0, 1, 2].map(|k| bary_gap(&c.tri, tb.u_touch[k], res.inner.touch[k], c.scale)))
}

fn a05(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let tb = bary_touchpoints(&c.metrics, c.triad()?.t());
    let u = c.tri.bary_to_point(tb.u).map_err(|_| NaReason::unconstructible("U"))?;
    let radius = all_of([0, 1, 2].map(|k| {
        let ua = c.tri.bary_to_point(tb.u_touch[k]).map_err(|_| NaReason::unconstructible("Ua"))?;
        Ok(c.len(u.dist(ua) - res.inner.rho.abs()))
    }));
    all_of([bary_gap(&c.tri, tb.u, res.inner.center, c.scale), radius])
}

fn a06(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let tb = bary_touchpoints(&c.metrics, c.triad()?.t());
    all_of([0, 1, 2].map(|k| bary_gap(&c.tri, tb.v_touch[k], res.outer.touch[k], c.scale)))
}

fn a07(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let tb = bary_touchpoints(&c.metrics, c.triad()?.t());
    let v = c.tri.bary_to_point(tb.v).map_err(|_| NaReason::unconstructible("V"))?;
    let radius = all_of([0, 1, 2].map(|k| {
        let va = c.tri.bary_to_point(tb.v_touch[k]).map_err(|_| NaReason::unconstructible("Va"))?;
        Ok(c.len(v.dist(va) - res.outer.rho))
    }));
    all_of([bary_gap(&c.tri, tb.v, res.outer.center, c.scale), radius])
}

fn a08(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let g = c.triad()?.gammas();
    // signed radius: |U D_k| = ρ_i + ρ_k covers both tangency kinds
    all_of(g.map(|gk| Ok(c.len(res.inner.center.dist(gk.center) - (res.inner.rho + gk.radius)))))
}

fn a09(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let g = c.triad()?.gammas();
    all_of(g.map(|gk| Ok(c.len(res.outer.center.dist(gk.center) - (res.outer.rho - gk.radius)))))
}

fn a10(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    Ok((res.inner.rho - rho_inner(&c.metrics, c.triad()?.t())).abs() / c.metrics.r)
}

fn a11(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    Ok((res.outer.rho - rho_outer(&c.metrics, c.triad()?.t())).abs() / c.metrics.r)
}

fn radii(c: &Context) -> Result<(f64, f64, [f64; 3], f64, f64), NaReason> {
    let triad = c.triad()?;
    let res = c.apollonius()?;
    Ok((res.inner.rho, res.outer.rho, triad.configs.map(|g| g.rho), c.metrics.r, triad.t()))
}

fn a12(c: &Context, _: &mut Witness) -> Outcome {
    let (ri, _, rho, r, _) = radii(c)?;
    Ok((ri - (2.0 * r - rho.iter().sum::<f64>())).abs() / r)
}

fn a13(c: &Context, _: &mut Witness) -> Outcome {
    let (ri, ro, _, r, _) = radii(c)?;
    Ok((ri + r - 3.0 * (ro - r)).abs() / r)
}

fn a14(c: &Context, _: &mut Witness) -> Outcome {
    let (ri, ro, _, r, _) = radii(c)?;
    Ok((3.0 * ro - (ri + 4.0 * r)).abs() / r)
}

fn a15(c: &Context, _: &mut Witness) -> Outcome {
    let (ri, ro, rho, r, _) = radii(c)?;
    Ok((3.0 * ro - (2.0 * rho.iter().sum::<f64>() + 3.0 * ri)).abs() / r)
}

fn a16(c: &Context, _: &mut Witness) -> Outcome {
    let (ri, _, rho, r, t) = radii(c)?;
    let rhs = rho.iter().map(|x| x * x).sum::<f64>() + 2.0 * r * r * (t * t - 1.0);
    Ok((ri * ri - rhs).abs() / (r * r))
}

/// At `t = 1/W` the three circles pass through the Gergonne point.
fn a17(c: &Context, w: &mut Witness) -> Outcome {
    let t = concurrence_t(&c.metrics);
    let theta = theta_of(t);
    let triad = Triad::general(&c.tri, theta).map_err(|_| NO_TRIAD)?;
    let ge = c.tri.gergonne_point();
    w.push(("G_e".into(), [ge.x, ge.y]));
    let on = triad
        .gammas()
        .map(|g| g.boundary_residual(ge) / c.scale)
        .into_iter()
        .fold(0.0, f64::max);
    Ok(on.max(rho_inner(&c.metrics, t).abs() / c.metrics.r))
}

/// At `θ = 120°` the three arc circles share a point.
fn a18(c: &Context, w: &mut Witness) -> Outcome {
    let arcs: Vec<Circle2> = Vertex::ALL
        .iter()
        .map(|v| build_arc(&c.tri, *v, 120.0).map(|a| a.circle()))
        .collect::<Result<_, _>>()
        .map_err(|_| NaReason::domain("theta"))?;
    let p = radical_center(&arcs[0], &arcs[1], &arcs[2])
        .map_err(|_| NaReason::unconstructible("centers collinear"))?;
    w.push(("P".into(), [p.x, p.y]));
    Ok(arcs.iter().map(|a| a.boundary_residual(p)).fold(0.0, f64::max) / c.scale)
}

fn soddy(c: &Context) -> Result<crate::apollonius::SoddyReport, NaReason> {
    soddy_line(&c.tri, c.apollonius()?).map_err(|_| NaReason::unconstructible("equilateral"))
}

fn a19(c: &Context, _: &mut Witness) -> Outcome {
    Ok(soddy(c)?.off_line / c.scale)
}

fn a20(c: &Context, _: &mut Witness) -> Outcome {
    let s = soddy(c)?;
    let res = c.apollonius()?;
    let order = if res.inner.rho < 0.0 && !s.order_ge_u_i_v { 1.0 } else { 0.0 };
    Ok(rel(s.ui_over_iv, 3.0, &[]).max(order))
}

fn a21(c: &Context, _: &mut Witness) -> Outcome {
    let s = soddy(c)?;
    let res = c.apollonius()?;
    Ok(c.len(s.pos_u + res.inner.rho / c.metrics.r * s.pos_i))
}

fn a22(c: &Context, _: &mut Witness) -> Outcome {
    let s = soddy(c)?;
    let res = c.apollonius()?;
    Ok(c.len(s.pos_v - res.outer.rho / c.metrics.r * s.pos_i))
}

fn a23(c: &Context, _: &mut Witness) -> Outcome {
    let s = soddy(c)?;
    Ok(c.len(s.ge_i - s.ge_i_formula))
}

fn a24(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let ge = c.tri.gergonne_point();
    let contact = c.tri.contact_points();
    let touch = [contact.l, contact.m_c, contact.n_c];
    all_of([0, 1, 2].map(|k| {
        collinear(
            c.scale,
            &[c.tri.vertices[k], res.inner.touch[k], res.outer.touch[k], touch[k], ge],
        )
    }))
}

fn a25(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let triad = c.triad()?;
    let tangents: Vec<Line2> = (0..3)
        .map(|k| {
            let u = res.inner.touch[k];
            Line2::new(u, (u - triad.configs[k].d).perp())
                .map_err(|_| NaReason::unconstructible("tangent"))
        })
        .collect::<Result<_, _>>()?;
    let par = all_of((0..3).map(|k| parallel(&tangents[k], &c.tri.side_line(Vertex::from_index(k)))));
    // vertex of the tangent triangle opposite tangent k
    let verts: Vec<Point2> = (0..3)
        .map(|k| {
            tangents[(k + 1) % 3]
                .intersect(&tangents[(k + 2) % 3])
                .map_err(|_| NaReason::unconstructible("tangents parallel"))
        })
        .collect::<Result<_, _>>()?;
    let ge = c.tri.gergonne_point();
    let through = all_of((0..3).map(|k| {
        let l = ln(c.scale, c.tri.vertices[k], verts[k])?;
        Ok(l.distance(ge) / c.scale)
    }));
    all_of([par, through])
}

fn a26(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let g = c.triad()?.gammas();
    all_of([0, 1, 2].map(|k| {
        let u = res.inner.touch[k];
        let (gb, gc) = (g[(k + 1) % 3], g[(k + 2) % 3]);
        Ok((gb.power(u) - gc.power(u)).abs() / (c.scale * c.scale))
    }))
}

fn a27(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let g = c.triad()?.gammas();
    let s = radical_center(&g[0], &g[1], &g[2])
        .map_err(|_| NaReason::unconstructible("centers collinear"))?;
    let (u, v) = (res.inner.center, res.outer.center);
    let ratio = rel(s.dist(u) * res.outer.rho, s.dist(v) * res.inner.rho.abs(), &[]);
    let on = if u.dist(v) < 1e-6 * c.scale {
        Ok(0.0)
    } else {
        collinear(c.scale, &[s, u, v])
    };
    all_of([Ok(ratio * s.dist(v) / c.scale), on])
}

fn a28(c: &Context, _: &mut Witness) -> Outcome {
    let res = c.apollonius()?;
    let g = c.triad()?.gammas();
    let solve = |signs| {
        generic_apollonius_oracle(g, signs).map_err(|_| NaReason::unconstructible("solver"))
    };
    let (ui, ri) = solve([1.0; 3])?;
    let (vo, ro) = solve([-1.0; 3])?;
    let r = c.metrics.r;
    Ok([
        ui.dist(res.inner.center) / c.scale,
        (ri - res.inner.rho).abs() / r,
        vo.dist(res.outer.center) / c.scale,
        (ro - res.outer.rho).abs() / r,
    ]
    .into_iter()
    .fold(0.0, f64::max))
}

fn miyamoto(c: &Context, thetas: [f64; 3], w: &mut Witness) -> Outcome {
    let rep = miyamoto_tangency(&c.tri, thetas).map_err(|e| match e {
        ApolloniusError::InteriorViolated { .. } => NaReason::domain("interior condition fails"),
        _ => NaReason::unconstructible("solver"),
    })?;
    let (p, _) = rep.omega_inner;
    w.push((format!("{:?}", rep.kind), [p.x, p.y]));
    Ok(rep.residual / c.scale)
}

fn a29(c: &Context, w: &mut Witness) -> Outcome {
    miyamoto(c, [c.theta; 3], w)
}

/// Per-side arc measures spread below each side's interior bound, for single-θ callers.
pub fn mixed_thetas(m: &TriangleMetrics, theta: f64) -> [f64; 3] {
    let fractions = [0.55, 0.8, 0.95];
    Vertex::ALL.map(|v| {
        let bound = (2.0 * (180.0 - m.angle(v).to_degrees())).min(359.0);
        (theta.min(bound) * fractions[v.index()]).max(1.0)
    })
}

fn a30(c: &Context, w: &mut Witness) -> Outcome {
    miyamoto(c, c.thetas, w)
}

// -- identities and scaling ---------------------------------------------------------------

fn scalars(c: &Context) -> Result<TriadScalars, NaReason> {
    Ok(TriadScalars::from_triad(c.triad()?))
}

fn pick(list: Vec<(&'static str, Outcome)>, id: &str) -> Outcome {
    list.into_iter()
        .find(|(k, _)| *k == id)
        .map(|(_, o)| o)
        .expect("known identity id")
}

macro_rules! identity_check {
    ($name:ident, $suite:ident, $id:literal) => {
        fn $name(c: &Context, _: &mut Witness) -> Outcome {
            pick($suite(&scalars(c)?), $id)
        }
    };
}

identity_check!(i01, identity_suite, "I01_sum_r_minus_rho");
identity_check!(i02, identity_suite, "I02_pair_r_minus_rho");
identity_check!(i03, identity_suite, "I03_prod_r_minus_rho");
identity_check!(i04, identity_suite, "I04_sum_rho");
identity_check!(i05, identity_suite, "I05_expanded_pairs");
identity_check!(i06, identity_suite, "I06_sum_pair_rho");
identity_check!(i07, identity_suite, "I07_sum_sq_rho");
identity_check!(i08, identity_suite, "I08_prod_rho");
identity_check!(i09, radius_relation_suite, "I09_radius_polynomial");
identity_check!(i11, radius_relation_suite, "I11_ra_over_rr");
identity_check!(i12, radius_relation_suite, "I12_t_squared");

fn i10(c: &Context, _: &mut Witness) -> Outcome {
    // independent of the sampled θ
    pick(
        radius_relation_suite(&TriadScalars::closed_form(&c.metrics, c.theta)),
        "I10_theta_360_minus_4a",
    )
}

fn scaling(c: &Context, id: &str) -> Outcome {
    let triad = c.triad()?;
    let res = c.apollonius()?;
    let meas = TriadMeasurements {
        rho: triad.configs.map(|g| g.rho),
        centers: triad.configs.map(|g| g.d),
        rho_i: res.inner.rho,
        rho_o: res.outer.rho,
        inner_center: res.inner.center,
    };
    let base = SemicircleBaseline::new(&c.tri);
    pick(scaling_suite(&scalars(c)?, &meas, &base), id)
}

macro_rules! scaling_check {
    ($name:ident, $id:literal) => {
        fn $name(c: &Context, _: &mut Witness) -> Outcome {
            scaling(c, $id)
        }
    };
}

scaling_check!(s01, "S01_rho_minus_r");
scaling_check!(s02, "S02_rho_minus_rho");
scaling_check!(s03, "S03_tangent_lengths");
scaling_check!(s04, "S04_center_distances");
scaling_check!(s05, "S05_rho_i_plus_r");
scaling_check!(s06, "S06_rho_o_minus_r");
scaling_check!(s07, "S07_apollonius_center_distances");
scaling_check!(s08, "S08_center_distance_closed_form");
scaling_check!(s09, "S09_similar_center_triangles");

// -- variants -------------------------------------------------------------------------------

fn v01(c: &Context, _: &mut Witness) -> Outcome {
    worst(Vertex::ALL.map(|v| {
        let vs = c.variants(v)?;
        let arc = build_arc(&c.tri, v, c.theta).map_err(|_| NaReason::domain("theta"))?;
        let w = c.tri.relabeled(v);
        let (ab, ac) = (w.side_line(Vertex::C), w.side_line(Vertex::B));
        let c1 = vs
            .get(VariantLabel::C1)
            .ok_or(NaReason::unconstructible("no externally tangent variant"))?;
        let rho = ajima_radius(&c.metrics, v, arc.t);
        // the closed form names the interior circle only while it exists
        let mut r = if rho > 0.0 {
            (c1.circle.radius - rho).abs() / c.metrics.r
        } else {
            0.0
        };
        for vc in &vs.circles {
            let sc = c.scale + vc.circle.radius;
            let d = vc.circle.center.dist(arc.center);
            let want = match vc.kind {
                crate::kernel::TangencyKind::External => vc.circle.radius + arc.radius,
                _ => (vc.circle.radius - arc.radius).abs(),
            };
            r = r
                .max((d - want).abs() / (sc + arc.radius))
                .max((ab.distance(vc.circle.center) - vc.circle.radius).abs() / sc)
                .max((ac.distance(vc.circle.center) - vc.circle.radius).abs() / sc);
        }
        Ok(r)
    }))
}

/// For each variant, find which of the incenter and excenters satisfies the bisector
/// property at the touch point, and the concyclicity with the touch point on `AC` and `C`.
fn v02(c: &Context, w: &mut Witness) -> Outcome {
    let centers = [
        ("I", c.tri.incenter()),
        ("I_a", c.tri.excenter(Vertex::A)),
        ("I_b", c.tri.excenter(Vertex::B)),
        ("I_c", c.tri.excenter(Vertex::C)),
    ];
    let s = c.scale;
    worst(Vertex::ALL.map(|v| {
        let vs = c.variants(v)?;
        let wt = c.tri.relabeled(v);
        let [pa, pb, pc] = wt.vertices;
        let ac = wt.side_line(Vertex::B);
        let _ = pa;
        let mut worst_variant = 0.0f64;
        for vc in &vs.circles {
            if vc.circle.radius < 1e-6 * s {
                continue;
            }
            let t = vc.touch;
            let e = ac.project(vc.circle.center);
            let mut best = f64::INFINITY;
            let mut who = "";
            for (name, p) in centers {
                let prot = match (ang(s, pb, t, p), ang(s, p, t, pc)) {
                    (Ok(x), Ok(y)) => {
                        // internal or external bisector of ∠BTC
                        (x - y).abs().min((x + y - std::f64::consts::PI).abs())
                    }
                    _ => continue,
                };
                let cyc = concyclic(s, &[e, t, p, pc]).unwrap_or(f64::INFINITY);
                let r = prot.max(cyc);
                if r < best {
                    best = r;
                    who = name;
                }
            }
            if v == Vertex::A {
                w.push((format!("{:?}:{}", vc.label, who), [t.x, t.y]));
            }
            worst_variant = worst_variant.max(best);
        }
        Ok(worst_variant)
    }))
}

fn v03(c: &Context, _: &mut Witness) -> Outcome {
    c.triad()?;
    let all: Vec<&VariantCircles> = Vertex::ALL
        .iter()
        .map(|v| c.variants(*v))
        .collect::<Result<_, _>>()?;
    let parts = [VariantLabel::C1, VariantLabel::C2, VariantLabel::C3, VariantLabel::C4].map(|label| {
        let touches: Option<Vec<Point2>> = all.iter().map(|vs| vs.get(label).map(|x| x.touch)).collect();
        match touches {
            Some(t) => cevians(c, [t[0], t[1], t[2]]),
            None => Err(NaReason::unconstructible("variant missing on some side")),
        }
    });
    worst(parts)
}

// -- registry -------------------------------------------------------------------------------

macro_rules! registry {
    ($(($id:literal, $f:ident, $summary:literal)),* $(,)?) => {
        pub static REGISTRY: &[CheckDef] = &[$(CheckDef { id: $id, summary: $summary, run: $f }),*];
    };
}

registry![
    ("P01_protasov", p01, "TI bisects angle BTC"),
    ("P02_tangent_ratio", p02, "BF/CE = BT/CT for tangents to a circle touching omega"),
    ("P03_result12", p03, "BF/CE = BZ/CZ"),
    ("P04_catalytic", p04, "E, T, I, C concyclic"),
    ("P05_result3", p05, "angle BTC = 2 angle IEC"),
    ("P06_thailand", p06, "excenter of BJC opposite C, F, E collinear"),
    ("P07_rg13069", p07, "T, I, N collinear"),
    ("P08_midarc", p08, "angle NBC = angle BCN"),
    ("P09_rg13164", p09, "IE parallel to NJ"),
    ("P10_rg13066", p10, "IF = FE"),
    ("P11_result8", p11, "angle BTF = angle OTC with F the foot from T"),
    ("P12_result6", p12, "angle M O T = 2 angle I T O"),
    ("P13_result9", p13, "T'D perpendicular to BC"),
    ("P14_result10", p14, "angle E D T' = angle ACB"),
    ("P15_result24", p15, "DL' perpendicular to BC"),
    ("P16_result27", p16, "tangent at L' parallel to BC"),
    ("P17_result25", p17, "three parallel pairs under the homothety at A"),
    ("P18_result13", p18, "angle XTL' = angle XLB"),
    ("P19_result17", p19, "X, T, L and TL' meet BC concyclic"),
    ("P20_ext_bisector", p20, "TL' is the external bisector of angle BTC"),
    ("P21_result18", p21, "EF, TL', CB concurrent"),
    ("P22_result19", p22, "YX, TL', CB concurrent"),
    ("P23_result14", p23, "TL' bisects angle ATL"),
    ("P24_result16", p24, "TL equals T to the far incircle point of AT"),
    ("P25_result5", p25, "TI bisects angle L T M"),
    ("P26_result1", p26, "angle ATD = angle ILT"),
    ("P27_tlm_tangent", p27, "circle TLM tangent to gamma at T"),
    ("P28_result7", p28, "angle DTI = angle TIL"),
    ("P29_result21", p29, "X, Y', T, L concyclic"),
    ("P30_result20", p30, "IT perpendicular to TL'"),
    ("P31_result22", p31, "X, G, I, L concyclic"),
    ("P32_result23", p32, "seven points on the circle with diameter KI"),
    ("P33_result26", p33, "angle ATD = angle IXT"),
    ("P34_ltn", p34, "L', T, N collinear"),
    ("P35_touching_chord", p35, "chord of internally tangent circles: equal angles at the touch point"),
    ("F01_theta_over_2", f01, "angle IFA = theta/2"),
    ("F02_if_length", f02, "IF = r csc(theta/2)"),
    ("F03_theta_over_4", f03, "angle HIK = theta/4"),
    ("F04_result11", f04, "angle DKI = theta/4"),
    ("F05_kh", f05, "KH = r tan(theta/4)"),
    ("F06_rho_forms", f06, "three closed forms of rho agree with the construction"),
    ("F07_ra_forms", f07, "three closed forms of R_a agree with the construction"),
    ("F08_alp", f08, "AL' = (rho/r) AL"),
    ("F09_ak", f09, "AK = p - a - rt"),
    ("F10_ax", f10, "AX closed form and AX/AL'"),
    ("F11_theta_over_4_extended", f11, "angle HIK = theta/4 for the extended circle"),
    ("C01_three_routes", c01, "closed form, midarc route and bisection oracle agree"),
    ("G01_half_tan_sum", g01, "sum of half-angle tangents = W"),
    ("G02_half_tan_pairs", g02, "pairwise products of half-angle tangents sum to 1"),
    ("G03_half_tan_product", g03, "product of half-angle tangents = r/p"),
    ("G04_rw", g04, "rW in side lengths"),
    ("G05_w2", g05, "W from one side's data"),
    ("G06_ah", g06, "AH = p - a"),
    ("G07_gergonne_cevian", g07, "AL, AGe, LGe/AGe closed forms"),
    ("G08_sin2x", g08, "sin 2x (tan^2 x + 1) = 2 tan x"),
    ("G09_gei", g09, "GeI = r sqrt(1 - 3/W^2) and W >= sqrt 3"),
    ("T01_tangents", t01, "common external tangents = 2rt"),
    ("T02_midpoints", t02, "tangent midpoints are the incircle contact points"),
    ("T03_radical_axis", t03, "radical axis of two circles is the third contact cevian"),
    ("T04_radical_center", t04, "radical center is the Gergonne point"),
    ("T05_sixpoint", t05, "six touch points at distance r sec(theta/4) from I"),
    ("T06_jacobi", t06, "A-O_a, B-O_b, C-O_c concurrent"),
    ("T07_paasche", t07, "A-T_a, B-T_b, C-T_c concurrent"),
    ("A01_bary_d", a01, "barycentrics of D"),
    ("A02_bary_oa", a02, "barycentrics of O_a"),
    ("A03_bary_t", a03, "barycentrics of T"),
    ("A04_coord_ua", a04, "barycentrics of U_a"),
    ("A05_coord_u", a05, "barycentrics of U"),
    ("A06_coord_va", a06, "barycentrics of V_a"),
    ("A07_coord_v", a07, "barycentrics of V"),
    ("A08_inner_tangency", a08, "inner circle tangent to the triad"),
    ("A09_outer_tangency", a09, "outer circle tangent to the triad"),
    ("A10_rho_inner", a10, "rho_i = rtW - r"),
    ("A11_rho_outer", a11, "rho_o = rtW/3 + r"),
    ("A12_rho_inner_sum", a12, "rho_i = 2r - sum rho"),
    ("A13_roir", a13, "(rho_i + r)/(rho_o - r) = 3"),
    ("A14_a1", a14, "3 rho_o = rho_i + 4r"),
    ("A15_a2", a15, "3 rho_o = 2 sum rho + 3 rho_i"),
    ("A16_rho_inner_sq", a16, "rho_i^2 = sum rho^2 + 2r^2(t^2 - 1)"),
    ("A17_gamma_concur", a17, "t = 1/W: the triad passes through Ge"),
    ("A18_omega_concur", a18, "theta = 120: the arc circles share a point"),
    ("A19_soddy_collinear", a19, "U, I, V, Ge collinear"),
    ("A20_soddy_ratio", a20, "UI : IV = 3 with ordering"),
    ("A21_geui", a21, "GeU/GeI = rho_i/r"),
    ("A22_gevi", a22, "GeV/GeI = rho_o/r"),
    ("A23_gei_formula", a23, "GeI = r sqrt(1 - 3/W^2) on the Soddy line"),
    ("A24_cevian_points", a24, "A, U_a, V_a, L, Ge collinear"),
    ("A25_ua_triangle", a25, "tangents at U_a form a triangle homothetic from Ge"),
    ("A26_equal_tangents", a26, "equal tangents from U_a"),
    ("A27_oi", a27, "SU/SV = rho_i/rho_o at the radical center"),
    ("A28_generic_oracle", a28, "generic solver matches both constructions"),
    ("A29_miyamoto", a29, "inner circles of the triad and of the arcs touch"),
    ("A30_miyamoto_mixed", a30, "same with independent arc measures"),
    ("I01_sum_r_minus_rho", i01, "sum (r - rho) = rtW"),
    ("I02_pair_r_minus_rho", i02, "sum (r - rho_a)(r - rho_b) = r^2 t^2"),
    ("I03_prod_r_minus_rho", i03, "prod (r - rho) = r^4 t^3 / p"),
    ("I04_sum_rho", i04, "sum rho = 3r - rtW"),
    ("I05_expanded_pairs", i05, "3r^2 - 2r sum rho + sum rho rho = r^2 t^2"),
    ("I06_sum_pair_rho", i06, "sum rho_a rho_b"),
    ("I07_sum_sq_rho", i07, "sum rho^2"),
    ("I08_prod_rho", i08, "prod rho"),
    ("I09_radius_polynomial", i09, "polynomial relation between a, r, R, R_a, rho"),
    ("I10_theta_360_minus_4a", i10, "theta = 360 - 4A: rho = 2rR_a/(R + 2R_a)"),
    ("I11_ra_over_rr", i11, "R_a/(rR) in rho and t"),
    ("I12_t_squared", i12, "t^2 in rho, R, R_a"),
    ("S01_rho_minus_r", s01, "rho - r = t(rho* - r)"),
    ("S02_rho_minus_rho", s02, "rho_a - rho_b = t(rho_a* - rho_b*)"),
    ("S03_tangent_lengths", s03, "T_ab = t T_ab*"),
    ("S04_center_distances", s04, "D_ab = t D_ab*"),
    ("S05_rho_i_plus_r", s05, "rho_i + r = t(rho_i* + r)"),
    ("S06_rho_o_minus_r", s06, "rho_o - r = t(rho_o* - r)"),
    ("S07_apollonius_center_distances", s07, "d_a - d_b = t(d_a* - d_b*)"),
    ("S08_center_distance_closed_form", s08, "u^2, v^2, w^2 closed forms"),
    ("S09_similar_center_triangles", s09, "center triangles similar with ratio t"),
    ("V01_variants", v01, "four inscribed circles tangent to omega, classified"),
    ("V02_variant_centers", v02, "which in/excenter serves each variant"),
    ("V03_variant_paasche", v03, "variant touch cevians concurrent"),
];

pub fn find_check(id: &str) -> Result<&'static CheckDef, VerifyError> {
    REGISTRY
        .iter()
        .find(|c| c.id == id || c.id.split('_').next() == Some(id))
        .ok_or_else(|| VerifyError::UnknownCheckId(id.to_string()))
}

fn evaluate(def: &CheckDef, ctx: &Context, threshold: f64, sample: SampleDescriptor) -> CheckResult {
    let mut witness = Vec::new();
    let out = (def.run)(ctx, &mut witness);
    let (verdict, residual) = match out {
        Ok(r) if r <= threshold => (Verdict::Pass, Some(r)),
        Ok(r) => (Verdict::Fail, Some(r)),
        Err(reason) => (Verdict::NotApplicable { reason }, None),
    };
    CheckResult {
        check_id: def.id,
        verdict,
        residual,
        threshold,
        sample,
        witness,
    }
}

fn descriptor(ctx: &Context) -> SampleDescriptor {
    SampleDescriptor {
        index: 0,
        seed: 0,
        sides: ctx.tri.side_lengths(),
        theta_deg: ctx.theta,
        thetas_deg: ctx.thetas,
    }
}

/// Named points recorded by every registry check on one configuration.
pub fn witnesses(ctx: &Context) -> Vec<(String, [f64; 2])> {
    let mut out = Vec::new();
    for def in REGISTRY {
        let mut w = Vec::new();
        let _ = (def.run)(ctx, &mut w);
        out.extend(w.into_iter().filter(|(_, p)| p.iter().all(|x| x.is_finite())));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    out
}

/// Evaluate one registry check on one configuration.
pub fn run_check(id: &str, tri: &Triangle, theta_deg: f64, tol: f64) -> Result<CheckResult, VerifyError> {
    let def = find_check(id)?;
    let ctx = Context::new(*tri, theta_deg);
    Ok(evaluate(def, &ctx, tol, descriptor(&ctx)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// Every angle below `180° − θ/2`, so the whole triad exists.
    Interior,
    Any,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplePolicy {
    pub seed: u64,
    pub trials: u64,
    /// Degrees.
    pub theta_range: (f64, f64),
    pub constraint: Constraint,
    pub side_ratio_cap: f64,
    /// Degrees kept clear of the interior bound.
    pub interior_margin: f64,
    pub threshold: f64,
    pub overrides: BTreeMap<String, f64>,
}

impl Default for SamplePolicy {
    fn default() -> Self {
        SamplePolicy {
            seed: 42,
            trials: 1000,
            theta_range: (20.0, 340.0),
            constraint: Constraint::Interior,
            side_ratio_cap: 10.0,
            interior_margin: 0.5,
            threshold: DEFAULT_THRESHOLD,
            overrides: BTreeMap::new(),
        }
    }
}

impl SamplePolicy {
    pub fn validate(&self) -> Result<(), VerifyError> {
        let (lo, hi) = self.theta_range;
        if !(lo > 0.0 && hi < 360.0 && lo < hi) {
            return Err(VerifyError::InvalidPolicy("theta range must lie in (0, 360)"));
        }
        if !(self.side_ratio_cap >= 1.0) {
            return Err(VerifyError::InvalidPolicy("side ratio cap below 1"));
        }
        if !(self.threshold > 0.0) {
            return Err(VerifyError::InvalidPolicy("threshold must be positive"));
        }
        Ok(())
    }

    fn threshold_for(&self, id: &str) -> f64 {
        self.overrides.get(id).copied().unwrap_or(self.threshold)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub tri: Triangle,
    pub theta: f64,
    pub thetas: [f64; 3],
    pub descriptor: SampleDescriptor,
}

/// Deterministic sample `index` of a policy: its own ChaCha stream keyed by the seed.
pub fn draw_sample(policy: &SamplePolicy, index: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    rng.set_stream(index);
    loop {
        let mut s = [rng.gen_range(0.0..1.0f64), rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)];
        s.sort_by(|a, b| a.total_cmp(b));
        let [a, b, c] = s;
        // strict triangle inequality with slack, bounded aspect ratio
        if a + b <= c * (1.0 + 1e-3) || c > policy.side_ratio_cap * a {
            continue;
        }
        let scale = rng.gen_range(0.5..5.0);
        // shuffle which vertex gets which side
        let rot = rng.gen_range(0..3usize);
        let mut sides = [a * scale, b * scale, c * scale];
        sides.rotate_left(rot);
        if rng.gen_bool(0.5) {
            sides.swap(1, 2);
        }
        let Ok(base) = Triangle::from_sides(sides[0], sides[1], sides[2]) else {
            continue;
        };
        let m = base.metrics();
        let (lo, mut hi) = policy.theta_range;
        if policy.constraint == Constraint::Interior {
            let max_angle = Vertex::ALL
                .iter()
                .map(|v| m.angle(*v).to_degrees())
                .fold(0.0, f64::max);
            hi = hi.min(2.0 * (180.0 - max_angle) - policy.interior_margin);
        }
        if hi <= lo {
            continue;
        }
        let theta = rng.gen_range(lo..hi);
        let thetas = Vertex::ALL.map(|v| {
            let bound = 2.0 * (180.0 - m.angle(v).to_degrees()) - policy.interior_margin;
            let top = policy.theta_range.1.min(bound).max(lo + 1e-9);
            rng.gen_range(lo..top)
        });
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let shift = Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
        let moved = base.vertices.map(|p| p.rotate(angle) + shift);
        let Ok(tri) = Triangle::new(moved[0], moved[1], moved[2]) else {
            continue;
        };
        return Sample {
            tri,
            theta,
            thetas,
            descriptor: SampleDescriptor {
                index,
                seed: policy.seed,
                sides: tri.side_lengths(),
                theta_deg: theta,
                thetas_deg: thetas,
            },
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub id: &'static str,
    pub pass: u64,
    pub fail: u64,
    pub na: u64,
    pub na_out_of_domain: u64,
    pub na_unconstructible: u64,
    /// NA count per reason.
    pub na_reasons: BTreeMap<&'static str, u64>,
    pub max_residual: Option<f64>,
    pub worst_sample: Option<SampleDescriptor>,
    /// Up to ten failing samples, in sample order.
    pub failures: Vec<SampleDescriptor>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: &'static str,
    /// Set for sampled runs.
    pub policy: Option<SamplePolicy>,
    /// Set for a run on one explicit configuration.
    pub instance: Option<SampleDescriptor>,
    pub threshold: f64,
    pub per_check: Vec<CheckSummary>,
}

impl Report {
    pub fn total_failures(&self) -> u64 {
        self.per_check.iter().map(|c| c.fail).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Resolve a list of ids (full ids or their short prefixes); empty means the whole registry.
pub fn select_checks(ids: &[String]) -> Result<Vec<&'static CheckDef>, VerifyError> {
    if ids.is_empty() {
        return Ok(REGISTRY.iter().collect());
    }
    let mut out: Vec<&'static CheckDef> = ids.iter().map(|id| find_check(id)).collect::<Result<_, _>>()?;
    out.sort_by_key(|d| d.id);
    out.dedup_by_key(|d| d.id);
    Ok(out)
}

fn summarize(id: &'static str, results: impl Iterator<Item = CheckResult>) -> CheckSummary {
    let mut s = CheckSummary {
        id,
        pass: 0,
        fail: 0,
        na: 0,
        na_out_of_domain: 0,
        na_unconstructible: 0,
        na_reasons: BTreeMap::new(),
        max_residual: None,
        worst_sample: None,
        failures: Vec::new(),
    };
    for r in results {
        match &r.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => {
                s.fail += 1;
                if s.failures.len() < 10 {
                    s.failures.push(r.sample);
                }
            }
            Verdict::NotApplicable { reason } => {
                s.na += 1;
                *s.na_reasons.entry(reason.detail).or_insert(0) += 1;
                match reason.kind {
                    NaKind::OutOfDomain => s.na_out_of_domain += 1,
                    NaKind::Unconstructible => s.na_unconstructible += 1,
                }
            }
        }
        if let Some(res) = r.residual {
            let worse = match s.max_residual {
                None => true,
                Some(m) => res.is_nan() || res > m,
            };
            if worse && !s.max_residual.is_some_and(f64::is_nan) {
                s.max_residual = Some(res);
                s.worst_sample = Some(r.sample);
            }
        }
    }
    s
}

/// Evaluate the selected checks on every sample of the policy. Samples are spread over
/// threads; the report only depends on the policy and the check list.
pub fn run_suite(policy: &SamplePolicy, checks: &[&'static CheckDef]) -> Result<Report, VerifyError> {
    policy.validate()?;
    let n = policy.trials;
    let workers = std::thread::available_parallelism()
        .map(|x| x.get())
        .unwrap_or(1)
        .min(n.max(1) as usize);
    let per_sample: Vec<Vec<CheckResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|wi| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut i = wi as u64;
                    while i < n {
                        let s = draw_sample(policy, i);
                        let ctx = Context::with_thetas(s.tri, s.theta, s.thetas);
                        let row = checks
                            .iter()
                            .map(|d| evaluate(d, &ctx, policy.threshold_for(d.id), s.descriptor))
                            .collect();
                        out.push((i, row));
                        i += workers as u64;
                    }
                    out
                })
            })
            .collect();
        let mut all: Vec<(u64, Vec<CheckResult>)> =
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect();
        all.sort_by_key(|(i, _)| *i);
        all.into_iter().map(|(_, r)| r).collect()
    });
    let mut per_check: Vec<CheckSummary> = checks
        .iter()
        .enumerate()
        .map(|(k, d)| summarize(d.id, per_sample.iter().map(|row| row[k].clone())))
        .collect();
    per_check.sort_by_key(|c| c.id);
    Ok(Report {
        version: REPORT_VERSION,
        policy: Some(policy.clone()),
        instance: None,
        threshold: policy.threshold,
        per_check,
    })
}

/// Evaluate the selected checks on one explicit configuration.
pub fn run_instance(
    tri: &Triangle,
    theta_deg: f64,
    thetas_deg: Option<[f64; 3]>,
    checks: &[&'static CheckDef],
    threshold: f64,
) -> Result<Report, VerifyError> {
    if !(theta_deg > 0.0 && theta_deg < 360.0) {
        return Err(VerifyError::InvalidPolicy("theta must lie in (0, 360)"));
    }
    let ctx = match thetas_deg {
        Some(th) => Context::with_thetas(*tri, theta_deg, th),
        None => Context::new(*tri, theta_deg),
    };
    let sample = descriptor(&ctx);
    let mut per_check: Vec<CheckSummary> = checks
        .iter()
        .map(|d| summarize(d.id, std::iter::once(evaluate(d, &ctx, threshold, sample))))
        .collect();
    per_check.sort_by_key(|c| c.id);
    Ok(Report {
        version: REPORT_VERSION,
        policy: None,
        instance: Some(sample),
        threshold,
        per_check,
    })
}
