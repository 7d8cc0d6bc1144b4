//! Triads of Ajima circles, their inner and outer Apollonius circles, and the
//! closed-form barycentric coordinates of the associated points.

use thiserror::Error;

use crate::ajima::{build_arc, build_gamma, AjimaConfiguration, AjimaError};
use crate::kernel::{circle_through, radical_center, Circle2, Point2, TangencyKind, Tolerance};
use crate::triangle::{BaryCoords, Triangle, TriangleMetrics, Vertex};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ApolloniusError {
    #[error("angle at {vertex:?} is not below 180° − θ/2")]
    InteriorViolated { vertex: Vertex },
    #[error("triad circles are concurrent at ({}, {})", at.x, at.y)]
    ConcurrentTriad { at: Point2 },
    #[error("Soddy line undefined for an equilateral triangle")]
    EquilateralDegenerate,
    #[error("Apollonius solver did not converge (residual {residual:e})")]
    SolverNoConvergence { residual: f64 },
    #[error(transparent)]
    Ajima(#[from] AjimaError),
}

/// Three Ajima circles, one per side, each with its own arc measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triad {
    pub tri: Triangle,
    /// Arc measures in degrees, indexed by the vertex opposite each side.
    pub thetas: [f64; 3],
    pub configs: [AjimaConfiguration; 3],
}

impl Triad {
    /// Equal arc measures on all three sides.
    pub fn general(tri: &Triangle, theta_deg: f64) -> Result<Triad, ApolloniusError> {
        Triad::mixed(tri, [theta_deg; 3])
    }

    pub fn mixed(tri: &Triangle, thetas: [f64; 3]) -> Result<Triad, ApolloniusError> {
        let m = tri.metrics();
        for v in Vertex::ALL {
            if m.angle(v).to_degrees() >= 180.0 - thetas[v.index()] / 2.0 {
                return Err(ApolloniusError::InteriorViolated { vertex: v });
            }
        }
        let mut configs = Vec::with_capacity(3);
        for v in Vertex::ALL {
            let arc = build_arc(tri, v, thetas[v.index()])?;
            configs.push(build_gamma(tri, &arc)?);
        }
        Ok(Triad {
            tri: *tri,
            thetas,
            configs: [configs[0], configs[1], configs[2]],
        })
    }

    pub fn gammas(&self) -> [Circle2; 3] {
        self.configs.map(|c| c.gamma())
    }

    pub fn omegas(&self) -> [Circle2; 3] {
        self.configs.map(|c| c.arc.circle())
    }

    pub fn is_general(&self) -> bool {
        self.thetas[0] == self.thetas[1] && self.thetas[1] == self.thetas[2]
    }

    pub fn t(&self) -> f64 {
        self.configs[0].arc.t
    }
}

/// An Apollonius circle with its signed radius and its three touch points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentCircle {
    pub center: Point2,
    /// Negative when the three triad circles contain the circle.
    pub rho: f64,
    pub touch: [Point2; 3],
}

impl TangentCircle {
    pub fn circle(&self) -> Circle2 {
        Circle2::new(self.center, self.rho.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApolloniusResult {
    pub inner: TangentCircle,
    pub outer: TangentCircle,
}

/// Inner Apollonius circle of a general triad: the circle through the points where each
/// contact cevian meets its γ nearer the contact point.
pub fn inner_apollonius(triad: &Triad) -> Result<TangentCircle, ApolloniusError> {
    let touch = triad.configs.map(|c| c.lp);
    let r = triad.tri.metrics().r;
    let spread = touch[0]
        .dist(touch[1])
        .max(touch[1].dist(touch[2]))
        .max(touch[2].dist(touch[0]));
    let circ = match circle_through(touch[0], touch[1], touch[2]) {
        Ok(c) if spread > 1e-6 * r => c,
        _ => {
            return Err(ApolloniusError::ConcurrentTriad {
                at: triad.tri.gergonne_point(),
            })
        }
    };
    // external tangency to γ means the γ's lie outside: positive radius
    let gamma = triad.configs[0].gamma();
    let d = circ.center.dist(gamma.center);
    let ext = (d - (circ.radius + gamma.radius)).abs();
    let int = (d - (circ.radius - gamma.radius).abs()).abs();
    let rho = if ext <= int { circ.radius } else { -circ.radius };
    Ok(TangentCircle {
        center: circ.center,
        rho,
        touch,
    })
}

/// Outer Apollonius circle of a general triad: the circle through the points where each
/// contact cevian meets its γ nearer the vertex.
pub fn outer_apollonius(triad: &Triad) -> Result<TangentCircle, ApolloniusError> {
    let touch = triad.configs.map(|c| c.x);
    let circ = circle_through(touch[0], touch[1], touch[2]).map_err(|_| {
        ApolloniusError::ConcurrentTriad {
            at: triad.tri.gergonne_point(),
        }
    })?;
    Ok(TangentCircle {
        center: circ.center,
        rho: circ.radius,
        touch,
    })
}

pub fn apollonius(triad: &Triad) -> Result<ApolloniusResult, ApolloniusError> {
    Ok(ApolloniusResult {
        inner: inner_apollonius(triad)?,
        outer: outer_apollonius(triad)?,
    })
}

/// `ρ_i = rtW − r`, signed.
pub fn rho_inner(m: &TriangleMetrics, t: f64) -> f64 {
    m.r * t * m.w - m.r
}

/// `ρ_o = rtW/3 + r`.
pub fn rho_outer(m: &TriangleMetrics, t: f64) -> f64 {
    m.r * t * m.w / 3.0 + m.r
}

/// The value of `t` at which the triad passes through the Gergonne point.
pub fn concurrence_t(m: &TriangleMetrics) -> f64 {
    1.0 / m.w
}

/// Center of the Ajima circle inscribed at `v`.
pub fn bary_d(m: &TriangleMetrics, v: Vertex, t: f64) -> BaryCoords {
    let k = m.relabeled(v);
    let (a, b, c, p, area) = (k.a, k.b, k.c, k.p, k.area);
    BaryCoords::new(
        a * p * (p - a) + (b + c) * t * area,
        b * p * (p - a) - b * t * area,
        c * p * (p - a) - c * t * area,
    )
    .unrelabeled(v)
}

/// Center of the arc circle on the side opposite `v`. Multiplied through by
/// `cos(θ/2)` so the semicircle case is regular.
pub fn bary_oa(m: &TriangleMetrics, v: Vertex, theta_deg: f64) -> BaryCoords {
    let k = m.relabeled(v);
    let half = theta_deg.to_radians() / 2.0;
    let (sh, ch) = half.sin_cos();
    let sb = (k.c * k.c + k.a * k.a - k.b * k.b) / 2.0;
    let sc = (k.a * k.a + k.b * k.b - k.c * k.c) / 2.0;
    BaryCoords::new(-k.a * k.a * ch, sc * ch + k.s * sh, sb * ch + k.s * sh).unrelabeled(v)
}

/// Touch point of `γ` with `ω` on the side opposite `v`.
pub fn bary_t(m: &TriangleMetrics, v: Vertex, theta_deg: f64) -> BaryCoords {
    let k = m.relabeled(v);
    let (a, b, c, s) = (k.a, k.b, k.c, k.s);
    let th = theta_deg.to_radians();
    let (s4, c4) = (th / 4.0).sin_cos();
    let (s2, c2) = (th / 2.0).sin_cos();
    let c34 = (3.0 * th / 4.0).cos();
    let u = a * a - (b - c) * (b - c);
    let tx = 2.0 * a * s4 * (a * u * c2 + (b + c) * u + 2.0 * a * s * s2);
    let ty = -u * (2.0 * (a * a - b * c - c * c) * c2 + a * a + 2.0 * a * b - (b + c) * (b + c)) * s4
        + 2.0 * s * (a * a + b * c - c * c) * c34
        + 2.0 * b * s * (2.0 * a + b - c) * c4;
    let tz = -u * (2.0 * (a * a - b * c - b * b) * c2 + a * a + 2.0 * a * c - (b + c) * (b + c)) * s4
        + 2.0 * s * (a * a + b * c - b * b) * c34
        + 2.0 * c * s * (2.0 * a - b + c) * c4;
    BaryCoords::new(tx, ty, tz).unrelabeled(v)
}

/// Barycentric coordinates of the Apollonius centers and touch points of a general triad.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TouchBary {
    /// Inner touch points, indexed by vertex.
    pub u_touch: [BaryCoords; 3],
    pub u: BaryCoords,
    /// Outer touch points, indexed by vertex.
    pub v_touch: [BaryCoords; 3],
    pub v: BaryCoords,
}

pub fn bary_touchpoints(m: &TriangleMetrics, t: f64) -> TouchBary {
    let touch = |v: Vertex, outer: bool| {
        let k = m.relabeled(v);
        let (a, p, s) = (k.a, k.p, k.s);
        let (pa, pb, pc) = (p - k.a, p - k.b, p - k.c);
        let q = s - 2.0 * pb * pc * t;
        let bc = if outer {
            BaryCoords::new(2.0 * pb * pc * (2.0 * s + a * pa * t), pa * pc * q, pa * pb * q)
        } else {
            BaryCoords::new(2.0 * a * pb * pc * t, pc * q, pb * q)
        };
        bc.unrelabeled(v)
    };
    let center = |k: f64| {
        let (a, b, c, s) = (m.a, m.b, m.c, m.s);
        BaryCoords::new(
            (-2.0 * a.powi(3) + a * a * (b + c) + (b - c) * (b - c) * (b + c)) * t + k * a * s,
            (a.powi(3) - a * a * c + a * (b * b - c * c) + c.powi(3) + b * b * c - 2.0 * b.powi(3)) * t
                + k * b * s,
            (a.powi(3) - a * a * b + a * (c * c - b * b) + b.powi(3) + b * c * c - 2.0 * c.powi(3)) * t
                + k * c * s,
        )
    };
    TouchBary {
        u_touch: Vertex::ALL.map(|v| touch(v, false)),
        u: center(-2.0),
        v_touch: Vertex::ALL.map(|v| touch(v, true)),
        v: center(6.0),
    }
}

/// Measurements along the line through the Gergonne point and the incenter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoddyReport {
    pub ge_i: f64,
    pub ge_i_formula: f64,
    /// Signed positions along the unit direction from `G_e` to `I`.
    pub pos_u: f64,
    pub pos_i: f64,
    pub pos_v: f64,
    /// Largest distance of `U` or `V` from line `G_eI`.
    pub off_line: f64,
    /// `|UI| / |IV|`.
    pub ui_over_iv: f64,
    /// Points appear in the order `G_e, U, I, V` (only meaningful when `ρ_i < 0`).
    pub order_ge_u_i_v: bool,
}

pub fn soddy_line(tri: &Triangle, res: &ApolloniusResult) -> Result<SoddyReport, ApolloniusError> {
    let m = tri.metrics();
    let ge = tri.gergonne_point();
    let i = tri.incenter();
    let ge_i = ge.dist(i);
    if ge_i <= 1e-9 * tri.diameter() {
        return Err(ApolloniusError::EquilateralDegenerate);
    }
    let e = (i - ge) / ge_i;
    let pos = |q: Point2| e.dot(q - ge);
    let off = |q: Point2| e.cross(q - ge).abs();
    let (u, v) = (res.inner.center, res.outer.center);
    let (pu, pi, pv) = (pos(u), pos(i), pos(v));
    Ok(SoddyReport {
        ge_i,
        ge_i_formula: m.r * (1.0 - 3.0 / (m.w * m.w)).max(0.0).sqrt(),
        pos_u: pu,
        pos_i: pi,
        pos_v: pv,
        off_line: off(u).max(off(v)),
        ui_over_iv: u.dist(i) / i.dist(v),
        order_ge_u_i_v: 0.0 < pu && pu < pi && pi < pv,
    })
}

/// Solves `|x − O_k| = ρ + s_k·r_k` for the center `x` and signed radius `ρ` by damped
/// Newton iteration, seeded at the circumcenter of the three centers. Fallback seeds are the
/// radical center and the centroid of the centers.
pub fn generic_apollonius_oracle(
    circles: [Circle2; 3],
    signs: [f64; 3],
) -> Result<(Point2, f64), ApolloniusError> {
    let centers = circles.map(|c| c.center);
    let mut seeds = Vec::new();
    if let Ok(c) = circle_through(centers[0], centers[1], centers[2]) {
        seeds.push(c.center);
    }
    if let Ok(p) = radical_center(&circles[0], &circles[1], &circles[2]) {
        seeds.push(p);
    }
    seeds.push((centers[0] + centers[1] + centers[2]) / 3.0);
    let (found, best) = apollonius_from_seeds(circles, signs, &seeds);
    found
        .first()
        .copied()
        .ok_or(ApolloniusError::SolverNoConvergence { residual: best })
}

/// Same iteration from each of `seeds`. Returns every converged solution, in seed order,
/// and the smallest residual reached.
pub fn apollonius_from_seeds(
    circles: [Circle2; 3],
    signs: [f64; 3],
    seeds: &[Point2],
) -> (Vec<(Point2, f64)>, f64) {
    let centers = circles.map(|c| c.center);
    let scale = centers[0]
        .dist(centers[1])
        .max(centers[1].dist(centers[2]))
        .max(centers[2].dist(centers[0]))
        + circles.iter().map(|c| c.radius).fold(0.0, f64::max);

    let resid = |x: Point2, rho: f64| -> [f64; 3] {
        [0, 1, 2].map(|k| x.dist(centers[k]) - rho - signs[k] * circles[k].radius)
    };
    let norm = |f: [f64; 3]| f.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut best = f64::INFINITY;
    let mut found = Vec::new();
    for &seed in seeds {
        let mut x = seed;
        let mut rho = (0..3)
            .map(|k| x.dist(centers[k]) - signs[k] * circles[k].radius)
            .sum::<f64>()
            / 3.0;
        let mut f = resid(x, rho);
        for _ in 0..200 {
            if norm(f) <= 1e-13 * scale {
                break;
            }
            let mut jac = [[0.0; 3]; 3];
            for k in 0..3 {
                let g = (x - centers[k])
                    .normalized()
                    .unwrap_or(Point2::new(1.0, 0.0));
                jac[k] = [g.x, g.y, -1.0];
            }
            let Some(step) = solve3(jac, f) else { break };
            let mut lambda = 1.0;
            let current = norm(f);
            loop {
                let xn = x - Point2::new(step[0], step[1]) * lambda;
                let rn = rho - step[2] * lambda;
                let fnew = resid(xn, rn);
                if norm(fnew) < current || lambda < 1e-6 {
                    x = xn;
                    rho = rn;
                    f = fnew;
                    break;
                }
                lambda *= 0.5;
            }
        }
        let r = norm(f);
        let valid = (0..3).all(|k| rho + signs[k] * circles[k].radius >= -1e-9 * scale);
        if r <= 1e-12 * scale && valid {
            found.push((x, rho));
        }
        best = best.min(r);
    }
    (found, best)
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let det = det3(m);
    if det.abs() < 1e-300 || !det.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut mm = m;
        for row in 0..3 {
            mm[row][col] = b[row];
        }
        *slot = det3(mm) / det;
    }
    Some(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiyamotoReport {
    /// Inner Apollonius circle of the γ's: center and signed radius.
    pub gamma_inner: (Point2, f64),
    /// Inner Apollonius circle of the ω's: center and signed radius.
    pub omega_inner: (Point2, f64),
    /// `| |UU'| − |ρ + ρ'| |` with signed radii.
    pub residual: f64,
    pub kind: TangencyKind,
}

/// Inner Apollonius circle of three circles attached to the sides (`circles[k]` to the
/// side opposite vertex `k`): tangent to all three with `signs = +1`, touching each circle
/// on the inner side of its own side, and of least `|ρ|` among such solutions. `ρ > 0` means outside every circle.
pub fn inner_circle_in(tri: &Triangle, circles: [Circle2; 3]) -> Result<(Point2, f64), ApolloniusError> {
    let scale = tri.diameter();
    let side = |k: usize, p: Point2| {
        tri.side_line(Vertex::from_index(k)).signed_distance(p) >= -1e-9 * scale
    };
    let g = tri.vertices;
    let centroid = (g[0] + g[1] + g[2]) / 3.0;
    let mut seeds = vec![tri.incenter(), centroid];
    seeds.extend(g.iter().map(|p| centroid.lerp(*p, 0.5)));
    seeds.extend(g.iter().map(|p| centroid.lerp(*p, 0.9)));
    if let Ok(p) = radical_center(&circles[0], &circles[1], &circles[2]) {
        seeds.push(p);
    }
    let (found, best) = apollonius_from_seeds(circles, [1.0; 3], &seeds);
    found
        .into_iter()
        .filter(|&(x, rho)| {
            (0..3).all(|k| match (circles[k].center - x).normalized() {
                    // touch point seen from the solution's center, signed radius
                    Some(dir) => side(k, x + dir * rho),
                    None => true,
                })
        })
        .min_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .ok_or(ApolloniusError::SolverNoConvergence { residual: best })
}

/// Tangency of the inner Apollonius circles of the γ-triad and the ω-triad, both found
/// by the generic solver. With signed radii the centers are `|ρ + ρ'|` apart; the contact
/// is external when both radii are positive and internal otherwise.
pub fn miyamoto_tangency(tri: &Triangle, thetas: [f64; 3]) -> Result<MiyamotoReport, ApolloniusError> {
    let triad = Triad::mixed(tri, thetas)?;
    let gi = inner_circle_in(tri, triad.gammas())?;
    let oi = inner_circle_in(tri, triad.omegas())?;
    let residual = (gi.0.dist(oi.0) - (gi.1 + oi.1).abs()).abs();
    let kind = if gi.1 > 0.0 && oi.1 > 0.0 {
        TangencyKind::External
    } else {
        TangencyKind::Internal
    };
    Ok(MiyamotoReport {
        gamma_inner: gi,
        omega_inner: oi,
        residual,
        kind,
    })
}

/// Default tolerance-scaled check that a point lies on a circle.
pub fn on_circle(c: &Circle2, q: Point2, tol: &Tolerance, scale: f64) -> bool {
    c.boundary_residual(q) <= tol.eps(scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ajima::t_of;
    use approx::assert_relative_eq;

    fn tri(a: f64, b: f64, c: f64) -> Triangle {
        Triangle::from_sides(a, b, c).unwrap()
    }

    #[test]
    fn radii_456_semicircle() {
        let t = tri(4.0, 5.0, 6.0);
        let m = t.metrics();
        let triad = Triad::general(&t, 180.0).unwrap();
        let res = apollonius(&triad).unwrap();
        assert_relative_eq!(res.inner.rho, m.r * (m.w - 1.0), max_relative = 1e-10);
        assert!((res.inner.rho - 1.04381).abs() < 5e-5);
        assert_relative_eq!(res.outer.rho, m.r * (m.w / 3.0 + 1.0), max_relative = 1e-10);
        assert!((res.outer.rho - 2.11177).abs() < 5e-5);
        assert_relative_eq!(
            (res.inner.rho + m.r) / (res.outer.rho - m.r),
            3.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn equilateral_semicircle() {
        let t = tri(2.0, 2.0, 2.0);
        let m = t.metrics();
        let res = apollonius(&Triad::general(&t, 180.0).unwrap()).unwrap();
        assert_relative_eq!(res.inner.rho, m.r * (3f64.sqrt() - 1.0), max_relative = 1e-10);
        assert!(matches!(
            soddy_line(&t, &res),
            Err(ApolloniusError::EquilateralDegenerate)
        ));
    }

    #[test]
    fn limits() {
        let m = tri(4.0, 5.0, 6.0).metrics();
        assert_eq!(rho_inner(&m, 0.0), -m.r);
        assert_eq!(rho_outer(&m, 0.0), m.r);
    }

    #[test]
    fn concurrent_triad_detected() {
        let t = tri(4.0, 5.0, 6.0);
        let m = t.metrics();
        let theta = crate::ajima::theta_of(concurrence_t(&m));
        let triad = Triad::general(&t, theta).unwrap();
        match inner_apollonius(&triad) {
            Err(ApolloniusError::ConcurrentTriad { at }) => {
                assert!(at.dist(t.gergonne_point()) < 1e-12)
            }
            other => panic!("expected concurrence, got {other:?}"),
        }
        for c in triad.gammas() {
            assert!(c.boundary_residual(t.gergonne_point()) < 1e-9 * t.diameter());
        }
    }

    #[test]
    fn interior_condition_enforced() {
        let t = tri(3.0, 4.0, 5.0);
        assert_eq!(
            Triad::general(&t, 180.0),
            Err(ApolloniusError::InteriorViolated { vertex: Vertex::C })
        );
    }

    #[test]
    fn oracle_symmetric_frame() {
        let t = tri(2.0, 2.0, 2.0);
        let cen = t.bary_to_point(BaryCoords::new(1.0, 1.0, 1.0)).unwrap();
        let circles = t.vertices.map(|v| Circle2::new(v, 0.3));
        let (x, rho) = generic_apollonius_oracle(circles, [1.0; 3]).unwrap();
        assert!(x.dist(cen) < 1e-12);
        assert_relative_eq!(rho, 2.0 / 3f64.sqrt() - 0.3, max_relative = 1e-12);
    }

    #[test]
    fn oracle_matches_constructions() {
        let t = tri(4.0, 5.0, 6.0);
        for theta in [60.0, 100.0, 180.0, 190.0] {
            let triad = Triad::general(&t, theta).unwrap();
            let res = apollonius(&triad).unwrap();
            let (u, rho) = generic_apollonius_oracle(triad.gammas(), [1.0; 3]).unwrap();
            assert!(u.dist(res.inner.center) < 1e-9, "θ={theta}");
            assert_relative_eq!(rho, res.inner.rho, max_relative = 1e-9);
            let (v, rho) = generic_apollonius_oracle(triad.gammas(), [-1.0; 3]).unwrap();
            assert!(v.dist(res.outer.center) < 1e-9, "θ={theta}");
            assert_relative_eq!(rho, res.outer.rho, max_relative = 1e-9);
        }
    }

    #[test]
    fn bary_forms_456() {
        let t = tri(4.0, 5.0, 6.0);
        let m = t.metrics();
        for theta in [100.0, 180.0, 190.0] {
            let triad = Triad::general(&t, theta).unwrap();
            let scale = t.diameter();
            for v in Vertex::ALL {
                let cfg = &triad.configs[v.index()];
                let d = t.bary_to_point(bary_d(&m, v, t_of(theta))).unwrap();
                assert!(d.dist(cfg.d) < 1e-9 * scale, "D θ={theta} {v:?}");
                let o = t.bary_to_point(bary_oa(&m, v, theta)).unwrap();
                assert!(o.dist(cfg.arc.center) < 1e-9 * scale, "O θ={theta} {v:?}");
                let tt = t.bary_to_point(bary_t(&m, v, theta)).unwrap();
                assert!(tt.dist(cfg.t_touch) < 1e-9 * scale, "T θ={theta} {v:?}");
            }
            let res = apollonius(&triad).unwrap();
            let tb = bary_touchpoints(&m, t_of(theta));
            for v in Vertex::ALL {
                let k = v.index();
                let ua = t.bary_to_point(tb.u_touch[k]).unwrap();
                assert!(ua.dist(res.inner.touch[k]) < 1e-9 * scale, "Ua θ={theta} {v:?}");
                let va = t.bary_to_point(tb.v_touch[k]).unwrap();
                assert!(va.dist(res.outer.touch[k]) < 1e-9 * scale, "Va θ={theta} {v:?}");
            }
            let u = t.bary_to_point(tb.u).unwrap();
            assert!(u.dist(res.inner.center) < 1e-9 * scale, "U θ={theta}");
            let vv = t.bary_to_point(tb.v).unwrap();
            assert!(vv.dist(res.outer.center) < 1e-9 * scale, "V θ={theta}");
        }
    }

    #[test]
    fn soddy_456() {
        let t = tri(4.0, 5.0, 6.0);
        for theta in [40.0, 180.0] {
            let res = apollonius(&Triad::general(&t, theta).unwrap()).unwrap();
            let s = soddy_line(&t, &res).unwrap();
            assert_relative_eq!(s.ui_over_iv, 3.0, max_relative = 1e-9);
            assert_relative_eq!(s.ge_i, s.ge_i_formula, max_relative = 1e-9);
            assert!(s.off_line < 1e-9);
            if res.inner.rho < 0.0 {
                assert!(s.order_ge_u_i_v);
            }
        }
    }

    #[test]
    fn miyamoto_examples() {
        let t = tri(4.0, 5.0, 6.0);
        for thetas in [[120.0; 3], [100.0; 3], [100.0, 140.0, 170.0]] {
            let rep = miyamoto_tangency(&t, thetas).unwrap();
            assert!(rep.residual < 1e-7 * t.diameter(), "{thetas:?} {rep:?}");
        }
        let rep = miyamoto_tangency(&t, [120.0; 3]).unwrap();
        assert!(rep.omega_inner.1.abs() < 1e-9);
    }

    #[test]
    fn miyamoto_contact_kind() {
        let t = tri(4.0, 5.0, 6.0);
        let lo = crate::ajima::theta_of(concurrence_t(&t.metrics()));
        // between the two concurrence thresholds both radii are positive
        let rep = miyamoto_tangency(&t, [(lo + 120.0) / 2.0; 3]).unwrap();
        assert_eq!(rep.kind, TangencyKind::External);
        assert!(rep.residual < 1e-9);
        for theta in [lo - 10.0, 150.0] {
            let rep = miyamoto_tangency(&t, [theta; 3]).unwrap();
            assert_eq!(rep.kind, TangencyKind::Internal);
            assert!(rep.residual < 1e-9);
        }
    }
}
