//! Symmetric-function identities of the triad radii and the scaling laws against the
//! semicircle (`t = 1`) configuration.

use crate::ajima::{arc_radius_forms, signed_center};
use crate::apollonius::{bary_touchpoints, Triad};
use crate::kernel::Point2;
use crate::outcome::{all_of, rel, NaReason, Outcome};
use crate::triangle::{Triangle, TriangleMetrics, Vertex};

/// The three radii of a triad and the data they were computed from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadScalars {
    pub rho: [f64; 3],
    pub t: f64,
    pub theta_deg: f64,
    pub m: TriangleMetrics,
    /// Arc radius per side.
    pub r_arc: [f64; 3],
}

impl TriadScalars {
    /// Radii measured on a constructed triad.
    pub fn from_triad(triad: &Triad) -> TriadScalars {
        TriadScalars {
            rho: triad.configs.map(|c| c.rho),
            t: triad.t(),
            theta_deg: triad.thetas[0],
            m: triad.tri.metrics(),
            r_arc: triad.configs.map(|c| c.arc.radius),
        }
    }

    /// Signed closed-form radii; valid whether or not the interior circles exist.
    pub fn closed_form(m: &TriangleMetrics, theta_deg: f64) -> TriadScalars {
        let t = crate::ajima::t_of(theta_deg);
        TriadScalars {
            rho: Vertex::ALL.map(|v| crate::ajima::ajima_radius(m, v, t)),
            t,
            theta_deg,
            m: *m,
            r_arc: Vertex::ALL.map(|v| arc_radius_forms(m, v, theta_deg)[0]),
        }
    }
}

pub type Named = (&'static str, Outcome);

/// Sums, pairwise products and products of the radii against their closed forms.
pub fn identity_suite(s: &TriadScalars) -> Vec<Named> {
    let (r, t, w, p) = (s.m.r, s.t, s.m.w, s.m.p);
    let [x, y, z] = s.rho;
    let [dx, dy, dz] = s.rho.map(|q| r - q);
    let sum = x + y + z;
    let pairs = x * y + y * z + z * x;
    vec![
        (
            "I01_sum_r_minus_rho",
            Ok(rel(dx + dy + dz, r * t * w, &[dx, dy, dz])),
        ),
        (
            "I02_pair_r_minus_rho",
            Ok(rel(dx * dy + dy * dz + dz * dx, r * r * t * t, &[dx * dy, dy * dz, dz * dx])),
        ),
        (
            "I03_prod_r_minus_rho",
            Ok(rel(dx * dy * dz, r.powi(4) * t.powi(3) / p, &[])),
        ),
        ("I04_sum_rho", Ok(rel(sum, 3.0 * r - r * t * w, &[3.0 * r, r * t * w]))),
        (
            "I05_expanded_pairs",
            Ok(rel(
                3.0 * r * r - 2.0 * r * sum + pairs,
                r * r * t * t,
                &[3.0 * r * r, 2.0 * r * sum, pairs],
            )),
        ),
        (
            "I06_sum_pair_rho",
            Ok(rel(
                pairs,
                r * r * (t * t - 2.0 * t * w + 3.0),
                &[r * r * t * t, 2.0 * r * r * t * w, 3.0 * r * r],
            )),
        ),
        (
            "I07_sum_sq_rho",
            Ok(rel(
                x * x + y * y + z * z,
                r * r * (3.0 - 2.0 * t * w + (w * w - 2.0) * t * t),
                &[3.0 * r * r, 2.0 * r * r * t * w, r * r * w * w * t * t],
            )),
        ),
        (
            "I08_prod_rho",
            Ok(rel(
                x * y * z,
                r.powi(3) * (1.0 - t * w + t * t - r / p * t.powi(3)),
                &[r.powi(3), r.powi(3) * t * w, r.powi(3) * t * t, r.powi(4) / p * t.powi(3)],
            )),
        ),
    ]
}

/// The empirical polynomial relation, the `θ = 360° − 4A` special case and the two
/// `R`, `R_a`, `ρ_a`, `t` relations, each evaluated on every side.
pub fn radius_relation_suite(s: &TriadScalars) -> Vec<Named> {
    let (r, big_r, t) = (s.m.r, s.m.big_r, s.t);
    let polynomial = all_of(Vertex::ALL.map(|v| {
        let (a, q, ra) = (s.m.side(v), s.rho[v.index()], s.r_arc[v.index()]);
        if !ra.is_finite() {
            return Err(NaReason::domain("arc radius singular"));
        }
        let t1 = a * a * q * q * (2.0 * r - q).powi(2);
        let t2 = 16.0 * r * (r - q) * (r * big_r - r * ra - q * big_r) * (r * big_r - r * ra + q * ra);
        // scale by the largest monomial magnitude of the expansion
        let mag = [
            t1.abs(),
            16.0 * r * (r.abs() + q.abs()) * (r * big_r + r * ra + q.abs() * big_r) * (r * big_r + r * ra + q.abs() * ra),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        Ok((t1 + t2).abs() / mag)
    }));
    let rar = all_of(Vertex::ALL.map(|v| {
        let (q, ra) = (s.rho[v.index()], s.r_arc[v.index()]);
        let den = (r - q).powi(2) + r * r * t * t;
        if t <= 1e-6 {
            return Err(NaReason::domain("t near zero"));
        }
        Ok(rel(ra / (r * big_r), (r - q) * (1.0 + t * t) / den, &[]))
    }));
    let t_sq = all_of(Vertex::ALL.map(|v| {
        let (q, ra) = (s.rho[v.index()], s.r_arc[v.index()]);
        let den = r * (big_r * q + r * ra - r * big_r);
        let num = (r - q) * (q * ra + r * big_r - r * ra);
        if den.abs() <= 1e-9 * r * r * big_r || t <= 1e-6 {
            return Err(NaReason::domain("t² relation singular"));
        }
        Ok(rel(t * t, num / den, &[]))
    }));
    vec![
        ("I09_radius_polynomial", polynomial),
        ("I10_theta_360_minus_4a", special_case(&s.m)),
        ("I11_ra_over_rr", rar),
        ("I12_t_squared", t_sq),
    ]
}

/// For each acute vertex, `θ = 360° − 4A` gives `ρ = 2rR_a/(R + 2R_a)`.
fn special_case(m: &TriangleMetrics) -> Outcome {
    let parts: Vec<Outcome> = Vertex::ALL
        .into_iter()
        .filter(|v| m.angle(*v) < std::f64::consts::FRAC_PI_2)
        .map(|v| {
            let theta = 360.0 - 4.0 * m.angle(v).to_degrees();
            let t = crate::ajima::t_of(theta);
            let rho = crate::ajima::ajima_radius(m, v, t);
            let ra = arc_radius_forms(m, v, theta)[0];
            Ok(rel(rho, 2.0 * m.r * ra / (m.big_r + 2.0 * ra), &[]))
        })
        .collect();
    if parts.is_empty() {
        return Err(NaReason::domain("no acute vertex"));
    }
    all_of(parts)
}

/// Starred quantities at `t = 1`, with signed radii and centers so that they exist
/// for every triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemicircleBaseline {
    pub rho_star: [f64; 3],
    pub centers_star: [Point2; 3],
    /// Center distances indexed by the opposite vertex: `D*_bc`, `D*_ca`, `D*_ab`.
    pub d_pair_star: [f64; 3],
    /// Common external tangent lengths, indexed like `d_pair_star`.
    pub t_pair_star: [f64; 3],
    /// Distances from the inner Apollonius center to each center.
    pub d_star: [f64; 3],
    pub rho_i_star: f64,
    pub rho_o_star: f64,
}

fn pair_index(k: usize) -> (usize, usize) {
    ((k + 1) % 3, (k + 2) % 3)
}

impl SemicircleBaseline {
    pub fn new(tri: &Triangle) -> SemicircleBaseline {
        let m = tri.metrics();
        let rho_star = Vertex::ALL.map(|v| crate::ajima::ajima_radius(&m, v, 1.0));
        let centers_star = Vertex::ALL.map(|v| signed_center(tri, v, rho_star[v.index()]));
        let d_pair_star = [0, 1, 2].map(|k| {
            let (i, j) = pair_index(k);
            centers_star[i].dist(centers_star[j])
        });
        let t_pair_star = [0, 1, 2].map(|k| {
            let (i, j) = pair_index(k);
            (d_pair_star[k].powi(2) - (rho_star[i] - rho_star[j]).powi(2)).max(0.0).sqrt()
        });
        let tb = bary_touchpoints(&m, 1.0);
        let u = tri.bary_to_point(tb.u).expect("inner center is finite");
        let v = tri.bary_to_point(tb.v).expect("outer center is finite");
        let d_star = centers_star.map(|c| u.dist(c));
        // tangency: |U D_k| = ρ_i + ρ_k and |V D_k| = ρ_o − ρ_k
        let rho_i_star = d_star[0] - rho_star[0];
        let rho_o_star = v.dist(centers_star[0]) + rho_star[0];
        SemicircleBaseline {
            rho_star,
            centers_star,
            d_pair_star,
            t_pair_star,
            d_star,
            rho_i_star,
            rho_o_star,
        }
    }
}

/// Measurements on a constructed general triad that the scaling laws relate to the baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriadMeasurements {
    pub rho: [f64; 3],
    pub centers: [Point2; 3],
    pub rho_i: f64,
    pub rho_o: f64,
    pub inner_center: Point2,
}

/// Scaling relations `x − x_0 = t(x* − x_0)` and the center-distance closed forms.
pub fn scaling_suite(s: &TriadScalars, meas: &TriadMeasurements, base: &SemicircleBaseline) -> Vec<Named> {
    let t = s.t;
    let r = s.m.r;
    let rho = meas.rho;
    let c = meas.centers;
    let pair = |k: usize| {
        let (i, j) = pair_index(k);
        c[i].dist(c[j])
    };
    let d_pair = [0, 1, 2].map(pair);
    let t_pair = [0, 1, 2].map(|k| {
        let (i, j) = pair_index(k);
        (d_pair[k].powi(2) - (rho[i] - rho[j]).powi(2)).max(0.0).sqrt()
    });
    let d = c.map(|x| meas.inner_center.dist(x));

    let per_side = |f: &dyn Fn(usize) -> f64| all_of([0, 1, 2].map(|k| Ok(f(k))));
    vec![
        (
            "S01_rho_minus_r",
            per_side(&|k| rel(rho[k] - r, t * (base.rho_star[k] - r), &[r])),
        ),
        (
            "S02_rho_minus_rho",
            per_side(&|k| {
                let (i, j) = pair_index(k);
                rel(rho[i] - rho[j], t * (base.rho_star[i] - base.rho_star[j]), &[r])
            }),
        ),
        (
            "S03_tangent_lengths",
            per_side(&|k| rel(t_pair[k], t * base.t_pair_star[k], &[])),
        ),
        (
            "S04_center_distances",
            per_side(&|k| rel(d_pair[k], t * base.d_pair_star[k], &[])),
        ),
        (
            "S05_rho_i_plus_r",
            Ok(rel(meas.rho_i + r, t * (base.rho_i_star + r), &[r])),
        ),
        (
            "S06_rho_o_minus_r",
            Ok(rel(meas.rho_o - r, t * (base.rho_o_star - r), &[r])),
        ),
        (
            "S07_apollonius_center_distances",
            per_side(&|k| {
                let (i, j) = pair_index(k);
                rel(d[i] - d[j], t * (base.d_star[i] - base.d_star[j]), &[r])
            }),
        ),
        (
            "S08_center_distance_closed_form",
            per_side(&|k| {
                let m = s.m.relabeled(Vertex::from_index(k));
                let (a, b, cc, p) = (m.a, m.b, m.c, m.p);
                let want = a * (p - a) * (a * p - (b - cc).powi(2)) * t * t / (p * p);
                rel(d_pair[k].powi(2), want, &[])
            }),
        ),
        (
            "S09_similar_center_triangles",
            per_side(&|k| (d_pair[k] / base.d_pair_star[k] - t).abs() / t.max(1e-300)),
        ),
    ]
}

/// `sin 2x·(tan²x + 1) = 2 tan x`.
pub fn sin2x_residual(x: f64) -> f64 {
    let tn = x.tan();
    rel((2.0 * x).sin() * (tn * tn + 1.0), 2.0 * tn, &[])
}
