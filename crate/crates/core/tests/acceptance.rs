//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL ...` line, written
//! straight to stderr so it shows without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use ajima::ajima::{
    ajima_oracle, ajima_radius, build_arc, build_gamma, build_gamma_midarc, theta_of,
};
use ajima::apollonius::{
    apollonius, bary_d, bary_oa, bary_t, bary_touchpoints, concurrence_t,
    generic_apollonius_oracle, miyamoto_tangency, rho_inner, rho_outer, soddy_line, Triad,
};
use ajima::kernel::{radical_center, Point2, TangencyKind};
use ajima::svg::{Figure, Layer};
use ajima::triangle::{BaryCoords, Triangle, Vertex};
use ajima::verify::{
    draw_sample, run_check, run_suite, select_checks, Sample, SamplePolicy, Verdict,
};

fn line(n: u32, name: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n} [{name}]: {verdict} {detail}");
}

fn samples(n: u64) -> Vec<Sample> {
    let policy = SamplePolicy::default();
    (0..n).map(|i| draw_sample(&policy, i)).collect()
}

/// Independent Ajima radius for side `v`: bisection on the distance from the arc
/// center to a point sliding down the angle bisector at `v`, using only coordinates.
fn bisection_rho(tri: &Triangle, v: Vertex, theta_deg: f64) -> f64 {
    let k = v.index();
    let (a, b, c) = (tri.vertices[k], tri.vertices[(k + 1) % 3], tri.vertices[(k + 2) % 3]);
    let dist = |p: Point2, q: Point2| ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt();
    let (la, lb, lc) = (dist(b, c), dist(c, a), dist(a, b));
    let p = (la + lb + lc) / 2.0;
    let area = (p * (p - la) * (p - lb) * (p - lc)).sqrt();
    let r = area / p;
    let inc = Point2::new(
        (la * a.x + lb * b.x + lc * c.x) / (2.0 * p),
        (la * a.y + lb * b.y + lc * c.y) / (2.0 * p),
    );
    let ai = dist(a, inc);
    let sin_half = r / ai;
    let u = Point2::new((inc.x - a.x) / ai, (inc.y - a.y) / ai);
    // arc circle: center on the perpendicular bisector of BC, on the side away from A
    let th = theta_deg.to_radians();
    let mid = Point2::new((b.x + c.x) / 2.0, (b.y + c.y) / 2.0);
    let mut n = Point2::new(-(c.y - b.y) / la, (c.x - b.x) / la);
    if (a.x - mid.x) * n.x + (a.y - mid.y) * n.y < 0.0 {
        n = Point2::new(-n.x, -n.y);
    }
    let off = la / 2.0 / (th / 2.0).tan();
    let o = Point2::new(mid.x - n.x * off, mid.y - n.y * off);
    let big_r = la / (2.0 * (th / 2.0).sin());
    let gap = |rho: f64| {
        let d = Point2::new(a.x + u.x * rho / sin_half, a.y + u.y * rho / sin_half);
        dist(d, o) - (rho + big_r)
    };
    let (mut lo, mut hi) = (0.0, r);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if gap(m) > 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_1_formula_oracle() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for s in samples(1000) {
        let m = s.tri.metrics();
        for v in Vertex::ALL {
            let closed = ajima_radius(&m, v, (s.theta.to_radians() / 4.0).tan());
            let oracle = bisection_rho(&s.tri, v, s.theta);
            worst = worst.max((closed - oracle).abs() / m.r);
        }
    }
    let took = start.elapsed();
    let pass = worst <= 1e-9 && took <= Duration::from_secs(10);
    line(1, "formula/oracle agreement", pass, format!("max |drho|/r = {worst:.2e} over 1000 samples x 3 sides in {took:.2?}"));
    assert!(pass);
}

#[test]
fn criterion_2_construction_routes() {
    let mut worst = 0.0f64;
    for s in samples(1000) {
        let r = s.tri.metrics().r;
        let scale = s.tri.diameter();
        for v in Vertex::ALL {
            let arc = build_arc(&s.tri, v, s.theta).unwrap();
            let g = build_gamma(&s.tri, &arc).unwrap();
            let mid = build_gamma_midarc(&s.tri, &arc).unwrap();
            let orc = ajima_oracle(&s.tri, &arc).unwrap();
            for c in [mid, orc] {
                worst = worst
                    .max((c.radius - g.rho).abs() / r)
                    .max(c.center.dist(g.d) / scale);
            }
        }
    }
    let pass = worst <= 1e-9;
    line(2, "construction consistency", pass, format!("max deviation {worst:.2e} over 1000 samples"));
    assert!(pass);
}

#[test]
fn criterion_3_registry() {
    let start = Instant::now();
    let policy = SamplePolicy::default();
    let checks = select_checks(&[]).unwrap();
    let report = run_suite(&policy, &checks).unwrap();
    let took = start.elapsed();
    let failures = report.total_failures();
    let worst_na = report
        .per_check
        .iter()
        .map(|c| (c.na as f64 / policy.trials as f64, c.id))
        .fold((0.0, ""), |a, b| if b.0 > a.0 { b } else { a });
    for c in report.per_check.iter().filter(|c| c.fail > 0 || c.na > 0) {
        let _ = writeln!(
            std::io::stderr(),
            "  {}: pass {} fail {} na {} ({:?})",
            c.id, c.pass, c.fail, c.na, c.na_reasons
        );
    }
    let pass = checks.len() >= 50
        && failures == 0
        && worst_na.0 < 0.5
        && took <= Duration::from_secs(300);
    line(
        3,
        "registry",
        pass,
        format!(
            "{} checks x 1000 samples, seed 42, threshold 1e-7: {failures} failures; highest NA rate {:.1}% ({}); {took:.2?}",
            checks.len(),
            100.0 * worst_na.0,
            worst_na.1
        ),
    );
    assert!(pass);
}

fn bary_gap(tri: &Triangle, b: BaryCoords, q: Point2) -> f64 {
    tri.bary_to_point(b).unwrap().dist(q) / tri.diameter()
}

#[test]
fn criterion_4_barycentrics() {
    let mut worst = 0.0f64;
    for s in samples(200) {
        let m = s.tri.metrics();
        let triad = Triad::general(&s.tri, s.theta).unwrap();
        for (v, g) in Vertex::ALL.iter().zip(triad.configs.iter()) {
            worst = worst
                .max(bary_gap(&s.tri, bary_d(&m, *v, triad.t()), g.d))
                .max(bary_gap(&s.tri, bary_oa(&m, *v, s.theta), g.arc.center))
                .max(bary_gap(&s.tri, bary_t(&m, *v, s.theta), g.t_touch));
        }
        let Ok(res) = apollonius(&triad) else { continue };
        let tb = bary_touchpoints(&m, triad.t());
        worst = worst
            .max(bary_gap(&s.tri, tb.u, res.inner.center))
            .max(bary_gap(&s.tri, tb.v, res.outer.center));
        for k in 0..3 {
            worst = worst
                .max(bary_gap(&s.tri, tb.u_touch[k], res.inner.touch[k]))
                .max(bary_gap(&s.tri, tb.v_touch[k], res.outer.touch[k]));
        }
    }
    let pass = worst <= 1e-9;
    line(4, "barycentric closed forms", pass, format!("max distance/diameter {worst:.2e} over 200 samples (D, O, T, Ua, U, Va, V)"));
    assert!(pass);
}

#[test]
fn criterion_5_spot_values() {
    let tri = Triangle::from_sides(4.0, 5.0, 6.0).unwrap();
    let m = tri.metrics();
    let res = apollonius(&Triad::general(&tri, 180.0).unwrap()).unwrap();
    // exact values for sides 4, 5, 6: r = √7/2, R = 8/√7, p = 15/2
    let s7 = 7f64.sqrt();
    let (r, big_r) = (s7 / 2.0, 8.0 / s7);
    let w = (4.0 * big_r + r) / 7.5;
    let printed = [
        ("r", m.r, r, 1.32287566),
        ("R", m.big_r, big_r, 3.02371578),
        ("W", m.w, w, 1.78903185),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (name, got, exact, shown) in printed {
        ok &= (got - exact).abs() <= 1e-12 * exact;
        // printed to eight decimals; within one unit of the last digit
        ok &= (got - shown).abs() <= 1.5e-8;
        detail.push_str(&format!("{name}={got:.10} "));
    }
    let ri = m.r * (m.w - 1.0);
    let ro = m.r * (m.w / 3.0 + 1.0);
    let ratio = (res.inner.rho + m.r) / (res.outer.rho - m.r);
    ok &= (res.inner.rho - ri).abs() <= 1e-12 * m.r;
    ok &= (res.outer.rho - ro).abs() <= 1e-12 * m.r;
    ok &= (ratio - 3.0).abs() <= 1e-12;
    detail.push_str(&format!(
        "rho_i={:.8} rho_o={:.8} (rho_i+r)/(rho_o-r)={ratio:.15}",
        res.inner.rho, res.outer.rho
    ));
    line(5, "4-5-6 spot values", ok, detail);
    assert!(ok);
}

#[test]
fn criterion_6_soddy() {
    let mut worst = 0.0f64;
    let mut below = 0;
    let mut order_ok = true;
    for s in samples(200) {
        let triad = Triad::general(&s.tri, s.theta).unwrap();
        let Ok(res) = apollonius(&triad) else { continue };
        let rep = soddy_line(&s.tri, &res).unwrap();
        worst = worst.max((rep.ui_over_iv - 3.0).abs() / 3.0);
        if triad.t() * s.tri.metrics().w < 1.0 {
            below += 1;
            order_ok &= res.inner.rho < 0.0 && rep.order_ge_u_i_v;
        }
    }
    let pass = worst <= 1e-9 && order_ok && below > 0;
    line(6, "Soddy ratio", pass, format!("max |UI/IV - 3|/3 = {worst:.2e}; ordering Ge,U,I,V holds on all {below} samples with tW<1"));
    assert!(pass);
}

#[test]
fn criterion_7_concurrence() {
    let mut worst_rho = 0.0f64;
    let mut worst_omega = 0.0f64;
    let mut used = 0;
    for s in samples(1000) {
        let m = s.tri.metrics();
        // t = 1/W needs every angle below 180° − θ/2 at that θ
        if let Ok(triad) = Triad::general(&s.tri, theta_of(concurrence_t(&m))) {
            used += 1;
            let (_, rho) = generic_apollonius_oracle(triad.gammas(), [1.0; 3]).unwrap();
            worst_rho = worst_rho.max(rho.abs() / m.r);
        }
        let omegas: Vec<_> = Vertex::ALL
            .iter()
            .map(|v| build_arc(&s.tri, *v, 120.0).unwrap().circle())
            .collect();
        let p = radical_center(&omegas[0], &omegas[1], &omegas[2]).unwrap();
        for w in &omegas {
            worst_omega = worst_omega.max(w.boundary_residual(p) / s.tri.diameter());
        }
    }
    let pass = worst_rho <= 1e-9 && worst_omega <= 1e-9 && used > 0;
    line(
        7,
        "concurrence thresholds",
        pass,
        format!("tW=1: max |rho_i|/r = {worst_rho:.2e} ({used} samples); theta=120: max miss {worst_omega:.2e} (1000 samples)"),
    );
    assert!(pass);
}

#[test]
fn criterion_8_miyamoto() {
    let mut worst = 0.0f64;
    let (mut internal, mut external) = (0, 0);
    for s in samples(100) {
        let rep = miyamoto_tangency(&s.tri, s.thetas).unwrap();
        worst = worst.max(rep.residual / s.tri.diameter());
        match rep.kind {
            TangencyKind::External => external += 1,
            _ => internal += 1,
        }
    }
    let pass = worst <= 1e-7;
    line(
        8,
        "Miyamoto generalization",
        pass,
        format!(
            "max tangency residual/scale {worst:.2e} over 100 samples with independent per-side theta; \
             contact internal in {internal}, external in {external} (external iff both inner radii are positive)"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_scaling() {
    let ids = [
        "S01", "S02", "S03", "S04", "S05", "S06", "S07", "S09",
    ];
    let mut worst = 0.0f64;
    let mut worst_s08 = 0.0f64;
    for s in samples(500) {
        for id in ids {
            let r = run_check(id, &s.tri, s.theta, 1e-10).unwrap();
            assert_ne!(r.verdict, Verdict::Fail, "{id} on {:?}", r.sample);
            worst = worst.max(r.residual.unwrap_or(0.0));
        }
        let r = run_check("S08", &s.tri, s.theta, 1e-9).unwrap();
        worst_s08 = worst_s08.max(r.residual.unwrap_or(0.0));
    }
    let pass = worst <= 1e-10 && worst_s08 <= 1e-9;
    line(9, "scaling laws", pass, format!("starred relations max {worst:.2e}; u^2, v^2, w^2 max {worst_s08:.2e}; 500 samples"));
    assert!(pass);
}

#[test]
fn criterion_10_determinism() {
    let policy = SamplePolicy {
        trials: 100,
        ..SamplePolicy::default()
    };
    let checks = select_checks(&[]).unwrap();
    let a = run_suite(&policy, &checks).unwrap().to_json();
    let b = run_suite(&policy, &checks).unwrap().to_json();
    let fig = |s: &Sample| {
        Figure {
            layers: vec![Layer::Apollonius, Layer::Soddy, Layer::Witness],
            ..Figure::new(s.tri, [s.theta; 3])
        }
        .render()
    };
    let s = draw_sample(&policy, 3);
    let same_svg = fig(&s) == fig(&s);
    let pass = a == b && same_svg;
    line(10, "determinism", pass, format!("report {} bytes identical: {}; svg identical: {same_svg}", a.len(), a == b));
    assert!(pass);
}

#[test]
fn closed_forms_match_constructions_on_456() {
    // sanity link between the spot values and the constructed circles
    let tri = Triangle::from_sides(4.0, 5.0, 6.0).unwrap();
    let m = tri.metrics();
    let res = apollonius(&Triad::general(&tri, 180.0).unwrap()).unwrap();
    assert!((res.inner.rho - rho_inner(&m, 1.0)).abs() < 1e-12);
    assert!((res.outer.rho - rho_outer(&m, 1.0)).abs() < 1e-12);
}
