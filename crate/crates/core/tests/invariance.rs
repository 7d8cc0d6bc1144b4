//! Registry verdicts do not depend on placement, orientation or units.

use ajima::kernel::Point2;
use ajima::triangle::Triangle;
use ajima::verify::{run_check, select_checks, CheckResult, Verdict};
use proptest::prelude::*;

const IDS: &[&str] = &["T01", "T03", "A01", "A10", "P01", "P12", "P34", "F01", "G01", "V02"];

fn moved(tri: &Triangle, angle: f64, shift: Point2, scale: f64) -> Triangle {
    let [a, b, c] = tri.vertices.map(|p| p.rotate(angle) * scale + shift);
    Triangle::new(a, b, c).unwrap()
}

fn same(x: &CheckResult, y: &CheckResult) -> bool {
    match (&x.verdict, &y.verdict) {
        (Verdict::NotApplicable { .. }, Verdict::NotApplicable { .. }) => true,
        (Verdict::NotApplicable { .. }, _) | (_, Verdict::NotApplicable { .. }) => false,
        _ => (x.residual.unwrap() - y.residual.unwrap()).abs() < 1e-9,
    }
}

#[test]
fn ids_resolve() {
    let ids: Vec<String> = IDS.iter().map(|s| s.to_string()).collect();
    assert_eq!(select_checks(&ids).unwrap().len(), IDS.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rigid_motion_and_scale(
        a in 2.0..6.0f64,
        b in 2.0..6.0f64,
        c in 2.0..6.0f64,
        theta in 30.0..170.0f64,
        angle in 0.0..std::f64::consts::TAU,
        dx in -50.0..50.0f64,
        dy in -50.0..50.0f64,
        scale in 0.2..20.0f64,
    ) {
        prop_assume!(a < b + c - 0.2 && b < a + c - 0.2 && c < a + b - 0.2);
        let tri = Triangle::from_sides(a, b, c).unwrap();
        let other = moved(&tri, angle, Point2::new(dx, dy), scale);
        for id in IDS {
            let x = run_check(id, &tri, theta, 1e-7).unwrap();
            let y = run_check(id, &other, theta, 1e-7).unwrap();
            prop_assert!(same(&x, &y), "{id}: {:?} vs {:?}", x.verdict, y.verdict);
        }
    }
}
