mod common;

use myofibril::actuation::{junction_stretch, restoring_force};
use myofibril::geometry::{semi_ellipse_arc_length, solve_major_axis};
use myofibril::material::{wall_stress_factor, BUILTIN_NAMES, DEFAULT_LAMBDA_MAX};
use myofibril::validation::{discrete_frechet, normalized_frechet, r_squared, Curve};
use myofibril::{SpaGeometry, YeohMaterial};
use proptest::prelude::*;

fn curve_strategy() -> impl Strategy<Value = Curve> {
    prop::collection::vec((0.01..3.0_f64, -50.0..50.0_f64), 2..12).prop_map(|steps| {
        let mut x = 0.0;
        let points = steps
            .into_iter()
            .map(|(dx, y)| {
                x += dx;
                (x, y)
            })
            .collect();
        Curve::new("p", points).unwrap()
    })
}

proptest! {
    #[test]
    fn inverse_stress_round_trips(idx in 0..BUILTIN_NAMES.len(), lambda in 1.0..4.5_f64) {
        let m = YeohMaterial::builtin(BUILTIN_NAMES[idx]).unwrap();
        let sigma = m.cauchy_stress(lambda).unwrap();
        let back = m.inverse_cauchy_stress(sigma, DEFAULT_LAMBDA_MAX).unwrap();
        prop_assert!((back - lambda).abs() <= 1e-9 * lambda);
    }

    #[test]
    fn major_axis_solver_inverts_arc(r2 in 0.01..100.0_f64, scale in 1.0..6.0_f64) {
        let r1 = r2 * scale;
        let arc = semi_ellipse_arc_length(r1, r2).unwrap();
        let solved = solve_major_axis(arc, 2.0 * r2).unwrap();
        prop_assert!((solved - r1).abs() <= 1e-9 * r1);
    }

    #[test]
    fn normalized_frechet_ignores_affine_rescaling(
        a in curve_strategy(),
        b in curve_strategy(),
        sx in 0.1..10.0_f64,
        sy in 0.1..10.0_f64,
        tx in -100.0..100.0_f64,
        ty in -100.0..100.0_f64,
    ) {
        let map = |c: &Curve| Curve::new("m", c.points.iter().map(|&(x, y)| (sx * x + tx, sy * y + ty)).collect()).unwrap();
        let base = normalized_frechet(&a, &b);
        let mapped = normalized_frechet(&map(&a), &map(&b));
        match (base, mapped) {
            (Ok(u), Ok(v)) => prop_assert!((u - v).abs() <= 1e-9 * (1.0 + u)),
            (Err(_), Err(_)) => {}
            (u, v) => prop_assert!(false, "{:?} vs {:?}", u, v),
        }
    }

    #[test]
    fn frechet_is_symmetric(a in curve_strategy(), b in curve_strategy()) {
        prop_assert_eq!(discrete_frechet(&a, &b).unwrap(), discrete_frechet(&b, &a).unwrap());
    }

    #[test]
    fn r_squared_invariant_under_shared_affine_map(
        pairs in prop::collection::vec((-10.0..10.0_f64, -10.0..10.0_f64), 3..20),
        s in 0.1..10.0_f64,
        t in -10.0..10.0_f64,
    ) {
        let mapped: Vec<_> = pairs.iter().map(|&(r, m)| (s * r + t, s * m + t)).collect();
        if let (Ok(u), Ok(v)) = (r_squared(&pairs), r_squared(&mapped)) {
            prop_assert!((u - v).abs() <= 1e-8 * (1.0 + u.abs()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn restoring_force_balances_chamber_load(
        idx in 0..BUILTIN_NAMES.len(),
        ratio in 0.2..1.5_f64,
        pressure_frac in 0.0..1.0_f64,
    ) {
        let m = YeohMaterial::builtin(BUILTIN_NAMES[idx]).unwrap();
        let spa = SpaGeometry::fem_study(ratio, 10.0).unwrap();
        let pressure = pressure_frac * 0.01;
        let lambda = junction_stretch(pressure, &spa, &m).unwrap();
        let k = wall_stress_factor(spa.t_w, spa.h_ch).unwrap();
        let direct = 2.0 * pressure * k * spa.a_ch * spa.b_ch;
        let f_r = restoring_force(lambda, &spa, &m).unwrap();
        prop_assert!((f_r - direct).abs() <= 1e-9 * (1.0 + direct));
    }
}
