//! Randomized property tests for the algebraic building blocks.

use poncelet_core::conic::residual_scale;
use poncelet_core::invariants::{centers, leibniz_sum, sum_squared_sides};
use poncelet_core::marden::{
    inscribed_ellipse_at_circumcenter, marden_weights, weight_condition_residual,
};
use poncelet_core::poncelet::{triangle_from_seed, PonceletPair};
use poncelet_core::tangent::{line_tangency_residual, tangent_coefficients, tangents_from};
use poncelet_core::{CentralConic, Circle, ConicMatrix, Point, Tolerances};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -10.0_f64..10.0
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn conic_matrix() -> impl Strategy<Value = ConicMatrix> {
    (coord(), coord(), coord(), coord(), coord(), coord())
        .prop_map(|(a, b, c, d, e, f)| ConicMatrix::new(a, b, c, d, e, f))
}

fn confocal_ellipse() -> impl Strategy<Value = CentralConic> {
    (2.0_f64..8.0, 0.1_f64..1.5, -2.0_f64..0.9).prop_filter_map("valid ellipse", |(a, gap, t)| {
        let b = a - gap;
        CentralConic::new(a, b, t.min(b - 0.05)).ok()
    })
}

proptest! {
    #[test]
    fn s_pair_is_symmetric(s in conic_matrix(), a in point(), b in point()) {
        let lhs = s.s_pair(a, b);
        let rhs = s.s_pair(b, a);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * residual_scale(&[lhs, rhs]));
    }

    #[test]
    fn s_pair_diagonal_matches_s_value(s in conic_matrix(), a in point()) {
        let lhs = s.s_pair(a, a);
        let rhs = s.s_value(a);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * residual_scale(&[lhs, rhs]));
    }

    #[test]
    fn polar_line_evaluates_to_s_pair(s in conic_matrix(), a in point(), b in point()) {
        let tol = Tolerances::default();
        if let Ok(line) = s.polar_line(a, &tol) {
            let lhs = line.eval(b);
            let rhs = s.s_pair(a, b);
            prop_assert!((lhs - rhs).abs() <= 1e-8 * residual_scale(&[lhs, rhs]));
        }
    }

    #[test]
    fn tangent_slopes_satisfy_vieta(conic in confocal_ellipse(), a in point()) {
        let tol = Tolerances::default();
        let s = conic.to_matrix();
        let (u, v, w) = tangent_coefficients(&s, a);
        prop_assume!(u.abs() > 1e-3);
        prop_assume!(s.s_value(a) > 1e-3);
        if let Ok(pair) = tangents_from(&s, a, &tol) {
            if let (Some(m1), Some(m2)) = (pair.slope1, pair.slope2) {
                let sum = m1 + m2;
                let prod = m1 * m2;
                let sum_expect = 2.0 * v / u;
                let prod_expect = w / u;
                prop_assert!((sum - sum_expect).abs()
                    <= 1e-6 * residual_scale(&[sum, sum_expect]));
                prop_assert!((prod - prod_expect).abs()
                    <= 1e-6 * residual_scale(&[prod, prod_expect]));
            }
        }
    }

    #[test]
    fn tangent_lines_touch_the_conic(conic in confocal_ellipse(), a in point()) {
        let tol = Tolerances::default();
        let s = conic.to_matrix();
        prop_assume!(s.s_value(a) > 1e-3);
        if let Ok(pair) = tangents_from(&s, a, &tol) {
            for dir in [pair.dir1, pair.dir2] {
                let res = line_tangency_residual(&s, a, dir);
                let scale = residual_scale(&[s.s_value(a), conic.family_a()]);
                prop_assert!(res.abs() <= 1e-6 * scale * scale);
            }
        }
    }

    #[test]
    fn sum_of_squared_sides_matches_euler_identity(a in point(), b in point(), c in point()) {
        let tol = Tolerances::default();
        if let Ok(cs) = centers(a, b, c, &tol) {
            prop_assume!(cs.circumradius < 1e4);
            let lhs = sum_squared_sides(a, b, c);
            let rhs = 9.0 * cs.circumradius * cs.circumradius
                - cs.circumcenter.dist_sq(cs.orthocenter);
            prop_assert!((lhs - rhs).abs() <= 1e-6 * residual_scale(&[lhs, rhs]));
        }
    }

    #[test]
    fn leibniz_decomposition_about_centroid(
        a in point(), b in point(), c in point(), p in point()
    ) {
        let g = Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0);
        let lhs = leibniz_sum(a, b, c, p);
        let rhs = leibniz_sum(a, b, c, g) + 3.0 * p.dist_sq(g);
        prop_assert!((lhs - rhs).abs() <= 1e-8 * residual_scale(&[lhs, rhs]));
    }

    #[test]
    fn marden_weights_satisfy_linear_condition(a in point(), b in point(), c in point()) {
        let tol = Tolerances::default();
        if let Ok(w) = marden_weights(a, b, c, &tol) {
            let res = weight_condition_residual(a, b, c, w, &tol).unwrap();
            prop_assert!(res <= 1e-8);
        }
    }

    #[test]
    fn marden_weights_are_translation_invariant(
        a in point(), b in point(), c in point(), dx in coord(), dy in coord()
    ) {
        let tol = Tolerances::default();
        let shift = Point::new(dx, dy);
        if let (Ok(w0), Ok(w1)) = (
            marden_weights(a, b, c, &tol),
            marden_weights(a + shift, b + shift, c + shift, &tol),
        ) {
            for (x, y) in [(w0.0, w1.0), (w0.1, w1.1), (w0.2, w1.2)] {
                prop_assert!((x - y).abs() <= 1e-6 * residual_scale(&[x, y]));
            }
        }
    }

    #[test]
    fn inscribed_ellipse_touches_each_side(a in point(), b in point(), c in point()) {
        let tol = Tolerances::default();
        prop_assume!(a.dist(b) > 0.5 && b.dist(c) > 0.5 && c.dist(a) > 0.5);
        if let Ok(ell) = inscribed_ellipse_at_circumcenter(a, b, c, &tol) {
            let sides = [(b, c), (c, a), (a, b)];
            let scale = residual_scale(&[
                ell.semi_major * ell.semi_major,
                a.dist_sq(b),
                b.dist_sq(c),
            ]);
            for (i, (p, q)) in sides.iter().enumerate() {
                let xi = ell.tangency_points[i];
                let res = ell.string_residual(xi);
                prop_assert!(res.abs() <= 1e-6 * scale.sqrt());
                let tres = ell.line_tangency_residual(*p, *q - *p);
                prop_assert!(tres.abs() <= 1e-5 * scale * scale);
            }
        }
    }

    #[test]
    fn triangle_area_two_paths_agree(a in point(), b in point(), c in point()) {
        let tol = Tolerances::default();
        if let (Ok(shoelace), Ok(from_sides)) = (
            poncelet_core::area::triangle_area(a, b, c, &tol),
            poncelet_core::area::area_from_sides(a, b, c, &tol),
        ) {
            prop_assert!((shoelace - from_sides).abs()
                <= 1e-7 * residual_scale(&[shoelace, from_sides]));
        }
    }

    #[test]
    fn chapple_family_closes_from_any_admissible_seed(theta in 0.0..(2.0 * std::f64::consts::PI)) {
        let tol = Tolerances::default();
        // Concentric pair R = 1 + sqrt(3), c = sqrt(2): a known 3-Poncelet pair.
        let r = 1.0 + 3.0_f64.sqrt();
        let circle = Circle::new(Point::ORIGIN, r).unwrap();
        let conic = poncelet_core::poncelet::conic_from_circle_and_foci(
            &circle, 2.0_f64.sqrt(), &tol).unwrap();
        let pair = PonceletPair::new(circle, conic, &tol);
        prop_assert!(pair.is_pair());
        match triangle_from_seed(&pair, theta, &tol) {
            Ok(t) => {
                prop_assert!(t.closure_defect.abs() <= 1e-6 * r * r);
                for v in t.vertices() {
                    prop_assert!(circle.contains_on_boundary(v, &tol));
                }
            }
            Err(poncelet_core::Error::InadmissibleSeed(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error: {e}"),
        }
    }
}
