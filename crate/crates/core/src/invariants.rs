//! Triangle centers and the family invariants of Poncelet triangles.
//!
//! For a family on a pair with circle center `O` and focal distances `d_±`:
//! the orthocenter sweeps the circle of radius `d₊d₋/R` about the reflection
//! of `O` through the conic center, `Σ sides² = 9R² − |OH|²`, and for a
//! concentric pair `Σ|V − P_λ|² = 3R² + λ(3λ−2)c⁴/R²` along the Euler line.

use crate::conic::{CentralConic, Point, Tolerances, residual_scale};
use crate::error::{Error, Result};
use crate::poncelet::{PonceletPair, PonceletTriangle, family};

/// The classical centers of a triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleCenters {
    pub circumcenter: Point,
    pub circumradius: f64,
    pub centroid: Point,
    pub orthocenter: Point,
    pub nine_point_center: Point,
    pub de_longchamps: Point,
}

fn collinear(a: Point, b: Point, c: Point, tol: &Tolerances) -> bool {
    let cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let scale = residual_scale(&[
        (b.x - a.x) * (c.y - a.y),
        (b.y - a.y) * (c.x - a.x),
    ]);
    cross.abs() < tol.degeneracy_tol * scale
}

/// Circumcenter by perpendicular-bisector intersection.
pub fn circumcenter(a: Point, b: Point, c: Point, tol: &Tolerances) -> Result<Point> {
    if collinear(a, b, c, tol) {
        return Err(Error::DegenerateTriangle);
    }
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    let aa = a.x * a.x + a.y * a.y;
    let bb = b.x * b.x + b.y * b.y;
    let cc = c.x * c.x + c.y * c.y;
    let ux = (aa * (b.y - c.y) + bb * (c.y - a.y) + cc * (a.y - b.y)) / d;
    let uy = (aa * (c.x - b.x) + bb * (a.x - c.x) + cc * (b.x - a.x)) / d;
    Ok(Point::new(ux, uy))
}

/// All centers from the vertices: `G` as the vertex mean, `H = 3G − 2O`,
/// `N = (O + H)/2`, `L = 2O − H`.
pub fn centers(a: Point, b: Point, c: Point, tol: &Tolerances) -> Result<TriangleCenters> {
    let o = circumcenter(a, b, c, tol)?;
    let r = o.dist(a);
    let g = (a + b + c) * (1.0 / 3.0);
    let h = g * 3.0 - o * 2.0;
    let n = o.midpoint(h);
    let l = o * 2.0 - h;
    Ok(TriangleCenters {
        circumcenter: o,
        circumradius: r,
        centroid: g,
        orthocenter: h,
        nine_point_center: n,
        de_longchamps: l,
    })
}

/// Distance of the triangle's orthocenter from the circle it must lie on:
/// center `−O` (reflection of the circle center through the conic center),
/// radius `d₊d₋/R`.
pub fn orthocenter_locus_residual(
    pair: &PonceletPair,
    t: &PonceletTriangle,
    tol: &Tolerances,
) -> Result<f64> {
    let cs = centers(t.a, t.b, t.c, tol)?;
    let (dp, dm) = pair.circle.focal_distances(&pair.conic);
    let o_hat = -pair.circle.center;
    let r_hat = dp * dm / pair.circle.radius;
    Ok((cs.orthocenter.dist(o_hat) - r_hat).abs())
}

/// Deviation of `P_λ = (1−λ)O + λH` from its locus circle: center
/// `(1−2λ)·O` (conic-centered coordinates), radius `|λ|·d₊d₋/R`.
pub fn euler_point_locus_residual(
    pair: &PonceletPair,
    t: &PonceletTriangle,
    lambda: f64,
    tol: &Tolerances,
) -> Result<f64> {
    let cs = centers(t.a, t.b, t.c, tol)?;
    let o = pair.circle.center;
    let p = o * (1.0 - lambda) + cs.orthocenter * lambda;
    let locus_center = o * (1.0 - 2.0 * lambda);
    let (dp, dm) = pair.circle.focal_distances(&pair.conic);
    let r = lambda.abs() * dp * dm / pair.circle.radius;
    Ok((p.dist(locus_center) - r).abs())
}

/// Residual of the pedal-curve equation of the conic with respect to `o`,
/// evaluated at `x`:
///
/// ```text
/// (x(x−x_O) + y(y−y_O))² / ((a−t)(b−t)) = (x−x_O)²/(b−t) + (y−y_O)²/(a−t)
/// ```
pub fn pedal_residual(conic: &CentralConic, o: Point, x: Point) -> f64 {
    let at = conic.family_a() - conic.family_t();
    let bt = conic.family_b() - conic.family_t();
    let dx = x.x - o.x;
    let dy = x.y - o.y;
    let g = x.x * dx + x.y * dy;
    g * g / (at * bt) - (dx * dx / bt + dy * dy / at)
}

/// Focus-centered pairs only: the nine-point circle of every family member
/// is the conic's auxiliary circle (center at the conic center, radius equal
/// to the semi-major axis). Returns the worst of the three side-midpoint
/// distance residuals, the nine-point-radius residual `|R/2 − α|`, and the
/// nine-point-center offset.
pub fn nine_point_auxiliary_residual(
    pair: &PonceletPair,
    t: &PonceletTriangle,
    tol: &Tolerances,
) -> Result<f64> {
    if !pair.is_focus_centered(tol) {
        return Err(Error::NotFocusCentered);
    }
    let alpha = pair.conic.semi_major();
    let mids = [
        t.a.midpoint(t.b),
        t.b.midpoint(t.c),
        t.c.midpoint(t.a),
    ];
    let mut worst: f64 = 0.0;
    for m in mids {
        worst = worst.max((m.dist(Point::ORIGIN) - alpha).abs());
    }
    let cs = centers(t.a, t.b, t.c, tol)?;
    worst = worst.max((pair.circle.radius / 2.0 - alpha).abs());
    worst = worst.max(cs.nine_point_center.dist(Point::ORIGIN));
    Ok(worst)
}

/// `|AP|² + |BP|² + |CP|²`.
pub fn leibniz_sum(a: Point, b: Point, c: Point, p: Point) -> f64 {
    a.dist_sq(p) + b.dist_sq(p) + c.dist_sq(p)
}

/// `|AB|² + |BC|² + |CA|²`.
pub fn sum_squared_sides(a: Point, b: Point, c: Point) -> f64 {
    a.dist_sq(b) + b.dist_sq(c) + c.dist_sq(a)
}

/// Concentric pairs only: `Σ|V − P_λ|²` along the Euler line, which equals
/// `3R² + λ(3λ−2)c⁴/R²` for every triangle of the family.
pub fn euler_line_sum(
    pair: &PonceletPair,
    t: &PonceletTriangle,
    lambda: f64,
    tol: &Tolerances,
) -> Result<f64> {
    if !pair.is_concentric(tol) {
        return Err(Error::NotConcentric);
    }
    let cs = centers(t.a, t.b, t.c, tol)?;
    let p = pair.circle.center * (1.0 - lambda) + cs.orthocenter * lambda;
    Ok(leibniz_sum(t.a, t.b, t.c, p))
}

/// Closed form of [`euler_line_sum`] for a concentric pair.
pub fn euler_line_sum_formula(r: f64, c: f64, lambda: f64) -> f64 {
    3.0 * r * r + lambda * (3.0 * lambda - 2.0) * c.powi(4) / (r * r)
}

/// Family spread statistics for the invariance characterization: spread of
/// the squared-side sum, of the Leibniz sum at a fixed probe point, and of
/// the orthocenter position, over an `n`-seed sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceSweep {
    pub samples: usize,
    pub side_sum_spread: f64,
    pub point_sum_spread: f64,
    pub orthocenter_spread: f64,
    pub mean_side_sum: f64,
}

/// Sweeps `n` seeds and reports max−min spreads. The side-sum spread
/// vanishes iff the circle center is the conic center or a focus; the
/// point-sum and orthocenter spreads vanish iff it is a focus.
pub fn invariance_sweep(
    pair: &PonceletPair,
    n: usize,
    probe: Point,
    tol: &Tolerances,
) -> Result<InvarianceSweep> {
    let fam = family(pair, n, tol)?;
    let mut side_min = f64::INFINITY;
    let mut side_max = f64::NEG_INFINITY;
    let mut point_min = f64::INFINITY;
    let mut point_max = f64::NEG_INFINITY;
    let mut side_total = 0.0;
    let mut h_ref: Option<Point> = None;
    let mut h_spread: f64 = 0.0;
    for t in &fam.triangles {
        let ss = sum_squared_sides(t.a, t.b, t.c);
        side_min = side_min.min(ss);
        side_max = side_max.max(ss);
        side_total += ss;
        let ps = leibniz_sum(t.a, t.b, t.c, probe);
        point_min = point_min.min(ps);
        point_max = point_max.max(ps);
        let h = centers(t.a, t.b, t.c, tol)?.orthocenter;
        match h_ref {
            None => h_ref = Some(h),
            Some(h0) => h_spread = h_spread.max(h.dist(h0)),
        }
    }
    Ok(InvarianceSweep {
        samples: fam.triangles.len(),
        side_sum_spread: side_max - side_min,
        point_sum_spread: point_max - point_min,
        orthocenter_spread: h_spread,
        mean_side_sum: side_total / fam.triangles.len() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::Circle;
    use crate::poncelet::{PonceletPair, triangle_from_seed};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn standard_concentric() -> PonceletPair {
        let conic = CentralConic::new(3.0, 1.0, 0.0).unwrap();
        let circle = Circle::new(Point::ORIGIN, 1.0 + 3.0_f64.sqrt()).unwrap();
        PonceletPair::new(circle, conic, &tol())
    }

    fn focus_centered() -> PonceletPair {
        let conic = CentralConic::new(2.0, 0.0, -2.0).unwrap();
        let circle = Circle::new(Point::new(2.0_f64.sqrt(), 0.0), 4.0).unwrap();
        PonceletPair::new(circle, conic, &tol())
    }

    #[test]
    fn centers_examples() {
        // Equilateral on the unit circle: everything collapses to the origin.
        let pts: Vec<Point> = [90.0_f64, 210.0, 330.0]
            .iter()
            .map(|deg| {
                let th = deg.to_radians();
                Point::new(th.cos(), th.sin())
            })
            .collect();
        let cs = centers(pts[0], pts[1], pts[2], &tol()).unwrap();
        for p in [
            cs.circumcenter,
            cs.centroid,
            cs.orthocenter,
            cs.nine_point_center,
            cs.de_longchamps,
        ] {
            assert!(p.dist(Point::ORIGIN) < 1e-12);
        }

        // Right triangle on the unit circle: H at the right-angle vertex.
        let cs = centers(
            Point::new(1.0, 0.0),
            Point::new(-1.0, 0.0),
            Point::new(0.0, 1.0),
            &tol(),
        )
        .unwrap();
        assert!(cs.circumcenter.dist(Point::ORIGIN) < 1e-12);
        assert!(cs.orthocenter.dist(Point::new(0.0, 1.0)) < 1e-12);

        assert_eq!(
            centers(Point::ORIGIN, Point::new(1.0, 1.0), Point::new(2.0, 2.0), &tol()),
            Err(Error::DegenerateTriangle)
        );
    }

    #[test]
    fn centers_match_altitude_intersection() {
        let (a, b, c) = (Point::new(2.0, 0.0), Point::new(-1.0, 1.0), Point::new(0.0, -2.0));
        let cs = centers(a, b, c, &tol()).unwrap();
        // H must lie on the altitude from A: (H - A) ⟂ (C - B).
        let dot = (cs.orthocenter.x - a.x) * (c.x - b.x) + (cs.orthocenter.y - a.y) * (c.y - b.y);
        assert!(dot.abs() < 1e-10);
        let dot = (cs.orthocenter.x - b.x) * (c.x - a.x) + (cs.orthocenter.y - b.y) * (c.y - a.y);
        assert!(dot.abs() < 1e-10);
        // Circumcenter equidistant from all vertices.
        assert!((cs.circumcenter.dist(b) - cs.circumradius).abs() < 1e-10);
        assert!((cs.circumcenter.dist(c) - cs.circumradius).abs() < 1e-10);
    }

    #[test]
    fn orthocenter_locus_concentric() {
        let pair = standard_concentric();
        let expect = 3.0_f64.sqrt() - 1.0;
        for i in 0..12 {
            let th = i as f64 * std::f64::consts::PI / 6.0;
            let t = triangle_from_seed(&pair, th, &tol()).unwrap();
            let res = orthocenter_locus_residual(&pair, &t, &tol()).unwrap();
            assert!(res < 1e-9, "residual {res} at seed {th}");
            let h = centers(t.a, t.b, t.c, &tol()).unwrap().orthocenter;
            assert!((h.dist(Point::ORIGIN) - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn orthocenter_fixed_for_focus_centered() {
        let pair = focus_centered();
        let f_minus = Point::new(-2.0_f64.sqrt(), 0.0);
        for i in 0..12 {
            let th = i as f64 * std::f64::consts::PI / 6.0;
            let t = triangle_from_seed(&pair, th, &tol()).unwrap();
            let h = centers(t.a, t.b, t.c, &tol()).unwrap().orthocenter;
            assert!(h.dist(f_minus) < 1e-8, "H = {h:?}");
        }
    }

    #[test]
    fn euler_point_locus_consistency() {
        let pair = standard_concentric();
        let t = triangle_from_seed(&pair, 0.7, &tol()).unwrap();
        // λ = 0: P is O itself, radius 0.
        assert!(euler_point_locus_residual(&pair, &t, 0.0, &tol()).unwrap() < 1e-12);
        // λ = 1 reduces to the orthocenter locus.
        let a = euler_point_locus_residual(&pair, &t, 1.0, &tol()).unwrap();
        let b = orthocenter_locus_residual(&pair, &t, &tol()).unwrap();
        assert!((a - b).abs() < 1e-12);
        for lambda in [-1.0, 0.5, 2.0] {
            assert!(euler_point_locus_residual(&pair, &t, lambda, &tol()).unwrap() < 1e-9);
        }
    }

    #[test]
    fn pedal_residual_examples() {
        let conic = CentralConic::new(3.0, 1.0, 0.0).unwrap();
        let focus = Point::new(2.0_f64.sqrt(), 0.0);
        // Auxiliary-circle point (vertex of the ellipse).
        assert!(pedal_residual(&conic, focus, Point::new(3.0_f64.sqrt(), 0.0)).abs() < 1e-12);
        // O always lies on its own pedal curve.
        let o = Point::new(0.3, -0.8);
        assert!(pedal_residual(&conic, o, o).abs() < 1e-12);
        // Foot of the perpendicular from O to a tangent line lies on the curve.
        let s = conic.to_matrix();
        let p = Point::new(3.0_f64.sqrt() * 0.6_f64.cos(), 0.6_f64.sin());
        assert!(s.s_value(p).abs() < 1e-12);
        let tangent = s.polar_line(p, &tol()).unwrap();
        // Perpendicular foot from o onto px + qy + r = 0.
        let denom = tangent.p * tangent.p + tangent.q * tangent.q;
        let k = tangent.eval(o) / denom;
        let foot = Point::new(o.x - k * tangent.p, o.y - k * tangent.q);
        assert!(pedal_residual(&conic, o, foot).abs() < 1e-10);
    }

    #[test]
    fn nine_point_auxiliary_focus_centered() {
        let pair = focus_centered();
        for i in 0..12 {
            let th = i as f64 * std::f64::consts::PI / 6.0;
            let t = triangle_from_seed(&pair, th, &tol()).unwrap();
            let res = nine_point_auxiliary_residual(&pair, &t, &tol()).unwrap();
            assert!(res < 1e-8, "residual {res}");
        }
        let conc = standard_concentric();
        let t = triangle_from_seed(&conc, 0.0, &tol()).unwrap();
        assert_eq!(
            nine_point_auxiliary_residual(&conc, &t, &tol()),
            Err(Error::NotFocusCentered)
        );
    }

    #[test]
    fn leibniz_identity() {
        let (a, b, c) = (Point::new(2.0, 0.0), Point::new(-1.0, 1.0), Point::new(0.0, -2.0));
        let g = (a + b + c) * (1.0 / 3.0);
        for p in [Point::new(1.0, 1.0), Point::new(-3.0, 0.4), g] {
            let lhs = leibniz_sum(a, b, c, p);
            let rhs = leibniz_sum(a, b, c, g) + 3.0 * p.dist_sq(g);
            let scale = residual_scale(&[lhs, rhs]);
            assert!((lhs - rhs).abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn side_sum_euler_identity() {
        let (a, b, c) = (Point::new(2.0, 0.0), Point::new(-1.0, 1.0), Point::new(0.0, -2.0));
        let cs = centers(a, b, c, &tol()).unwrap();
        let lhs = sum_squared_sides(a, b, c);
        let rhs = 9.0 * cs.circumradius * cs.circumradius
            - cs.circumcenter.dist_sq(cs.orthocenter);
        let scale = residual_scale(&[lhs, rhs]);
        assert!((lhs - rhs).abs() < 1e-10 * scale);
    }

    #[test]
    fn concentric_side_sum_constant() {
        let pair = standard_concentric();
        let expect = 32.0 + 20.0 * 3.0_f64.sqrt();
        for i in 0..24 {
            let th = i as f64 * std::f64::consts::PI / 12.0;
            let t = triangle_from_seed(&pair, th, &tol()).unwrap();
            let ss = sum_squared_sides(t.a, t.b, t.c);
            assert!((ss - expect).abs() < 1e-7, "sum {ss} at seed {th}");
        }
    }

    #[test]
    fn euler_line_sum_matches_formula() {
        let pair = standard_concentric();
        let r = pair.circle.radius;
        let c = pair.conic.linear_eccentricity();
        let t = triangle_from_seed(&pair, 1.234, &tol()).unwrap();
        for lambda in [-1.0, 0.0, 0.5, 1.0, 2.0] {
            let got = euler_line_sum(&pair, &t, lambda, &tol()).unwrap();
            let want = euler_line_sum_formula(r, c, lambda);
            assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "lambda {lambda}");
        }
        // Nine-point value: 3R² - c⁴/(4R²).
        let n_val = euler_line_sum(&pair, &t, 0.5, &tol()).unwrap();
        let expect = 3.0 * r * r - c.powi(4) / (4.0 * r * r);
        assert!((n_val - expect).abs() < 1e-9);

        let fc = focus_centered();
        let t = triangle_from_seed(&fc, 0.0, &tol()).unwrap();
        assert_eq!(
            euler_line_sum(&fc, &t, 0.5, &tol()),
            Err(Error::NotConcentric)
        );
    }

    #[test]
    fn invariance_sweep_classifies_centers() {
        let pair = standard_concentric();
        let sweep = invariance_sweep(&pair, 60, Point::new(1.0, 1.0), &tol()).unwrap();
        assert!(sweep.side_sum_spread < 1e-8 * sweep.mean_side_sum);
        assert!(sweep.point_sum_spread > 1e-3);

        let fc = focus_centered();
        let sweep = invariance_sweep(&fc, 60, Point::new(1.0, 1.0), &tol()).unwrap();
        assert!(sweep.side_sum_spread < 1e-8 * sweep.mean_side_sum);
        assert!(sweep.point_sum_spread < 1e-7 * sweep.mean_side_sum);
        assert!(sweep.orthocenter_spread < 1e-7);
    }
}
