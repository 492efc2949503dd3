//! The inscribed ellipse of an oblique triangle centered at its circumcenter.
//!
//! With vertex weights `(l, m, n)`, the roots of `αz² − βz + γ = 0`
//! (`α = l+m+n`, `β = l(z_B+z_C) + m(z_C+z_A) + n(z_A+z_B)`,
//! `γ = l·z_Bz_C + n·z_Az_B + m·z_Cz_A`) are the foci of an ellipse
//! inscribed in the triangle whose tangency points divide `BC`, `CA`, `AB`
//! in the ratios `m:n`, `n:l`, `l:m`. Choosing the weights so that
//! `(z₊ + z₋)/2` is the circumcenter yields the unique circumcenter-centered
//! inellipse; the displayed determinant weights below solve that condition.

use crate::conic::{Point, Tolerances, residual_scale};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// The circumcenter-centered inscribed ellipse of an oblique triangle.
///
/// `tangency_points` are ordered `[on BC, on CA, on AB]`.
/// `tangency_inside_sides` reports whether every tangency point falls
/// strictly inside its side segment; this holds for acute triangles but can
/// fail for obtuse ones (mixed-sign weights place a tangency point on a
/// side-line extension) while the tangency itself still holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InscribedEllipse {
    pub focus1: Point,
    pub focus2: Point,
    pub center: Point,
    pub semi_major: f64,
    pub semi_minor: f64,
    pub tangency_points: [Point; 3],
    pub weights: (f64, f64, f64),
    pub tangency_inside_sides: bool,
}

fn z(p: Point) -> Complex64 {
    Complex64::new(p.x, p.y)
}

fn pt(c: Complex64) -> Point {
    Point::new(c.re, c.im)
}

fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a * d - b * c
}

/// Complex-coordinate circumcenter:
/// `z_O = −(z_A(|z_B|²−|z_C|²) + z_B(|z_C|²−|z_A|²) + z_C(|z_A|²−|z_B|²)) /
/// (conj(z_A)(z_B−z_C) + conj(z_B)(z_C−z_A) + conj(z_C)(z_A−z_B))`.
pub fn circumcenter_complex(a: Point, b: Point, c: Point, tol: &Tolerances) -> Result<Point> {
    let (za, zb, zc) = (z(a), z(b), z(c));
    let (na, nb, nc) = (za.norm_sqr(), zb.norm_sqr(), zc.norm_sqr());
    let num = za * (nb - nc) + zb * (nc - na) + zc * (na - nb);
    let den = za.conj() * (zb - zc) + zb.conj() * (zc - za) + zc.conj() * (za - zb);
    let scale = residual_scale(&[na, nb, nc]);
    if den.norm() < tol.degeneracy_tol * scale {
        return Err(Error::CollinearVertices);
    }
    Ok(pt(-num / den))
}

/// The determinant-form weights making the inellipse center the
/// circumcenter. Scaled arbitrarily; any nonzero multiple gives the same
/// ellipse. Fails with [`Error::RightAngleDegeneracy`] when a weight
/// vanishes (the triangle has a right angle).
pub fn marden_weights(a: Point, b: Point, c: Point, tol: &Tolerances) -> Result<(f64, f64, f64)> {
    let o = circumcenter_complex(a, b, c, tol)?;
    let d = det2(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
    let l = 2.0 * det2(b.x, b.y, c.x, c.y) - d
        + 2.0 * det2(o.x, o.y, b.x - c.x, b.y - c.y);
    let m = -2.0 * det2(a.x, a.y, c.x, c.y) - d
        - 2.0 * det2(o.x, o.y, a.x - c.x, a.y - c.y);
    let n = 2.0 * det2(a.x, a.y, b.x, b.y) - d
        + 2.0 * det2(o.x, o.y, a.x - b.x, a.y - b.y);
    let scale = l.abs() + m.abs() + n.abs();
    if l.abs() < tol.degeneracy_tol * scale
        || m.abs() < tol.degeneracy_tol * scale
        || n.abs() < tol.degeneracy_tol * scale
    {
        return Err(Error::RightAngleDegeneracy);
    }
    Ok((l, m, n))
}

/// Residual of the center condition
/// `l(z_B+z_C−2z_O) + m(z_A+z_C−2z_O) + n(z_A+z_B−2z_O) = 0` for a weight
/// triple, relative to the weight scale.
pub fn weight_condition_residual(a: Point, b: Point, c: Point, w: (f64, f64, f64), tol: &Tolerances) -> Result<f64> {
    let o = z(circumcenter_complex(a, b, c, tol)?);
    let (za, zb, zc) = (z(a), z(b), z(c));
    let two_o = o * 2.0;
    let sum = (zb + zc - two_o) * w.0 + (za + zc - two_o) * w.1 + (za + zb - two_o) * w.2;
    let scale = residual_scale(&[
        w.0 * (zb + zc - two_o).norm(),
        w.1 * (za + zc - two_o).norm(),
        w.2 * (za + zb - two_o).norm(),
    ]);
    Ok(sum.norm() / scale)
}

fn stable_quadratic_roots(alpha: Complex64, beta: Complex64, gamma: Complex64) -> (Complex64, Complex64) {
    // Roots of alpha z^2 - beta z + gamma = 0 with the sign-matched form to
    // avoid cancellation when |beta| dominates.
    let disc = (beta * beta - alpha * gamma * 4.0).sqrt();
    // Pick the sign that enlarges |beta ± disc|.
    let q = if (beta + disc).norm() >= (beta - disc).norm() {
        (beta + disc) * 0.5
    } else {
        (beta - disc) * 0.5
    };
    (q / alpha, gamma / q)
}

/// Builds the circumcenter-centered inellipse of an oblique triangle.
pub fn inscribed_ellipse_at_circumcenter(
    a: Point,
    b: Point,
    c: Point,
    tol: &Tolerances,
) -> Result<InscribedEllipse> {
    let (l, m, n) = marden_weights(a, b, c, tol)?;
    let o = circumcenter_complex(a, b, c, tol)?;
    let (za, zb, zc) = (z(a), z(b), z(c));
    let alpha = Complex64::new(l + m + n, 0.0);
    let beta = (zb + zc) * l + (zc + za) * m + (za + zb) * n;
    let gamma = zb * zc * l + za * zb * n + zc * za * m;
    if alpha.norm() < tol.degeneracy_tol * (l.abs() + m.abs() + n.abs()) {
        return Err(Error::InternalInconsistency("vanishing weight sum"));
    }
    let (z1, z2) = stable_quadratic_roots(alpha, beta, gamma);
    let focus1 = pt(z1);
    let focus2 = pt(z2);
    let center = focus1.midpoint(focus2);
    let center_res = center.dist(o);
    let scale = residual_scale(&[za.norm(), zb.norm(), zc.norm()]);
    if center_res > 1e3 * tol.abs_tol * scale {
        return Err(Error::InternalInconsistency(
            "inellipse center does not match circumcenter",
        ));
    }
    // Tangency points divide BC, CA, AB in the ratios m:n, n:l, l:m.
    let xi1 = pt((zb * n + zc * m) / (m + n));
    let xi2 = pt((zc * l + za * n) / (n + l));
    let xi3 = pt((za * m + zb * l) / (l + m));
    let inside = |p: Point, q: Point, x: Point| -> bool {
        let t = ((x.x - p.x) * (q.x - p.x) + (x.y - p.y) * (q.y - p.y)) / p.dist_sq(q);
        t > tol.degeneracy_tol && t < 1.0 - tol.degeneracy_tol
    };
    let tangency_inside_sides =
        inside(b, c, xi1) && inside(c, a, xi2) && inside(a, b, xi3);
    // The string property pins the size: |ξ − z₊| + |ξ − z₋| = 2·semi-major
    // at every tangency point.
    let string = xi1.dist(focus1) + xi1.dist(focus2);
    let semi_major = string / 2.0;
    let half_focal = focus1.dist(focus2) / 2.0;
    let semi_minor_sq = semi_major * semi_major - half_focal * half_focal;
    if semi_minor_sq <= 0.0 {
        return Err(Error::InternalInconsistency("imaginary semi-minor axis"));
    }
    Ok(InscribedEllipse {
        focus1,
        focus2,
        center,
        semi_major,
        semi_minor: semi_minor_sq.sqrt(),
        tangency_points: [xi1, xi2, xi3],
        weights: (l, m, n),
        tangency_inside_sides,
    })
}

impl InscribedEllipse {
    /// `|pF₁| + |pF₂| − 2·semi_major`: zero on the ellipse.
    pub fn string_residual(&self, p: Point) -> f64 {
        p.dist(self.focus1) + p.dist(self.focus2) - 2.0 * self.semi_major
    }

    /// Tangency residual of the line through `p` with direction `dir`
    /// against the ellipse, via the focal quadratic in general position.
    ///
    /// With center `Z`, major-axis direction `u` and axes `(α, β)`, the
    /// ellipse is `(ξ·u)²/α² + (ξ×u)²/β² = 1` for `ξ = p − Z`; the restricted
    /// quadratic's discriminant vanishes at tangency.
    pub fn line_tangency_residual(&self, p: Point, dir: Point) -> f64 {
        let zc = self.center;
        let axis = self.focus1 - self.focus2;
        let norm = axis.x.hypot(axis.y);
        // A circle (coincident foci) has no distinguished axis; any unit
        // vector works.
        let u = if norm > 0.0 {
            axis * (1.0 / norm)
        } else {
            Point::new(1.0, 0.0)
        };
        let rel = p - zc;
        let par = |v: Point| v.x * u.x + v.y * u.y;
        let perp = |v: Point| -v.x * u.y + v.y * u.x;
        let (a2, b2) = (self.semi_major * self.semi_major, self.semi_minor * self.semi_minor);
        let (x0, y0) = (par(rel), perp(rel));
        let (dx, dy) = (par(dir), perp(dir));
        let p2 = dx * dx / a2 + dy * dy / b2;
        let p1 = x0 * dx / a2 + y0 * dy / b2;
        let p0 = x0 * x0 / a2 + y0 * y0 / b2 - 1.0;
        p1 * p1 - p2 * p0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn circumcenter_examples() {
        let o = circumcenter_complex(
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(-1.0, 0.0),
            &tol(),
        )
        .unwrap();
        assert!(o.dist(Point::ORIGIN) < 1e-12);

        let (a, b, c) = (Point::new(2.0, 0.0), Point::new(-1.0, 1.0), Point::new(0.0, -2.0));
        let o = circumcenter_complex(a, b, c, &tol()).unwrap();
        let bisector = crate::invariants::circumcenter(a, b, c, &tol()).unwrap();
        assert!(o.dist(bisector) < 1e-10);

        assert_eq!(
            circumcenter_complex(
                Point::ORIGIN,
                Point::new(1.0, 1.0),
                Point::new(2.0, 2.0),
                &tol()
            ),
            Err(Error::CollinearVertices)
        );
    }

    #[test]
    fn weights_equilateral_equal() {
        let pts: Vec<Point> = [90.0_f64, 210.0, 330.0]
            .iter()
            .map(|d| Point::new(d.to_radians().cos(), d.to_radians().sin()))
            .collect();
        let (l, m, n) = marden_weights(pts[0], pts[1], pts[2], &tol()).unwrap();
        assert!((l - m).abs() < 1e-10 * l.abs());
        assert!((m - n).abs() < 1e-10 * l.abs());
    }

    #[test]
    fn weights_right_triangle_rejected() {
        assert_eq!(
            marden_weights(
                Point::new(1.0, 0.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, 1.0),
                &tol()
            ),
            Err(Error::RightAngleDegeneracy)
        );
    }

    #[test]
    fn weights_satisfy_center_condition() {
        let (a, b, c) = (Point::new(2.0, 0.0), Point::new(-1.0, 1.0), Point::new(0.0, -2.0));
        let w = marden_weights(a, b, c, &tol()).unwrap();
        let res = weight_condition_residual(a, b, c, w, &tol()).unwrap();
        assert!(res < 1e-10, "residual {res}");
    }

    #[test]
    fn equilateral_inellipse_is_incircle() {
        let pts: Vec<Point> = [90.0_f64, 210.0, 330.0]
            .iter()
            .map(|d| Point::new(d.to_radians().cos(), d.to_radians().sin()))
            .collect();
        let e = inscribed_ellipse_at_circumcenter(pts[0], pts[1], pts[2], &tol()).unwrap();
        // The focal quadratic has a double root at the center; extracting it
        // through the square root of a roundoff-level discriminant leaves
        // about sqrt(eps) of separation.
        assert!(e.focus1.dist(e.focus2) < 1e-6);
        assert!(e.center.dist(Point::ORIGIN) < 1e-10);
        assert!((e.semi_major - 0.5).abs() < 1e-10);
        assert!((e.semi_minor - 0.5).abs() < 1e-10);
        // Tangency at side midpoints.
        assert!(e.tangency_points[0].dist(pts[1].midpoint(pts[2])) < 1e-10);
        assert!(e.tangency_inside_sides);
    }

    #[test]
    fn generic_triangle_inellipse() {
        let (a, b, c) = (Point::new(2.0, 0.0), Point::new(-1.0, 1.0), Point::new(0.0, -2.0));
        let e = inscribed_ellipse_at_circumcenter(a, b, c, &tol()).unwrap();
        let o = circumcenter_complex(a, b, c, &tol()).unwrap();
        assert!(e.center.dist(o) < 1e-9);
        // String constancy across tangency points.
        for xi in e.tangency_points {
            assert!(e.string_residual(xi).abs() < 1e-9);
        }
        // Each side line is tangent.
        for (p, q) in [(b, c), (c, a), (a, b)] {
            let d = q - p;
            let norm = d.x.hypot(d.y);
            let res = e.line_tangency_residual(p, d * (1.0 / norm));
            assert!(res.abs() < 1e-9, "side residual {res}");
        }
    }

    #[test]
    fn right_triangle_ellipse_rejected() {
        assert_eq!(
            inscribed_ellipse_at_circumcenter(
                Point::new(1.0, 0.0),
                Point::new(-1.0, 0.0),
                Point::new(0.0, 1.0),
                &tol()
            ),
            Err(Error::RightAngleDegeneracy)
        );
    }
}
