//! Tangent lines from a point to a conic, and their interplay with a circle.
//!
//! The slopes of the two tangents from `A` to `S(x,y) = 0` solve
//! `U m² − 2V m + W = 0` with discriminant `4(V² − UW) = −4·S_AA·det S`.
//! When `U ≈ 0` one tangent is vertical and the other has slope `W/(2V)`.

use crate::conic::{Circle, ConicMatrix, Point, Tolerances, residual_scale};
use crate::error::{Error, Result};

/// The pair of tangent directions from a point to a conic.
///
/// Directions are unit vectors; scalar slopes are attached only when finite.
/// The first tangent is the one with the larger signed slope when both are
/// finite, otherwise the vertical one comes first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentPair {
    pub dir1: Point,
    pub dir2: Point,
    pub slope1: Option<f64>,
    pub slope2: Option<f64>,
    pub coincident: bool,
}

/// `(U, V, W)` of the tangent-slope quadratic at `A`.
pub fn tangent_coefficients(s: &ConicMatrix, a: Point) -> (f64, f64, f64) {
    let ConicMatrix {
        a: ca,
        b: cb,
        c: cc,
        d: cd,
        e: ce,
        f: cf,
    } = *s;
    let u = (ca * cc - cb * cb) * a.x * a.x + 2.0 * (cc * cd - cb * ce) * a.x + cc * cf - ce * ce;
    let v = (ca * cc - cb * cb) * a.x * a.y
        + (ca * ce - cb * cd) * a.x
        + (cc * cd - cb * ce) * a.y
        + cd * ce
        - cb * cf;
    let w = (ca * cc - cb * cb) * a.y * a.y + 2.0 * (ca * ce - cb * cd) * a.y + ca * cf - cd * cd;
    (u, v, w)
}

fn unit_from_slope(m: f64) -> Point {
    let norm = m.hypot(1.0);
    Point::new(1.0 / norm, m / norm)
}

const VERTICAL: Point = Point { x: 0.0, y: 1.0 };

/// Both tangent directions from `A` to the conic `S`.
///
/// Fails with [`Error::NoRealTangents`] when the slope quadratic has no real
/// roots (`S_AA` has the wrong sign for the conic kind) and with
/// [`Error::DegenerateTangency`] when `U` and `V` both vanish.
pub fn tangents_from(s: &ConicMatrix, a: Point, tol: &Tolerances) -> Result<TangentPair> {
    let (u, v, w) = tangent_coefficients(s, a);
    let scale = residual_scale(&[u, v, w]);
    let disc = v * v - u * w;
    if disc < -tol.degeneracy_tol * scale * scale {
        return Err(Error::NoRealTangents);
    }
    let coincident = disc.abs() <= tol.degeneracy_tol * scale * scale;
    if u.abs() > tol.degeneracy_tol * scale {
        let root = disc.max(0.0).sqrt();
        let m1 = (v + root) / u;
        let m2 = (v - root) / u;
        // Larger signed slope first.
        let (m1, m2) = if m1 >= m2 { (m1, m2) } else { (m2, m1) };
        Ok(TangentPair {
            dir1: unit_from_slope(m1),
            dir2: unit_from_slope(m2),
            slope1: Some(m1),
            slope2: Some(m2),
            coincident,
        })
    } else if v.abs() > tol.degeneracy_tol * scale {
        let m = w / (2.0 * v);
        Ok(TangentPair {
            dir1: VERTICAL,
            dir2: unit_from_slope(m),
            slope1: None,
            slope2: Some(m),
            coincident,
        })
    } else if coincident {
        // U = V = 0 with a double root: the single tangent is vertical.
        Ok(TangentPair {
            dir1: VERTICAL,
            dir2: VERTICAL,
            slope1: None,
            slope2: None,
            coincident: true,
        })
    } else {
        Err(Error::DegenerateTangency)
    }
}

/// The second intersection of the line through `A` (on the circle) with the
/// circle, in the given direction. Tangent lines return `A` itself.
///
/// The line parameterized as `A + s·dir` meets the circle again at
/// `s = −2·dir·(A − O)` because `|dir| = 1`.
pub fn second_intersection(c: &Circle, a: Point, dir: Point, tol: &Tolerances) -> Result<Point> {
    if !c.contains_on_boundary(a, tol) {
        return Err(Error::PointNotOnCircle);
    }
    let rel = a - c.center;
    let s = -2.0 * (dir.x * rel.x + dir.y * rel.y);
    Ok(a + dir * s)
}

/// Direction of the chord `BC` cut out on the circle by the two tangents
/// from `A`, as an unnormalized `(dx, dy)` pair so vertical chords are
/// representable. `dx` is the slope denominator, `dy` the numerator.
pub fn chord_slope(s: &ConicMatrix, c: &Circle, a: Point, tol: &Tolerances) -> Result<Point> {
    if !c.contains_on_boundary(a, tol) {
        return Err(Error::PointNotOnCircle);
    }
    let (u, v, w) = tangent_coefficients(s, a);
    let scale = residual_scale(&[u, v, w]);
    let disc = v * v - u * w;
    if disc < -tol.degeneracy_tol * scale * scale {
        return Err(Error::NoRealTangents);
    }
    let dx = a.x - c.center.x;
    let dy = a.y - c.center.y;
    let num = dx * (u - w) + 2.0 * v * dy;
    let den = dy * (u - w) - 2.0 * v * dx;
    let dir_scale = residual_scale(&[dx * (u - w), 2.0 * v * dy, dy * (u - w), 2.0 * v * dx]);
    if num.abs() < tol.degeneracy_tol * dir_scale && den.abs() < tol.degeneracy_tol * dir_scale {
        return Err(Error::DegenerateChord);
    }
    Ok(Point::new(den, num))
}

/// The common-tangent detector `f₁(A) = U·dx² + 2V·dx·dy + W·dy²` where
/// `(dx, dy) = A − O`. For `A` on the circle, `f₁(A) = 0` (or `U = 0` with a
/// vertical common tangent) exactly when a tangent from `A` to the conic is
/// also tangent to the circle.
pub fn common_tangent_residual(
    s: &ConicMatrix,
    c: &Circle,
    a: Point,
    tol: &Tolerances,
) -> Result<f64> {
    if !c.contains_on_boundary(a, tol) {
        return Err(Error::PointNotOnCircle);
    }
    let (u, v, w) = tangent_coefficients(s, a);
    let dx = a.x - c.center.x;
    let dy = a.y - c.center.y;
    Ok(u * dx * dx + 2.0 * v * dx * dy + w * dy * dy)
}

/// Discriminant residual of the line through `A` with direction `dir`
/// against the conic: zero iff the line is tangent.
///
/// Substituting `A + s·dir` into `S` gives `p2·s² + 2·p1·s + p0`; tangency is
/// `p1² − p2·p0 = 0`. Used as the independent tangency certificate.
pub fn line_tangency_residual(s: &ConicMatrix, a: Point, dir: Point) -> f64 {
    let p2 = s.a * dir.x * dir.x + 2.0 * s.b * dir.x * dir.y + s.c * dir.y * dir.y;
    let p1 = (s.a * a.x + s.b * a.y + s.d) * dir.x + (s.b * a.x + s.c * a.y + s.e) * dir.y;
    let p0 = s.s_value(a);
    p1 * p1 - p2 * p0
}
