//! Geometric primitives and the Joachimsthal symbol calculus.
//!
//! A conic is stored as the coefficient vector of
//! `S(x,y) = ax² + 2bxy + cy² + 2dx + 2ey + f`, equivalently the symmetric
//! 3×3 matrix pairing homogeneous points `(x, y, 1)`. The symbols
//! `S_AA = S(A)`, `S_AB` (the bilinear pairing of two points) and the polar
//! linear form `S_A` drive every tangency computation in the crate.

use crate::error::{Error, Result};

/// A point in the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dist_sq(&self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn midpoint(&self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl std::ops::Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A line in homogeneous form `px + qy + r = 0`.
///
/// Storing the triple instead of slope/intercept keeps vertical tangents on
/// the same code path as every other line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl Line {
    pub fn eval(&self, pt: Point) -> f64 {
        self.p * pt.x + self.q * pt.y + self.r
    }
}

/// Comparison thresholds used by every residual check in the crate.
///
/// Residuals are always compared against `abs_tol * scale` where `scale` is
/// `max(1, magnitude of the largest intermediate term)`; see [`residual_scale`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub degeneracy_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            degeneracy_tol: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn new(abs_tol: f64, rel_tol: f64, degeneracy_tol: f64) -> Result<Tolerances> {
        if abs_tol > 0.0 && rel_tol > 0.0 && degeneracy_tol > 0.0 {
            Ok(Tolerances {
                abs_tol,
                rel_tol,
                degeneracy_tol,
            })
        } else {
            Err(Error::InvalidTolerances)
        }
    }
}

/// `max(1, |t_i|)` over the intermediate terms of a residual computation.
pub fn residual_scale(terms: &[f64]) -> f64 {
    terms.iter().fold(1.0_f64, |acc, t| acc.max(t.abs()))
}

/// Coefficients of `S(x,y) = ax² + 2bxy + cy² + 2dx + 2ey + f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl ConicMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> ConicMatrix {
        ConicMatrix { a, b, c, d, e, f }
    }

    /// The unit circle `x² + y² − 1 = 0`.
    pub fn unit_circle() -> ConicMatrix {
        ConicMatrix::new(1.0, 0.0, 1.0, 0.0, 0.0, -1.0)
    }

    /// Determinant of the symmetric 3×3 matrix.
    pub fn det(&self) -> f64 {
        self.a * (self.c * self.f - self.e * self.e)
            - self.b * (self.b * self.f - self.e * self.d)
            + self.d * (self.b * self.e - self.c * self.d)
    }

    /// `S_AA = S(x_A, y_A)`. Sign classifies the point against the conic.
    pub fn s_value(&self, a: Point) -> f64 {
        self.a * a.x * a.x
            + 2.0 * self.b * a.x * a.y
            + self.c * a.y * a.y
            + 2.0 * self.d * a.x
            + 2.0 * self.e * a.y
            + self.f
    }

    /// The bilinear symbol `S_AB`; symmetric in its two arguments by
    /// construction (the expression is literally symmetric term by term).
    pub fn s_pair(&self, a: Point, b: Point) -> f64 {
        self.a * a.x * b.x
            + self.b * (a.x * b.y + b.x * a.y)
            + self.c * a.y * b.y
            + self.d * (a.x + b.x)
            + self.e * (a.y + b.y)
            + self.f
    }

    /// The polar line of `A`: the linear form `S_A(x,y) = 0`.
    ///
    /// For `A` on the conic this is the tangent at `A`; for `A` outside it is
    /// the chord of contact. Returns [`Error::NoFinitePolar`] when the
    /// quadratic part vanishes (the pole is the center of a central conic,
    /// whose polar is the line at infinity) and [`Error::DegeneratePolar`]
    /// when all three coefficients vanish.
    pub fn polar_line(&self, a: Point, tol: &Tolerances) -> Result<Line> {
        let p = self.a * a.x + self.b * a.y + self.d;
        let q = self.b * a.x + self.c * a.y + self.e;
        let r = self.d * a.x + self.e * a.y + self.f;
        let scale = residual_scale(&[
            self.a * a.x,
            self.b * a.y,
            self.b * a.x,
            self.c * a.y,
            self.d,
            self.e,
            self.f,
        ]);
        let lim = tol.degeneracy_tol * scale;
        if p.abs() < lim && q.abs() < lim {
            if r.abs() < lim {
                return Err(Error::DegeneratePolar);
            }
            return Err(Error::NoFinitePolar);
        }
        Ok(Line { p, q, r })
    }

    /// Signed section ratio `AK : KB` for the tangency point `K` of the
    /// tangent line `AB`.
    ///
    /// Points on line `AB` written as `(A + kB)/(1+k)` meet the conic where
    /// `S_AA + 2k S_AB + k² S_BB = 0`; tangency forces the double root
    /// `k = −S_AB / S_BB`, which is the ratio. Positive means `K` lies
    /// between `A` and `B`, negative means external division. Near-boundary
    /// cases (K within `degeneracy_tol` of an endpoint, or at infinity) are
    /// reported as [`Error::AmbiguousSection`] rather than classified.
    pub fn section_ratio(&self, a: Point, b: Point, tol: &Tolerances) -> Result<f64> {
        let s_aa = self.s_value(a);
        let s_bb = self.s_value(b);
        let s_ab = self.s_pair(a, b);
        let disc = s_ab * s_ab - s_aa * s_bb;
        let scale = residual_scale(&[s_ab * s_ab, s_aa * s_bb]);
        if disc.abs() > tol.degeneracy_tol * scale {
            return Err(Error::NotTangent);
        }
        if s_bb.abs() < tol.degeneracy_tol * residual_scale(&[s_ab]) {
            // K coincides with B (or the double root runs away); refuse to
            // return an unbounded ratio.
            return Err(Error::AmbiguousSection);
        }
        let k = -s_ab / s_bb;
        let denom = 1.0 + k;
        if denom.abs() < tol.degeneracy_tol {
            return Err(Error::AmbiguousSection);
        }
        // Parameter of K along the segment A -> B.
        let s = k / denom;
        if s.abs() < tol.degeneracy_tol || (s - 1.0).abs() < tol.degeneracy_tol {
            return Err(Error::AmbiguousSection);
        }
        Ok(k)
    }

    /// Reconstructs the section point `(A + kB)/(1+k)` for a ratio from
    /// [`ConicMatrix::section_ratio`].
    pub fn section_point(a: Point, b: Point, k: f64) -> Point {
        (a + b * k) * (1.0 / (1.0 + k))
    }
}

/// Ellipse or hyperbola classification for a member of the confocal family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
}

impl std::fmt::Display for ConicKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConicKind::Ellipse => write!(f, "ellipse"),
            ConicKind::Hyperbola => write!(f, "hyperbola"),
        }
    }
}

/// A member `x²/(a−t) + y²/(b−t) = 1` of the confocal family with foci
/// `(±√(a−b), 0)`.
///
/// Always axis-aligned and centered at the origin; off-center configurations
/// move the circle, never the conic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralConic {
    a: f64,
    b: f64,
    t: f64,
}

impl CentralConic {
    /// Requires `a > b` (distinct foci direction), `t < a` and `t ≠ b`
    /// (smooth conic). `t < b` gives an ellipse, `b < t < a` a hyperbola.
    pub fn new(a: f64, b: f64, t: f64) -> Result<CentralConic> {
        if !(a.is_finite() && b.is_finite() && t.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(a > b && t < a && t != b) {
            return Err(Error::DegenerateConic { a, b, t });
        }
        Ok(CentralConic { a, b, t })
    }

    /// Circle of radius `r` as the degenerate-focus limit `a = b = r²`, `t = 0`.
    pub fn circle_of_radius(r: f64) -> Result<CentralConic> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRadius(r));
        }
        // a == b is excluded by `new`; nudging b infinitesimally would change
        // results, so circles get their own constructor with a = b allowed.
        Ok(CentralConic {
            a: r * r,
            b: r * r,
            t: 0.0,
        })
    }

    pub fn family_a(&self) -> f64 {
        self.a
    }

    pub fn family_b(&self) -> f64 {
        self.b
    }

    pub fn family_t(&self) -> f64 {
        self.t
    }

    pub fn kind(&self) -> ConicKind {
        if self.t < self.b {
            ConicKind::Ellipse
        } else {
            ConicKind::Hyperbola
        }
    }

    /// Whether this member is a circle (coincident foci).
    pub fn is_circle(&self) -> bool {
        self.a == self.b
    }

    /// Linear eccentricity `c = √(a−b)`: center-to-focus distance.
    pub fn linear_eccentricity(&self) -> f64 {
        (self.a - self.b).sqrt()
    }

    /// Semi-major axis `α = √(a−t)` (the transverse semi-axis for a hyperbola).
    pub fn semi_major(&self) -> f64 {
        (self.a - self.t).sqrt()
    }

    /// Semi-minor axis `β = √|b−t|`.
    pub fn semi_minor(&self) -> f64 {
        (self.b - self.t).abs().sqrt()
    }

    pub fn eccentricity(&self) -> f64 {
        self.linear_eccentricity() / self.semi_major()
    }

    /// `+1` for an ellipse, `−1` for a hyperbola, so that `ε·β² = b − t`.
    pub fn epsilon(&self) -> f64 {
        match self.kind() {
            ConicKind::Ellipse => 1.0,
            ConicKind::Hyperbola => -1.0,
        }
    }

    /// Foci `(F₊, F₋) = ((+c, 0), (−c, 0))`.
    pub fn foci(&self) -> (Point, Point) {
        let c = self.linear_eccentricity();
        (Point::new(c, 0.0), Point::new(-c, 0.0))
    }

    /// Coefficient form `x²/(a−t) + y²/(b−t) − 1 = 0`.
    pub fn to_matrix(&self) -> ConicMatrix {
        ConicMatrix::new(
            1.0 / (self.a - self.t),
            0.0,
            1.0 / (self.b - self.t),
            0.0,
            0.0,
            -1.0,
        )
    }

    /// The axis-swapped companion conic used by the radius-count criterion:
    /// semi-major and semi-minor exchanged. Returns its Joachimsthal value at
    /// `p` directly (the companion can be degenerate as a `CentralConic`).
    pub fn swapped_value_at(&self, p: Point) -> f64 {
        match self.kind() {
            // D' of an ellipse x²/α² + y²/β² = 1 is x²/β² + y²/α² = 1.
            ConicKind::Ellipse => {
                p.x * p.x / (self.b - self.t) + p.y * p.y / (self.a - self.t) - 1.0
            }
            // D' of a hyperbola is x²/(t−b) − y²/(a−t) = 1.
            ConicKind::Hyperbola => {
                p.x * p.x / (self.t - self.b) - p.y * p.y / (self.a - self.t) - 1.0
            }
        }
    }
}

/// A circle with center `O` and radius `R > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Circle> {
        if !center.is_finite() {
            return Err(Error::NonFinite);
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidRadius(radius));
        }
        Ok(Circle { center, radius })
    }

    pub fn point_at(&self, theta: f64) -> Point {
        Point::new(
            self.center.x + self.radius * theta.cos(),
            self.center.y + self.radius * theta.sin(),
        )
    }

    pub fn contains_on_boundary(&self, p: Point, tol: &Tolerances) -> bool {
        (self.center.dist(p) - self.radius).abs() <= tol.abs_tol * self.radius.max(1.0)
    }

    /// Distances `(d₊, d₋)` from the center to the foci of `conic`.
    pub fn focal_distances(&self, conic: &CentralConic) -> (f64, f64) {
        let (fp, fm) = conic.foci();
        (self.center.dist(fp), self.center.dist(fm))
    }

    pub fn to_matrix(&self) -> ConicMatrix {
        ConicMatrix::new(
            1.0,
            0.0,
            1.0,
            -self.center.x,
            -self.center.y,
            self.center.x * self.center.x + self.center.y * self.center.y
                - self.radius * self.radius,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn conic_to_matrix_examples() {
        let c = CentralConic::new(3.0, 1.0, 0.0).unwrap();
        let m = c.to_matrix();
        assert_eq!(
            (m.a, m.b, m.c, m.d, m.e, m.f),
            (1.0 / 3.0, 0.0, 1.0, 0.0, 0.0, -1.0)
        );
        assert_eq!(c.kind(), ConicKind::Ellipse);

        let h = CentralConic::new(3.0, 1.0, 2.0).unwrap();
        let m = h.to_matrix();
        assert_eq!(
            (m.a, m.b, m.c, m.d, m.e, m.f),
            (1.0, 0.0, -1.0, 0.0, 0.0, -1.0)
        );
        assert_eq!(h.kind(), ConicKind::Hyperbola);

        let v = CentralConic::new(4.0, 2.0, 0.0).unwrap();
        assert_eq!(v.to_matrix().s_value(Point::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn conic_rejects_degenerate_family_members() {
        assert!(CentralConic::new(3.0, 1.0, 1.0).is_err()); // t = b
        assert!(CentralConic::new(3.0, 1.0, 3.0).is_err()); // t = a
        assert!(CentralConic::new(3.0, 1.0, 4.0).is_err()); // t > a
        assert!(CentralConic::new(1.0, 3.0, 0.0).is_err()); // a < b
    }

    #[test]
    fn s_value_examples() {
        let circ = ConicMatrix::unit_circle();
        assert_eq!(circ.s_value(Point::ORIGIN), -1.0);
        assert_eq!(circ.s_value(Point::new(1.0, 0.0)), 0.0);
        let ell = CentralConic::new(3.0, 1.0, 0.0).unwrap().to_matrix();
        assert!((ell.s_value(Point::new(3.0, 0.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn s_pair_examples() {
        let circ = ConicMatrix::unit_circle();
        assert_eq!(
            circ.s_pair(Point::new(1.0, 0.0), Point::new(-1.0, 0.0)),
            -2.0
        );
        assert_eq!(circ.s_pair(Point::new(0.0, 1.0), Point::new(1.0, 0.0)), -1.0);
        let a = Point::new(0.3, -1.7);
        assert_eq!(circ.s_pair(a, a), circ.s_value(a));
    }

    #[test]
    fn polar_line_examples() {
        let circ = ConicMatrix::unit_circle();
        let l = circ.polar_line(Point::new(1.0, 0.0), &tol()).unwrap();
        // x - 1 = 0 up to scale
        assert!((l.q).abs() < 1e-15 && (l.r / l.p + 1.0).abs() < 1e-15);

        let ell = CentralConic::new(3.0, 1.0, 0.0).unwrap().to_matrix();
        let l = ell.polar_line(Point::new(3.0, 0.0), &tol()).unwrap();
        assert!((l.q).abs() < 1e-15 && (l.r / l.p + 1.0).abs() < 1e-15);

        assert_eq!(
            circ.polar_line(Point::ORIGIN, &tol()),
            Err(Error::NoFinitePolar)
        );
    }

    #[test]
    fn section_ratio_examples() {
        let circ = ConicMatrix::unit_circle();
        // y = 1 tangent at (0,1): symmetric endpoints give ratio 1.
        let k = circ
            .section_ratio(Point::new(1.0, 1.0), Point::new(-1.0, 1.0), &tol())
            .unwrap();
        assert!((k - 1.0).abs() < 1e-12);

        let k = circ
            .section_ratio(Point::new(2.0, 1.0), Point::new(-1.0, 1.0), &tol())
            .unwrap();
        assert!((k - 2.0).abs() < 1e-12);
        let kp = ConicMatrix::section_point(Point::new(2.0, 1.0), Point::new(-1.0, 1.0), k);
        assert!(kp.dist(Point::new(0.0, 1.0)) < 1e-12);
        assert!(circ.s_value(kp).abs() < 1e-12);

        // Secant: not tangent.
        assert_eq!(
            circ.section_ratio(Point::new(2.0, 0.0), Point::new(-2.0, 0.0), &tol()),
            Err(Error::NotTangent)
        );
    }

    #[test]
    fn circle_matrix_matches_distance() {
        let c = Circle::new(Point::new(2.0, -1.0), 3.0).unwrap();
        let m = c.to_matrix();
        let p = c.point_at(0.77);
        assert!(m.s_value(p).abs() < 1e-12);
        assert!(c.contains_on_boundary(p, &tol()));
    }
}
