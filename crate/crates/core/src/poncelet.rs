//! The 3-Poncelet pair condition and triangle-family construction.
//!
//! A circle `C(O, R)` and a confocal-family conic form a 3-Poncelet pair iff
//!
//! ```text
//! (x_O² + y_O² − R²)² − 2(a+b)R² + (a−b)² − 2(a−b)(x_O² − y_O²) + 4R²t = 0,
//! ```
//!
//! equivalently `(R² − d₊²)(R² − d₋²) = 4ε𝓑²R²` with `d_±` the center-to-
//! focus distances, `𝓑` the semi-minor axis and `ε = ±1` for ellipse /
//! hyperbola. The closure test for a constructed triangle is the defect
//! `S_BB·S_CC − S²_BC`, which vanishes iff the third side is tangent.

use crate::conic::{
    CentralConic, Circle, ConicKind, ConicMatrix, Point, Tolerances, residual_scale,
};
use crate::error::{Error, Result, SeedRejection};
use crate::tangent::{
    common_tangent_residual, line_tangency_residual, second_intersection, tangents_from,
};

/// A circle/conic pair carrying its pair-condition residual.
///
/// Construction never fails on non-pairs; [`PonceletPair::is_pair`] reports
/// whether the residual is below tolerance, so invalid pairs remain usable
/// as counterexample inputs (the closure-product identity holds for any
/// circle and conic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PonceletPair {
    pub circle: Circle,
    pub conic: CentralConic,
    pub residual: f64,
    pub kind: ConicKind,
    is_pair: bool,
}

/// Where the conic's foci sit relative to the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FociPlacement {
    BothInside,
    BothOutside,
    Split,
}

impl std::fmt::Display for FociPlacement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FociPlacement::BothInside => write!(f, "both_inside"),
            FociPlacement::BothOutside => write!(f, "both_outside"),
            FociPlacement::Split => write!(f, "split"),
        }
    }
}

/// A triangle inscribed in the pair's circle and circumscribed about its
/// conic. `tangency_points` are ordered `[on BC, on CA, on AB]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PonceletTriangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub circumcircle: Circle,
    pub tangency_points: [Point; 3],
    pub closure_defect: f64,
    pub seed_theta: f64,
}

impl PonceletTriangle {
    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        [
            self.a.dist(self.b),
            self.b.dist(self.c),
            self.c.dist(self.a),
        ]
    }
}

/// Left side of the pair condition in `(O, a, b, t, R)` form; zero iff the
/// circle and the conic form a 3-Poncelet pair. Reduces to the unit-circle
/// form when `R = 1`.
pub fn f2_residual(o: Point, a: f64, b: f64, t: f64, r: f64) -> f64 {
    let s = o.x * o.x + o.y * o.y;
    let r2 = r * r;
    (s - r2) * (s - r2) - 2.0 * (a + b) * r2 + (a - b) * (a - b)
        - 2.0 * (a - b) * (o.x * o.x - o.y * o.y)
        + 4.0 * r2 * t
}

/// Product form of the pair condition: `(R²−d₊²)(R²−d₋²) − 4ε𝓑²R²` with
/// `ε𝓑² = b − t`. Algebraically identical to [`f2_residual`].
pub fn product_residual(circle: &Circle, conic: &CentralConic) -> f64 {
    let (dp, dm) = circle.focal_distances(conic);
    let r2 = circle.radius * circle.radius;
    (r2 - dp * dp) * (r2 - dm * dm) - 4.0 * (conic.family_b() - conic.family_t()) * r2
}

fn pair_scale(circle: &Circle, conic: &CentralConic) -> f64 {
    let (dp, dm) = circle.focal_distances(conic);
    let r2 = circle.radius * circle.radius;
    residual_scale(&[
        r2 * r2,
        dp * dp * dm * dm,
        4.0 * (conic.family_b() - conic.family_t()) * r2,
    ])
}

/// Pair-condition decision: `(passes, residual)` using the product form with
/// the shared residual-scaling rule.
pub fn is_poncelet_pair(circle: &Circle, conic: &CentralConic, tol: &Tolerances) -> (bool, f64) {
    let res = product_residual(circle, conic);
    (res.abs() < tol.abs_tol * pair_scale(circle, conic), res)
}

impl PonceletPair {
    pub fn new(circle: Circle, conic: CentralConic, tol: &Tolerances) -> PonceletPair {
        let (ok, res) = is_poncelet_pair(&circle, &conic, tol);
        PonceletPair {
            circle,
            conic,
            residual: res,
            kind: conic.kind(),
            is_pair: ok,
        }
    }

    pub fn is_pair(&self) -> bool {
        self.is_pair
    }

    /// Whether the circle center is the conic center.
    pub fn is_concentric(&self, tol: &Tolerances) -> bool {
        self.circle.center.dist(Point::ORIGIN) < tol.degeneracy_tol * self.circle.radius.max(1.0)
    }

    /// Whether the circle center is one of the foci.
    pub fn is_focus_centered(&self, tol: &Tolerances) -> bool {
        let (dp, dm) = self.circle.focal_distances(&self.conic);
        let lim = tol.degeneracy_tol * self.circle.radius.max(1.0);
        dp < lim || dm < lim
    }
}

/// Chapple-Euler residual for two circles: `(R²−d²)² − 4R²r²` for the
/// incircle form, `d² − (R² + 2Rr)` for the excircle form.
pub fn chapple_residual(r_big: f64, r_small: f64, d: f64, excircle: bool) -> f64 {
    if excircle {
        d * d - (r_big * r_big + 2.0 * r_big * r_small)
    } else {
        let lhs = r_big * r_big - d * d;
        lhs * lhs - 4.0 * r_big * r_big * r_small * r_small
    }
}

/// The unique confocal-family conic with foci `(±c, 0)` pairing with the
/// given circle, in the `b = 0`, `a = c²` gauge.
///
/// The pair condition is linear in `t`. `t = b` (a focus on the circle) and
/// `t = a` (foci inverse points with respect to the circle) are the two
/// degenerate cases and are reported as errors.
pub fn conic_from_circle_and_foci(circle: &Circle, c: f64, tol: &Tolerances) -> Result<CentralConic> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::NonFinite);
    }
    let a = c * c;
    let b = 0.0;
    let o = circle.center;
    let r = circle.radius;
    // Solve f2_residual(o, a, b, t, r) = 0 for t.
    let at_zero = f2_residual(o, a, b, 0.0, r);
    let t = -at_zero / (4.0 * r * r);
    let scale = residual_scale(&[a, r * r, o.x * o.x + o.y * o.y, t]);
    if (t - b).abs() < tol.degeneracy_tol * scale {
        return Err(Error::FocusOnCircle);
    }
    if (t - a).abs() < tol.degeneracy_tol * scale {
        return Err(Error::InverseFociDegeneracy);
    }
    CentralConic::new(a, b, t)
}

/// All positive radii `R` for which a circle centered at `O` pairs with the
/// conic. Zero, one, or two values, ascending.
///
/// Solves the biquadratic `X² − (d₊² + d₋² + 4(b−t))X + d₊²d₋² = 0` in
/// `X = R²`. For an ellipse both roots are real; for a hyperbola the root
/// count follows the sign of the axis-swapped conic's value at `O`.
pub fn radii_for_center(conic: &CentralConic, o: Point, tol: &Tolerances) -> Vec<f64> {
    let circle_probe = Circle {
        center: o,
        radius: 1.0,
    };
    let (dp, dm) = circle_probe.focal_distances(conic);
    let p = dp * dp + dm * dm + 4.0 * (conic.family_b() - conic.family_t());
    let q = dp * dp * dm * dm;
    let disc = p * p - 4.0 * q;
    let scale = residual_scale(&[p * p, 4.0 * q]);
    let mut out = Vec::new();
    if disc < -tol.degeneracy_tol * scale {
        return out;
    }
    let root = disc.max(0.0).sqrt();
    // Stable quadratic roots: compute the larger-magnitude one first.
    let x1 = 0.5 * (p + root);
    let x2 = if x1.abs() > 0.0 { q / x1 } else { 0.5 * (p - root) };
    for x in [x2, x1] {
        if x > tol.degeneracy_tol * scale.sqrt().max(1.0) {
            let r = x.sqrt();
            if out
                .last()
                .map_or(true, |prev: &f64| (r - prev).abs() > tol.degeneracy_tol * r.max(1.0))
            {
                out.push(r);
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// The dual radius `R̂ = d₊d₋/R`; pairing with the conic is preserved under
/// `R ↔ R̂`.
pub fn dual_radius(r: f64, d_plus: f64, d_minus: f64, tol: &Tolerances) -> Result<f64> {
    if d_plus * d_minus < tol.degeneracy_tol * r.max(1.0) {
        return Err(Error::CenterIsFocus);
    }
    Ok(d_plus * d_minus / r)
}

/// Focus placement of a valid pair; consistency with the conic kind is
/// enforced (ellipse: both inside or both outside; hyperbola: split).
pub fn classify_by_foci(pair: &PonceletPair, tol: &Tolerances) -> Result<FociPlacement> {
    let (dp, dm) = pair.circle.focal_distances(&pair.conic);
    let r = pair.circle.radius;
    let lim = tol.degeneracy_tol * r.max(1.0);
    if (dp - r).abs() < lim || (dm - r).abs() < lim {
        return Err(Error::FocusOnCircle);
    }
    let placement = match (dp < r, dm < r) {
        (true, true) => FociPlacement::BothInside,
        (false, false) => FociPlacement::BothOutside,
        _ => FociPlacement::Split,
    };
    let consistent = match pair.kind {
        ConicKind::Ellipse => placement != FociPlacement::Split,
        ConicKind::Hyperbola => placement == FociPlacement::Split,
    };
    if !consistent {
        return Err(Error::InternalInconsistency(
            "focus placement contradicts conic kind",
        ));
    }
    // A hyperbola cannot pair concentrically: split placement forces
    // d_+ != d_-, but concentric means d_+ = d_- = c.
    if pair.kind == ConicKind::Hyperbola && pair.is_concentric(tol) {
        return Err(Error::InternalInconsistency(
            "concentric hyperbola pair cannot circumscribe a triangle",
        ));
    }
    Ok(placement)
}

/// Classifies the seed `A = O + R(cos θ, sin θ)` without constructing.
///
/// A seed is admissible when `S_AA` has the kind-correct sign with margin
/// (ellipse needs `S_AA > 0`, hyperbola `S_AA < 0`) and the common-tangent
/// detector `f₁` is bounded away from zero.
pub fn seed_admissibility(pair: &PonceletPair, theta: f64, tol: &Tolerances) -> Result<Point> {
    seed_admissibility_at(pair, pair.circle.point_at(theta), tol)
}

/// Admissibility of an explicit point on the circle.
pub fn seed_admissibility_at(pair: &PonceletPair, a: Point, tol: &Tolerances) -> Result<Point> {
    let s = pair.conic.to_matrix();
    let s_aa = s.s_value(a);
    let scale = residual_scale(&[
        s.a * a.x * a.x,
        s.c * a.y * a.y,
        1.0,
    ]);
    if s_aa.abs() < tol.degeneracy_tol * scale {
        return Err(Error::InadmissibleSeed(SeedRejection::OnConic));
    }
    let wrong_sign = match pair.kind {
        ConicKind::Ellipse => s_aa < 0.0,
        ConicKind::Hyperbola => s_aa > 0.0,
    };
    if wrong_sign {
        return Err(Error::InadmissibleSeed(SeedRejection::WrongSignature));
    }
    let f1 = common_tangent_residual(&s, &pair.circle, a, tol)?;
    let (u, v, w) = crate::tangent::tangent_coefficients(&s, a);
    let dx = a.x - pair.circle.center.x;
    let dy = a.y - pair.circle.center.y;
    let f1_scale = residual_scale(&[u * dx * dx, 2.0 * v * dx * dy, w * dy * dy]);
    if f1.abs() < tol.degeneracy_tol * f1_scale {
        return Err(Error::InadmissibleSeed(SeedRejection::CommonTangent));
    }
    Ok(a)
}

/// Constructs the Poncelet triangle seeded at angle `theta` on the circle.
///
/// `B` and `C` are the second intersections of the two tangents from `A`
/// with the circle; the closure defect `S_BB·S_CC − S²_BC` certifies that
/// `BC` is tangent (checked again independently via the line-conic
/// discriminant). Fails with [`Error::ClosureFailure`] past
/// `10³·abs_tol·scale`, which for a valid pair signals numerical breakdown.
pub fn triangle_from_seed(pair: &PonceletPair, theta: f64, tol: &Tolerances) -> Result<PonceletTriangle> {
    let a = pair.circle.point_at(theta);
    seed_admissibility_at(pair, a, tol)?;
    let s = pair.conic.to_matrix();
    let tp = tangents_from(&s, a, tol)?;
    let b = second_intersection(&pair.circle, a, tp.dir1, tol)?;
    let c = second_intersection(&pair.circle, a, tp.dir2, tol)?;
    let s_bb = s.s_value(b);
    let s_cc = s.s_value(c);
    let s_bc = s.s_pair(b, c);
    let defect = s_bb * s_cc - s_bc * s_bc;
    let scale = residual_scale(&[s_bb * s_cc, s_bc * s_bc, 1.0]);
    if defect.abs() > 1e3 * tol.abs_tol * scale {
        return Err(Error::ClosureFailure {
            defect,
            limit: 1e3 * tol.abs_tol * scale,
        });
    }
    let min_sep = tol.degeneracy_tol * pair.circle.radius;
    if a.dist(b) < min_sep || b.dist(c) < min_sep || c.dist(a) < min_sep {
        return Err(Error::DegenerateTriangle);
    }
    // Independent certificate: BC must be tangent to the conic.
    let bc_dir = c - b;
    let norm = bc_dir.x.hypot(bc_dir.y);
    let bc_unit = bc_dir * (1.0 / norm);
    let bc_res = line_tangency_residual(&s, b, bc_unit);
    let bc_scale = residual_scale(&[s.s_value(b), 1.0]);
    if bc_res.abs() > 1e3 * tol.abs_tol * bc_scale {
        return Err(Error::ClosureFailure {
            defect: bc_res,
            limit: 1e3 * tol.abs_tol * bc_scale,
        });
    }
    let tangency_points = [
        tangency_on_segment(&s, b, c),
        tangency_on_segment(&s, c, a),
        tangency_on_segment(&s, a, b),
    ];
    Ok(PonceletTriangle {
        a,
        b,
        c,
        circumcircle: pair.circle,
        tangency_points,
        closure_defect: defect,
        seed_theta: theta,
    })
}

/// Tangency point of the tangent line `PQ` via the section parameter
/// `k = −S_PQ / S_QQ` (double root of the section equation).
fn tangency_on_segment(s: &ConicMatrix, p: Point, q: Point) -> Point {
    let k = -s.s_pair(p, q) / s.s_value(q);
    ConicMatrix::section_point(p, q, k)
}

/// Family sweep: `n` uniformly spaced seeds starting at `θ = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub triangles: Vec<PonceletTriangle>,
    pub admissible: usize,
    pub total: usize,
}

impl Family {
    pub fn admissible_fraction(&self) -> f64 {
        self.admissible as f64 / self.total as f64
    }
}

/// Samples `θ_i = 2πi/n`, skips inadmissible seeds, and returns the closed
/// triangles in seed order. [`Error::EmptyFamily`] when no seed closes.
pub fn family(pair: &PonceletPair, n_samples: usize, tol: &Tolerances) -> Result<Family> {
    let mut triangles = Vec::new();
    let mut admissible = 0;
    for i in 0..n_samples {
        let theta = 2.0 * std::f64::consts::PI * i as f64 / n_samples as f64;
        match triangle_from_seed(pair, theta, tol) {
            Ok(t) => {
                admissible += 1;
                triangles.push(t);
            }
            Err(Error::InadmissibleSeed(_)) | Err(Error::DegenerateTriangle) => {}
            Err(e) => return Err(e),
        }
    }
    if triangles.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(Family {
        triangles,
        admissible,
        total: n_samples,
    })
}

/// Relative residual of the closure identity
/// `S_BB·S_CC − S²_BC = −16·S_AA·f₁·f₂/f₃²` at a seed `A` on the circle.
///
/// The identity is stated for the unit circle; general radii are handled by
/// the similarity rescaling `coords → coords/R`, `(a,b,t) → (a,b,t)/R²`
/// before evaluation. Valid for any circle and conic, Poncelet or not.
pub fn closure_product_identity_residual(
    circle: &Circle,
    conic: &CentralConic,
    a_pt: Point,
    tol: &Tolerances,
) -> Result<f64> {
    let r = circle.radius;
    // Rescale to the unit-circle frame.
    let inv = 1.0 / r;
    let inv2 = inv * inv;
    let o = circle.center * inv;
    let ap = a_pt * inv;
    let (fa, fb, ft) = (
        conic.family_a() * inv2,
        conic.family_b() * inv2,
        conic.family_t() * inv2,
    );
    let scaled_conic = CentralConic::new(fa, fb, ft)?;
    let scaled_circle = Circle::new(o, 1.0)?;
    let s = scaled_conic.to_matrix();
    let s_aa = s.s_value(ap);
    let wrong_sign = match conic.kind() {
        ConicKind::Ellipse => s_aa < -tol.degeneracy_tol,
        ConicKind::Hyperbola => s_aa > tol.degeneracy_tol,
    };
    if wrong_sign {
        return Err(Error::InadmissibleSeed(SeedRejection::WrongSignature));
    }
    let tp = tangents_from(&s, ap, tol)?;
    let b = second_intersection(&scaled_circle, ap, tp.dir1, tol)?;
    let c = second_intersection(&scaled_circle, ap, tp.dir2, tol)?;
    let s_bb = s.s_value(b);
    let s_cc = s.s_value(c);
    let s_bc = s.s_pair(b, c);
    let lhs = s_bb * s_cc - s_bc * s_bc;

    let dx = ap.x - o.x;
    let dy = ap.y - o.y;
    let f1 = fa * dx * dx + fb * dy * dy - {
        let g = 1.0 + o.x * dx + o.y * dy;
        g * g
    } - ft;
    let f2 = f2_residual(o, fa, fb, ft, 1.0);
    let f3 = {
        let g = ap.x * ap.x + ap.y * ap.y - fa + fb;
        g * g + 4.0 * ap.y * ap.y * (fa - fb)
    };
    let rhs = -16.0 * s_aa * f1 * f2 / (f3 * f3);
    let scale = residual_scale(&[lhs, rhs]);
    Ok((lhs - rhs).abs() / scale)
}
