//! Closed-form area formulas for Poncelet triangles and the invariance
//! explorer.
//!
//! Focus-centered pairs: `Area = (1/4)R|(3−e²)R + 4ex|·√(3 − 8ex/(R+2ex))`.
//! Concentric pairs:
//! `Area = |(R²−c²)² − 4(R⁴−c²x²)|·√((R²+c²)³(3R²−c²) − 16R⁴c²x²)
//!         / (4R²((R²+c²)² − 4c²x²))`.
//! Two circles (Chapple configuration) get the squared side product
//! `(R²−d²)²(3R²−3d²+2dx_A)²(3R⁴−2d²R²−d⁴+8dR²x_A) / (R²(R²−d²+2dx_A)²)`.

use crate::conic::{CentralConic, Circle, Point, Tolerances, residual_scale};
use crate::error::{Error, Result};
use crate::poncelet::{PonceletPair, radii_for_center};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shoelace area; positive for any orientation.
pub fn triangle_area(a: Point, b: Point, c: Point, tol: &Tolerances) -> Result<f64> {
    let two = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let scale = residual_scale(&[(b.x - a.x) * (c.y - a.y), (b.y - a.y) * (c.x - a.x)]);
    if two.abs() < tol.degeneracy_tol * scale {
        return Err(Error::DegenerateTriangle);
    }
    Ok(0.5 * two.abs())
}

/// Cross-check path: `|AB||BC||CA| / 4R` with the circumradius recomputed
/// from the vertices.
pub fn area_from_sides(a: Point, b: Point, c: Point, tol: &Tolerances) -> Result<f64> {
    let cs = crate::invariants::centers(a, b, c, tol)?;
    Ok(a.dist(b) * b.dist(c) * c.dist(a) / (4.0 * cs.circumradius))
}

/// Focus-centered area formula in the vertex x-coordinate.
pub fn area_focus_centered(r: f64, e: f64, x: f64) -> Result<f64> {
    let denom = r + 2.0 * e * x;
    if denom.abs() < f64::EPSILON * r.abs().max(1.0) {
        return Err(Error::ZeroDenominator);
    }
    let radicand = 3.0 - 8.0 * e * x / denom;
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand);
    }
    Ok(0.25 * r * ((3.0 - e * e) * r + 4.0 * e * x).abs() * radicand.sqrt())
}

/// Concentric area formula in the vertex x-coordinate. Also reports the
/// sign of the inner numerator expression (before the absolute value), which
/// can flip along a family.
pub fn area_concentric_signed(r: f64, c: f64, x: f64) -> Result<(f64, i8)> {
    let r2 = r * r;
    let c2 = c * c;
    let inner = (r2 - c2) * (r2 - c2) - 4.0 * (r2 * r2 - c2 * x * x);
    let radicand = (r2 + c2).powi(3) * (3.0 * r2 - c2) - 16.0 * r2 * r2 * c2 * x * x;
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand);
    }
    let denom_core = (r2 + c2) * (r2 + c2) - 4.0 * c2 * x * x;
    let scale = residual_scale(&[(r2 + c2) * (r2 + c2), 4.0 * c2 * x * x]);
    if denom_core.abs() < f64::EPSILON * scale {
        return Err(Error::ZeroDenominator);
    }
    let area = inner.abs() * radicand.sqrt() / (4.0 * r2 * denom_core);
    Ok((area, if inner >= 0.0 { 1 } else { -1 }))
}

/// Concentric area formula, value only.
pub fn area_concentric(r: f64, c: f64, x: f64) -> Result<f64> {
    area_concentric_signed(r, c, x).map(|(a, _)| a)
}

/// Squared side product `|AB|²|BC|²|CA|²` for the two-circle (Chapple)
/// configuration with circumcircle radius `r` centered at `(d, 0)` and the
/// inner circle centered at the origin.
pub fn two_circle_side_product(r: f64, d: f64, x_a: f64) -> Result<f64> {
    let r2 = r * r;
    let d2 = d * d;
    let denom = r2 - d2 + 2.0 * d * x_a;
    let scale = residual_scale(&[r2, d2, 2.0 * d * x_a]);
    if denom.abs() < f64::EPSILON * scale {
        return Err(Error::ZeroDenominator);
    }
    let t1 = (r2 - d2) * (r2 - d2);
    let t2 = 3.0 * r2 - 3.0 * d2 + 2.0 * d * x_a;
    let t3 = 3.0 * r2 * r2 - 2.0 * d2 * r2 - d2 * d2 + 8.0 * d * r2 * x_a;
    Ok(t1 * t2 * t2 * t3 / (r2 * denom * denom))
}

/// Fitted leading eccentricity-series coefficients of the focus-centered
/// area at fixed `(R, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionReport {
    pub coeff_e2: f64,
    pub coeff_e3: f64,
    pub expected_e2: f64,
    pub expected_e3: f64,
}

/// Recovers the `e²` and `e³` series coefficients of
/// `Area(e) − 3√3R²/4` by least squares over a dense `e`-grid in
/// `(0, e_max]`, fitting the basis `{e², ..., e⁶}` (the higher terms absorb
/// the series remainder). Expected values: `−(√3/4)R²` and
/// `(3R²x − 4x³)/(3√3R)`.
pub fn eccentricity_expansion_check(r: f64, x: f64, e_max: f64) -> Result<ExpansionReport> {
    let base = 3.0 * 3.0_f64.sqrt() / 4.0 * r * r;
    let n = 200;
    // Least squares over the basis u², ..., u⁶ in the rescaled variable
    // u = e/e_max: the rescaling keeps the Gram matrix well conditioned and
    // the three highest powers absorb the series remainder, which otherwise
    // biases the e³ coefficient (the series has a finite convergence radius
    // in e and the higher coefficients grow geometrically for large |x|).
    const NB: usize = 5;
    let mut ata = [[0.0_f64; NB]; NB];
    let mut atb = [0.0_f64; NB];
    for i in 1..=n {
        let u = i as f64 / n as f64;
        let e = e_max * u;
        let y = area_focus_centered(r, e, x)? - base;
        let u2 = u * u;
        let basis = [u2, u2 * u, u2 * u2, u2 * u2 * u, u2 * u2 * u2];
        for j in 0..NB {
            for k in 0..NB {
                ata[j][k] += basis[j] * basis[k];
            }
            atb[j] += basis[j] * y;
        }
    }
    let sol = solve_dense::<NB>(ata, atb).ok_or(Error::InternalInconsistency(
        "singular normal equations in series fit",
    ))?;
    Ok(ExpansionReport {
        coeff_e2: sol[0] / (e_max * e_max),
        coeff_e3: sol[1] / (e_max * e_max * e_max),
        expected_e2: -(3.0_f64.sqrt() / 4.0) * r * r,
        expected_e3: (3.0 * r * r * x - 4.0 * x * x * x) / (3.0 * 3.0_f64.sqrt() * r),
    })
}

fn solve_dense<const N: usize>(mut a: [[f64; N]; N], mut b: [f64; N]) -> Option<[f64; N]> {
    for col in 0..N {
        let pivot = (col..N).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..N {
            let f = a[row][col] / a[col][col];
            for k in col..N {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; N];
    for row in (0..N).rev() {
        let mut s = b[row];
        for k in (row + 1)..N {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Per-pair record of an area-invariance sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaSweepReport {
    pub grid_index: usize,
    pub radius_index: usize,
    pub center: Point,
    pub radius: f64,
    pub samples: usize,
    pub mean_area: f64,
    pub spread: f64,
    pub invariant: bool,
    pub empty_family: bool,
    /// Whether the inner numerator of the concentric closed form changed
    /// sign across the sampled seeds (recorded only for concentric pairs).
    pub sign_change: bool,
}

/// Sweeps every (grid center, admissible radius) pair of the conic, samples
/// `seeds` triangles per pair (with per-seed jitter from a per-cell
/// deterministic stream), and reports the area spread. A pair is flagged
/// `invariant` when `spread < 1e−8 · mean_area`.
pub fn conjecture_sweep(
    grid: &[Point],
    conic: &CentralConic,
    seeds: usize,
    rng_seed: u64,
    tol: &Tolerances,
) -> Vec<AreaSweepReport> {
    let mut reports = Vec::new();
    for (gi, &center) in grid.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        rng.set_stream(gi as u64);
        let jitter: f64 = rng.gen_range(0.0..(2.0 * std::f64::consts::PI / seeds.max(1) as f64));
        for (ri, radius) in radii_for_center(conic, center, tol).into_iter().enumerate() {
            let circle = match Circle::new(center, radius) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let pair = PonceletPair::new(circle, *conic, tol);
            if !pair.is_pair() {
                continue;
            }
            let mut areas = Vec::new();
            let mut signs = Vec::new();
            let concentric = pair.is_concentric(tol);
            let c_lin = conic.linear_eccentricity();
            for i in 0..seeds {
                let theta = jitter + 2.0 * std::f64::consts::PI * i as f64 / seeds as f64;
                if let Ok(t) = crate::poncelet::triangle_from_seed(&pair, theta, tol) {
                    if let Ok(area) = triangle_area(t.a, t.b, t.c, tol) {
                        areas.push(area);
                        if concentric {
                            if let Ok((_, s)) = area_concentric_signed(radius, c_lin, t.a.x) {
                                signs.push(s);
                            }
                        }
                    }
                }
            }
            if areas.is_empty() {
                reports.push(AreaSweepReport {
                    grid_index: gi,
                    radius_index: ri,
                    center,
                    radius,
                    samples: 0,
                    mean_area: 0.0,
                    spread: 0.0,
                    invariant: false,
                    empty_family: true,
                    sign_change: false,
                });
                continue;
            }
            let mean = areas.iter().sum::<f64>() / areas.len() as f64;
            let max = areas.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = areas.iter().cloned().fold(f64::INFINITY, f64::min);
            let spread = max - min;
            let sign_change = signs.windows(2).any(|w| w[0] != w[1]);
            reports.push(AreaSweepReport {
                grid_index: gi,
                radius_index: ri,
                center,
                radius,
                samples: areas.len(),
                mean_area: mean,
                spread,
                invariant: spread < 1e-8 * mean,
                empty_family: false,
                sign_change,
            });
        }
    }
    reports
}
