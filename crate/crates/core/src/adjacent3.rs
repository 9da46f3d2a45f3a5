//! Closed forms for two points on adjacent faces of the 3-cube.
//!
//! Normal position: `A = (1, a_y, a_z)` and `B = (b_x, 1, b_z)`. The distance
//! is the least of three quantities: `alpha` (one corner on the shared edge
//! `x = y = 1`), `beta` (two corners on the top face `z = 1`) and `gamma`
//! (two corners on the bottom face `z = -1`).

use std::sync::OnceLock;

use serde::Serialize;

use crate::conditions::ConditionSet;
use crate::error::{GeodesicError, Result};
use crate::surface::{GeodesicPath, SurfacePoint};
use crate::{term, TIE};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AdjacentInput {
    pub a_y: f64,
    pub a_z: f64,
    pub b_x: f64,
    pub b_z: f64,
}

impl AdjacentInput {
    pub fn new(a_y: f64, a_z: f64, b_x: f64, b_z: f64) -> Result<Self> {
        for (name, value) in [("a_y", a_y), ("a_z", a_z), ("b_x", b_x), ("b_z", b_z)] {
            if !(-1.0..=1.0).contains(&value) {
                return Err(GeodesicError::ParameterOutOfRange { name, value });
            }
        }
        Ok(AdjacentInput { a_y, a_z, b_x, b_z })
    }

    /// Reads the parameters off a pair already in normal position.
    pub fn from_points(a: &[f64], b: &[f64]) -> Result<Self> {
        if a.len() != 3 || b.len() != 3 || a[0] != 1.0 || b[1] != 1.0 {
            return Err(GeodesicError::Precondition(
                "expected A on x = 1 and B on y = 1 in three dimensions".into(),
            ));
        }
        Self::new(a[1], a[2], b[0], b[2])
    }

    pub fn params(&self) -> [f64; 4] {
        [self.a_y, self.a_z, self.b_x, self.b_z]
    }

    pub fn point_a(&self) -> [f64; 3] {
        [1.0, self.a_y, self.a_z]
    }

    pub fn point_b(&self) -> [f64; 3] {
        [self.b_x, 1.0, self.b_z]
    }

    /// `(a_z, b_z) -> (-a_z, -b_z)`: the reflection `z -> -z`, which swaps
    /// the roles of `beta` and `gamma`.
    pub fn flipped_z(&self) -> Self {
        AdjacentInput {
            a_z: -self.a_z,
            b_z: -self.b_z,
            ..*self
        }
    }

    /// Exchanges `A` and `B` and relabels `x <-> y` so the pair is again in
    /// normal position.
    pub fn swapped(&self) -> Self {
        AdjacentInput {
            a_y: self.b_x,
            a_z: self.b_z,
            b_x: self.a_y,
            b_z: self.a_z,
        }
    }

    pub fn is_coincident(&self) -> bool {
        self.a_y == 1.0 && self.b_x == 1.0 && self.a_z == self.b_z
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AdjacentQuantity {
    Alpha,
    Beta,
    Gamma,
}

impl AdjacentQuantity {
    pub fn name(self) -> &'static str {
        match self {
            AdjacentQuantity::Alpha => "alpha",
            AdjacentQuantity::Beta => "beta",
            AdjacentQuantity::Gamma => "gamma",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdjacentResult {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub beta1: f64,
    pub gamma1: f64,
    pub distance: f64,
    pub minimizers: Vec<AdjacentQuantity>,
    pub satisfied_conditions: Vec<u32>,
}

impl AdjacentResult {
    pub fn is_minimizer(&self, q: AdjacentQuantity) -> bool {
        self.minimizers.contains(&q)
    }
}

const PARAMS: [&str; 4] = ["a_y", "a_z", "b_x", "b_z"];

/// Conditions (1)-(4): the minimum is `alpha`.
pub fn alpha_conditions() -> &'static ConditionSet {
    static SET: OnceLock<ConditionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ConditionSet::parse(
            PARAMS,
            &[
                (1, &["|a_z| <= a_y"]),
                (2, &["|b_z| <= b_x"]),
                (3, &["|a_y| <= a_z", "|b_x| <= -b_z"]),
                (4, &["|a_y| <= -a_z", "|b_x| <= b_z"]),
            ],
        )
    })
}

/// Conditions (5)-(8): the minimum is `beta`.
pub fn beta_conditions() -> &'static ConditionSet {
    static SET: OnceLock<ConditionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ConditionSet::parse(
            PARAMS,
            &[
                (5, &["a_y <= a_z", "b_x <= b_z", "a_z >= 0", "b_x <= a_y+a_z+b_z"]),
                (6, &["a_y <= a_z", "b_x <= b_z", "b_z >= 0", "a_y <= b_x+a_z+b_z"]),
                (7, &["a_y = 1", "a_z = 1"]),
                (8, &["b_x = 1", "b_z = 1"]),
            ],
        )
    })
}

/// Conditions (9)-(12): the minimum is `gamma`.
pub fn gamma_conditions() -> &'static ConditionSet {
    static SET: OnceLock<ConditionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ConditionSet::parse(
            PARAMS,
            &[
                (9, &["a_y <= -a_z", "b_x <= -b_z", "a_z <= 0", "b_x <= a_y-a_z-b_z"]),
                (10, &["a_y <= -a_z", "b_x <= -b_z", "b_z <= 0", "a_y <= b_x-a_z-b_z"]),
                (11, &["a_y = 1", "-a_z = 1"]),
                (12, &["b_x = 1", "-b_z = 1"]),
            ],
        )
    })
}

pub fn conditions_for(q: AdjacentQuantity) -> &'static ConditionSet {
    match q {
        AdjacentQuantity::Alpha => alpha_conditions(),
        AdjacentQuantity::Beta => beta_conditions(),
        AdjacentQuantity::Gamma => gamma_conditions(),
    }
}

/// Smallest distance of the parameters from any condition boundary.
pub fn condition_boundary_gap(input: &AdjacentInput) -> f64 {
    let p = input.params();
    [alpha_conditions(), beta_conditions(), gamma_conditions()]
        .iter()
        .map(|s| s.min_boundary_gap(&p))
        .fold(f64::INFINITY, f64::min)
}

pub fn adjacent3_distance(input: &AdjacentInput) -> AdjacentResult {
    let AdjacentInput { a_y, a_z, b_x, b_z } = *input;
    let alpha = term(2.0, -a_y, -b_x).max((a_z - b_z).abs());
    let beta = term(2.0, -a_z, -b_x).max(term(2.0, -a_y, -b_z));
    let gamma = term(2.0, a_z, -b_x).max(term(2.0, -a_y, b_z));
    let beta1 = beta.max(term(2.0, -a_z, -b_z));
    let gamma1 = gamma.max(term(2.0, a_z, b_z));
    let distance = alpha.min(beta).min(gamma);
    let minimizers = [
        (AdjacentQuantity::Alpha, alpha),
        (AdjacentQuantity::Beta, beta),
        (AdjacentQuantity::Gamma, gamma),
    ]
    .into_iter()
    .filter(|(_, v)| *v <= distance + TIE)
    .map(|(q, _)| q)
    .collect();
    let p = input.params();
    let mut satisfied_conditions = alpha_conditions().fired(&p);
    satisfied_conditions.extend(beta_conditions().fired(&p));
    satisfied_conditions.extend(gamma_conditions().fired(&p));
    AdjacentResult {
        alpha,
        beta,
        gamma,
        beta1,
        gamma1,
        distance,
        minimizers,
        satisfied_conditions,
    }
}

/// True iff some shortest path has at most two legs, i.e. one of
/// conditions (1)-(4) holds.
pub fn two_leg_exists(input: &AdjacentInput) -> bool {
    alpha_conditions().any(&input.params())
}

/// Length of `A -> (1, 1, z) -> B`.
pub fn corner_path_length(input: &AdjacentInput, z: f64) -> f64 {
    (1.0 - input.a_y).max((z - input.a_z).abs()) + (1.0 - input.b_x).max((z - input.b_z).abs())
}

/// Heights `z` of the corner `(1, 1, z)` for which `A -> C -> B` has
/// length exactly `alpha`. Requires `alpha` to be minimal.
pub fn corner_witness_interval(input: &AdjacentInput) -> Result<(f64, f64)> {
    let r = adjacent3_distance(input);
    if !r.is_minimizer(AdjacentQuantity::Alpha) {
        return Err(GeodesicError::Precondition(format!(
            "alpha = {} is not minimal (distance {})",
            r.alpha, r.distance
        )));
    }
    let AdjacentInput { a_y, a_z, b_x, b_z } = *input;
    let spread = 2.0 - a_y - b_x;
    let diff = a_z - b_z;
    let (lo, hi) = if diff > spread {
        (1.0 - b_x + b_z, a_y + a_z - 1.0)
    } else if -diff > spread {
        (a_z - a_y + 1.0, b_x + b_z - 1.0)
    } else {
        (
            (a_y + a_z - 1.0).max(b_x + b_z - 1.0).max(-1.0),
            (-a_y + a_z + 1.0).min(-b_x + b_z + 1.0).min(1.0),
        )
    };
    Ok(ordered(lo, hi))
}

/// Orders an interval whose endpoints may have crossed by rounding.
fn ordered(lo: f64, hi: f64) -> (f64, f64) {
    if lo <= hi {
        (lo, hi)
    } else if lo - hi <= 1e-12 {
        let m = 0.5 * (lo + hi);
        (m, m)
    } else {
        (lo, hi)
    }
}

/// Two-leg witness `A -> (1, 1, z) -> B` at the midpoint of the corner interval.
pub fn corner_witness_path(input: &AdjacentInput) -> Result<GeodesicPath> {
    let (lo, hi) = corner_witness_interval(input)?;
    let z = 0.5 * (lo + hi);
    path_through(input, &[[1.0, 1.0, z]])
}

fn path_through(input: &AdjacentInput, corners: &[[f64; 3]]) -> Result<GeodesicPath> {
    let mut vertices = vec![input.point_a().to_vec()];
    vertices.extend(corners.iter().map(|c| c.to_vec()));
    vertices.push(input.point_b().to_vec());
    GeodesicPath::from_coords(vertices, 0.0)
}

/// Which horizontal face the two corners of a three-leg path lie on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// Corners `(1, y, 1)` and `(x, 1, 1)`.
    Top,
    /// Corners `(1, y, -1)` and `(x, 1, -1)`.
    Bottom,
}

impl Route {
    fn height(self) -> f64 {
        match self {
            Route::Top => 1.0,
            Route::Bottom => -1.0,
        }
    }
}

/// The set of corner parameters `(x, y)` minimizing a three-leg route.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum WitnessRegion {
    /// `x` in `x_range`, `max(y_floor, x) <= y <= y_ceil`.
    YAboveX {
        x_range: (f64, f64),
        y_floor: f64,
        y_ceil: f64,
    },
    /// `y` in `y_range`, `max(x_floor, y) <= x <= x_ceil`.
    XAboveY {
        y_range: (f64, f64),
        x_floor: f64,
        x_ceil: f64,
    },
    /// Only `x = y = 1`.
    Corner,
}

impl WitnessRegion {
    pub fn contains(&self, x: f64, y: f64, tol: f64) -> bool {
        match *self {
            WitnessRegion::YAboveX {
                x_range,
                y_floor,
                y_ceil,
            } => {
                x >= x_range.0 - tol
                    && x <= x_range.1 + tol
                    && y >= y_floor.max(x) - tol
                    && y <= y_ceil + tol
            }
            WitnessRegion::XAboveY {
                y_range,
                x_floor,
                x_ceil,
            } => {
                y >= y_range.0 - tol
                    && y <= y_range.1 + tol
                    && x >= x_floor.max(y) - tol
                    && x <= x_ceil + tol
            }
            WitnessRegion::Corner => (x - 1.0).abs() <= tol && (y - 1.0).abs() <= tol,
        }
    }

    /// Extreme and central points of the region.
    pub fn sample_points(&self) -> Vec<(f64, f64)> {
        match *self {
            WitnessRegion::YAboveX {
                x_range,
                y_floor,
                y_ceil,
            } => {
                let xm = 0.5 * (x_range.0 + x_range.1);
                let mut out = Vec::new();
                for x in [x_range.0, xm, x_range.1] {
                    let lo = y_floor.max(x);
                    for y in [lo, 0.5 * (lo + y_ceil), y_ceil] {
                        out.push((x, y));
                    }
                }
                out
            }
            WitnessRegion::XAboveY {
                y_range,
                x_floor,
                x_ceil,
            } => {
                let ym = 0.5 * (y_range.0 + y_range.1);
                let mut out = Vec::new();
                for y in [y_range.0, ym, y_range.1] {
                    let lo = x_floor.max(y);
                    for x in [lo, 0.5 * (lo + x_ceil), x_ceil] {
                        out.push((x, y));
                    }
                }
                out
            }
            WitnessRegion::Corner => vec![(1.0, 1.0)],
        }
    }

    pub fn center(&self) -> (f64, f64) {
        self.sample_points()[match self {
            WitnessRegion::Corner => 0,
            _ => 4,
        }]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoCornerWitness {
    pub route: Route,
    /// `'a'`, `'b'` or `'c'`: which of the three lower-bound terms is largest.
    pub case: char,
    /// `beta1` for the top route, `gamma1` for the bottom one.
    pub value: f64,
    pub region: WitnessRegion,
}

/// Length of `A -> (1, y, h) -> (x, 1, h) -> B` with `h = ±1` from the route.
pub fn two_corner_length(input: &AdjacentInput, route: Route, x: f64, y: f64) -> f64 {
    let h = route.height();
    let AdjacentInput { a_y, a_z, b_x, b_z } = *input;
    (y - a_y).abs().max((h - a_z).abs())
        + (1.0 - x).max(1.0 - y)
        + (x - b_x).abs().max((h - b_z).abs())
}

pub fn two_corner_path(input: &AdjacentInput, route: Route, x: f64, y: f64) -> Result<GeodesicPath> {
    let h = route.height();
    path_through(input, &[[1.0, y, h], [x, 1.0, h]])
}

/// Minimizing corner parameters of the top or bottom three-leg route.
pub fn two_corner_witness_region(input: &AdjacentInput, route: Route) -> Result<TwoCornerWitness> {
    let p = match route {
        Route::Top => *input,
        Route::Bottom => input.flipped_z(),
    };
    let AdjacentInput { a_y, a_z, b_x, b_z } = p;
    let x1 = term(2.0, -a_z, -b_x);
    let y1 = term(2.0, -a_y, -b_z);
    let z1 = term(2.0, -a_z, -b_z);
    let value = x1.max(y1).max(z1);
    let (case, region) = if x1 >= y1 && x1 >= z1 {
        let ceil = (1.0f64).min(1.0 + a_y - a_z);
        let x_range = ordered(1.0 + b_x - b_z, ceil);
        (
            'a',
            WitnessRegion::YAboveX {
                x_range,
                y_floor: a_y + a_z - 1.0,
                y_ceil: ceil,
            },
        )
    } else if y1 >= x1 && y1 >= z1 {
        let ceil = (1.0f64).min(1.0 + b_x - b_z);
        let y_range = ordered(1.0 + a_y - a_z, ceil);
        (
            'b',
            WitnessRegion::XAboveY {
                y_range,
                x_floor: b_x + b_z - 1.0,
                x_ceil: ceil,
            },
        )
    } else {
        ('c', WitnessRegion::Corner)
    };
    let (cx, cy) = region.center();
    if (two_corner_length(input, route, cx, cy) - value).abs() > 1e-12 {
        return Err(GeodesicError::Inconsistent(format!(
            "{route:?} case ({case}) region center does not attain {value}"
        )));
    }
    Ok(TwoCornerWitness {
        route,
        case,
        value,
        region,
    })
}

/// Coplanarity determinant of four points of R^3.
pub fn coplanarity_det(p: &[[f64; 3]; 4]) -> f64 {
    let u: Vec<f64> = (0..3).map(|i| p[1][i] - p[0][i]).collect();
    let v: Vec<f64> = (0..3).map(|i| p[2][i] - p[0][i]).collect();
    let w: Vec<f64> = (0..3).map(|i| p[3][i] - p[0][i]).collect();
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0])
        + u[2] * (v[0] * w[1] - v[1] * w[0])
}

/// Largest absolute coplanarity determinant over all 4-subsets of the
/// path's vertices (0 for paths with fewer than four vertices).
pub fn path_planarity_defect(path: &GeodesicPath) -> f64 {
    let pts: Vec<[f64; 3]> = path
        .vertices()
        .iter()
        .map(|v| [v.coords()[0], v.coords()[1], v.coords()[2]])
        .collect();
    let k = pts.len();
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for m in l + 1..k {
                    worst = worst.max(coplanarity_det(&[pts[i], pts[j], pts[l], pts[m]]).abs());
                }
            }
        }
    }
    worst
}

const PLANAR_TOL: f64 = 1e-9;

/// Planar three-leg witness through the top face when `beta` is minimal and
/// `2 - a_z - b_x >= 2 - a_y - b_z`.
///
/// Corner parameters come from solving the planarity equation for `y`; every
/// attempt is checked for region membership, planarity and length before it
/// is returned.
pub fn planar_beta_path(input: &AdjacentInput) -> Result<GeodesicPath> {
    if input.is_coincident() {
        return GeodesicPath::from_coords([input.point_a().to_vec()], 0.0);
    }
    let r = adjacent3_distance(input);
    if !r.is_minimizer(AdjacentQuantity::Beta) {
        return Err(GeodesicError::Precondition(format!(
            "beta = {} is not minimal (distance {})",
            r.beta, r.distance
        )));
    }
    let AdjacentInput { a_y, a_z, b_x, b_z } = *input;
    if 2.0 - a_z - b_x < 2.0 - a_y - b_z {
        return Err(GeodesicError::Precondition(
            "planar construction expects 2 - a_z - b_x >= 2 - a_y - b_z".into(),
        ));
    }
    let witness = two_corner_witness_region(input, Route::Top)?;
    let accept = |x: f64, y: f64| -> Option<GeodesicPath> {
        if !witness.region.contains(x, y, 1e-12) {
            return None;
        }
        let x = x.clamp(-1.0, 1.0);
        let y = y.clamp(-1.0, 1.0);
        let path = two_corner_path(input, Route::Top, x, y).ok()?;
        let ok_len = (path.total_length() - r.distance).abs() <= 1e-12;
        let ok_plane = path_planarity_defect(&path) <= PLANAR_TOL;
        (ok_len && ok_plane).then_some(path)
    };

    if a_y == a_z && b_z == 1.0 {
        if let Some(p) = accept(b_x, 1.0) {
            return Ok(p);
        }
    }
    let denom_a = a_z - a_y + 1.0 - b_z;
    if denom_a > 0.0 {
        let bound = (b_x * (a_z - a_y) + 1.0 - b_z) / denom_a;
        let (lo, hi) = match witness.region {
            WitnessRegion::YAboveX { x_range, .. } => x_range,
            _ => (-1.0, 1.0),
        };
        let lo = lo.max(-1.0);
        let hi = hi.min(bound).min(1.0);
        let planar_y = |x: f64| {
            let den = (1.0 - x) * (1.0 - b_z) + (1.0 - a_z) * (x - b_x);
            (den > 0.0).then(|| (a_y * (1.0 - x) * (1.0 - b_z) + (1.0 - a_z) * (x - b_x)) / den)
        };
        if lo <= hi + 1e-12 {
            let steps = 16;
            let mid = 0.5 * (lo + hi);
            let tries = std::iter::once(mid)
                .chain((0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64));
            for x in tries {
                if let Some(p) = planar_y(x).and_then(|y| accept(x, y)) {
                    return Ok(p);
                }
            }
        }
    }
    // Degenerate configurations: a region vertex whose path has at most
    // three distinct vertices, or whose four vertices happen to be coplanar.
    for (x, y) in witness.region.sample_points() {
        if let Some(p) = accept(x, y) {
            return Ok(p);
        }
    }
    Err(GeodesicError::Inconsistent(format!(
        "no planar witness found for {input:?}"
    )))
}

fn map_path(path: &GeodesicPath, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<GeodesicPath> {
    GeodesicPath::from_coords(path.vertices().iter().map(|v| f(v.coords())), 0.0)
}

/// A planar shortest path for any input: the corner path when `alpha` is
/// minimal, otherwise the planar three-leg construction after reducing to
/// the top route with the larger first term.
pub fn adjacent3_witness(input: &AdjacentInput) -> Result<GeodesicPath> {
    if input.is_coincident() {
        return GeodesicPath::from_coords([input.point_a().to_vec()], 0.0);
    }
    let r = adjacent3_distance(input);
    if r.is_minimizer(AdjacentQuantity::Alpha) {
        return corner_witness_path(input);
    }
    if r.is_minimizer(AdjacentQuantity::Beta) {
        return planar_top_route(input);
    }
    let flipped = planar_top_route(&input.flipped_z())?;
    map_path(&flipped, |c| vec![c[0], c[1], -c[2]])
}

fn planar_top_route(input: &AdjacentInput) -> Result<GeodesicPath> {
    if 2.0 - input.a_z - input.b_x >= 2.0 - input.a_y - input.b_z {
        planar_beta_path(input)
    } else {
        let swapped = planar_beta_path(&input.swapped())?;
        map_path(&swapped.reversed(), |c| vec![c[1], c[0], c[2]])
    }
}

/// Endpoints as surface points.
pub fn endpoints(input: &AdjacentInput) -> Result<(SurfacePoint, SurfacePoint)> {
    Ok((
        SurfacePoint::new(input.point_a().to_vec(), 0.0)?,
        SurfacePoint::new(input.point_b().to_vec(), 0.0)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn inp(a_y: f64, a_z: f64, b_x: f64, b_z: f64) -> AdjacentInput {
        AdjacentInput::new(a_y, a_z, b_x, b_z).unwrap()
    }

    #[test]
    fn coincident_edge_point() {
        let r = adjacent3_distance(&inp(1.0, 0.0, 1.0, 0.0));
        assert_eq!(r.alpha, 0.0);
        assert_eq!(r.distance, 0.0);
        let p = adjacent3_witness(&inp(1.0, 0.0, 1.0, 0.0)).unwrap();
        assert_eq!(p.vertices().len(), 1);
        let (lo, hi) = corner_witness_interval(&inp(1.0, 0.0, 1.0, 0.0)).unwrap();
        assert!(lo <= 0.0 && 0.0 <= hi);
        assert_eq!(corner_path_length(&inp(1.0, 0.0, 1.0, 0.0), 0.0), 0.0);
    }

    #[test]
    fn reference_values() {
        let r = adjacent3_distance(&inp(0.5, 0.0, 0.5, 0.0));
        assert_eq!((r.alpha, r.beta, r.gamma, r.distance), (1.0, 1.5, 1.5, 1.0));
        assert!(r.satisfied_conditions.contains(&1));
        assert_eq!(r.minimizers, vec![AdjacentQuantity::Alpha]);

        let r = adjacent3_distance(&inp(-0.5, 0.9, -0.5, 0.9));
        assert!((r.alpha - 3.0).abs() < 1e-15);
        assert!((r.beta - 1.6).abs() < 1e-15);
        assert!((r.gamma - 3.4).abs() < 1e-15);
        assert_eq!(r.distance, r.beta);
        assert!(r.satisfied_conditions.contains(&5));
        assert_eq!(r.minimizers, vec![AdjacentQuantity::Beta]);
    }

    #[test]
    fn corner_interval_matches_grid_evaluation() {
        let i = inp(0.5, 0.0, 0.5, 0.0);
        assert_eq!(corner_witness_interval(&i).unwrap(), (-0.5, 0.5));
        for k in 0..=100 {
            let z = -0.5 + k as f64 / 100.0;
            assert!((corner_path_length(&i, z) - 1.0).abs() < 1e-15);
        }
        // case (i), a_z - b_z >= 2 - a_y - b_x
        let i = inp(1.0, 1.0, 1.0, -1.0);
        assert_eq!(corner_witness_interval(&i).unwrap(), (-1.0, 1.0));
        for k in 0..=100 {
            let z = -1.0 + k as f64 / 50.0;
            assert_eq!(corner_path_length(&i, z), 2.0);
        }
        assert!(corner_witness_interval(&inp(-0.5, 0.9, -0.5, 0.9)).is_err());
    }

    #[test]
    fn two_corner_regions() {
        let i = inp(-0.5, 0.9, -0.5, 0.9);
        let w = two_corner_witness_region(&i, Route::Top).unwrap();
        assert_eq!(w.case, 'a');
        for (x, y) in w.region.sample_points() {
            assert!((two_corner_length(&i, Route::Top, x, y) - 1.6).abs() < 1e-12);
        }
        let w = two_corner_witness_region(&inp(0.9, -0.5, 0.9, -0.5), Route::Top).unwrap();
        assert_eq!(w.case, 'c');
        assert_eq!(w.region, WitnessRegion::Corner);

        let i = inp(1.0, 1.0, 0.2, -0.3);
        let w = two_corner_witness_region(&i, Route::Top).unwrap();
        let (x, y) = w.region.center();
        assert_eq!(y, 1.0);
        assert!((two_corner_length(&i, Route::Top, x, y) - w.value).abs() < 1e-12);
    }

    #[test]
    fn regions_attain_their_value_everywhere() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let i = inp(
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
            );
            for route in [Route::Top, Route::Bottom] {
                let w = two_corner_witness_region(&i, route).unwrap();
                for (x, y) in w.region.sample_points() {
                    let len = two_corner_length(&i, route, x, y);
                    assert!((len - w.value).abs() < 1e-12, "{i:?} {route:?} {x} {y}");
                }
            }
        }
    }

    #[test]
    fn planar_paths() {
        let i = inp(0.0, 0.0, 0.3, 1.0);
        let p = planar_beta_path(&i).unwrap();
        assert_eq!(p.vertices()[1].coords(), &[1.0, 1.0, 1.0]);
        assert_eq!(p.end().coords(), &[0.3, 1.0, 1.0]);

        let i = inp(-0.5, 0.9, -0.5, 0.9);
        let p = planar_beta_path(&i).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!((p.total_length() - 1.6).abs() < 1e-12);
        assert!(path_planarity_defect(&p) <= 1e-9);
        assert!(p.interior_vertices_on_ridges());

        assert!(matches!(
            planar_beta_path(&inp(0.5, 0.0, 0.5, 0.0)),
            Err(GeodesicError::Precondition(_))
        ));
    }

    #[test]
    fn two_leg_flags() {
        assert!(two_leg_exists(&inp(0.5, 0.0, 0.5, 0.0)));
        assert!(!two_leg_exists(&inp(-0.5, 0.9, -0.5, 0.9)));
        assert!(two_leg_exists(&inp(1.0, 1.0, -0.7, 0.2)));
    }

    #[test]
    fn range_checked() {
        assert!(matches!(
            AdjacentInput::new(1.5, 0.0, 0.0, 0.0),
            Err(GeodesicError::ParameterOutOfRange { name: "a_y", .. })
        ));
    }
}
