//! Closed forms for two points on opposite faces of the 3-cube.
//!
//! Normal position: `A = (1, a, b)` and `B = (-1, c, d)`. The distance is the
//! least of twelve route lengths `s1..s12`. Routes 1-4 cross one side face
//! (three legs); routes 5-12 cross two side faces (four legs).
//!
//! Only four of the twelve minimality condition sets are written out
//! (`s1`, `s4`, `s5`, `s6`). The others are obtained by evaluating the `s1`
//! or `s6` set at the image of the parameters under a cube symmetry that
//! fixes the face pair `x = ±1`; see [`substitution`].

use std::sync::OnceLock;

use serde::Serialize;

use crate::conditions::ConditionSet;
use crate::error::{GeodesicError, Result};
use crate::surface::{GeodesicPath, Sign, SignedPermutation};
use crate::{term, TIE};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OppositeInput {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl OppositeInput {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !(-1.0..=1.0).contains(&value) {
                return Err(GeodesicError::ParameterOutOfRange { name, value });
            }
        }
        Ok(OppositeInput { a, b, c, d })
    }

    pub fn from_points(a: &[f64], b: &[f64]) -> Result<Self> {
        if a.len() != 3 || b.len() != 3 || a[0] != 1.0 || b[0] != -1.0 {
            return Err(GeodesicError::Precondition(
                "expected A on x = 1 and B on x = -1 in three dimensions".into(),
            ));
        }
        Self::new(a[1], a[2], b[1], b[2])
    }

    pub fn params(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn point_a(&self) -> [f64; 3] {
        [1.0, self.a, self.b]
    }

    pub fn point_b(&self) -> [f64; 3] {
        [-1.0, self.c, self.d]
    }

    /// Parameters of the pair `(g A, g B)` for an isometry fixing axis 0.
    pub fn transformed(&self, g: &SignedPermutation) -> Self {
        let a = g.apply(&self.point_a());
        let b = g.apply(&self.point_b());
        OppositeInput {
            a: a[1],
            b: a[2],
            c: b[1],
            d: b[2],
        }
    }
}

/// The twelve route lengths, `s[j - 1] = s_j`.
pub fn route_lengths(input: &OppositeInput) -> [f64; 12] {
    let OppositeInput { a, b, c, d } = *input;
    [
        term(4.0, -a, -c),
        term(4.0, a, c),
        term(4.0, -b, -d),
        term(4.0, b, d),
        term(2.0, -a, -d).max(term(4.0, -b, -c)),
        term(2.0, -a, d).max(term(4.0, b, -c)),
        term(2.0, a, -d).max(term(4.0, -b, c)),
        term(2.0, a, d).max(term(4.0, b, c)),
        term(2.0, -b, -c).max(term(4.0, -a, -d)),
        term(2.0, b, -c).max(term(4.0, -a, d)),
        term(2.0, -b, c).max(term(4.0, a, -d)),
        term(2.0, b, c).max(term(4.0, a, d)),
    ]
}

/// Outcome of one minimality test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionHit {
    pub j: usize,
    pub holds: bool,
    /// Labels of the fired conditions. For derived sets these are the
    /// labels of the template set (`s1` or `s6`) at the transformed input.
    pub fired: Vec<u32>,
    /// Template index when the set is derived by symmetry.
    pub derived_from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OppositeResult {
    pub s: [f64; 12],
    pub distance: f64,
    /// 1-based indices `j` with `s_j` within the tie tolerance of the minimum.
    pub minimizers: Vec<usize>,
    pub condition_hits: Vec<ConditionHit>,
}

pub fn opposite3_distance(input: &OppositeInput) -> OppositeResult {
    let s = route_lengths(input);
    let distance = s.iter().copied().fold(f64::INFINITY, f64::min);
    let minimizers = (1..=12).filter(|j| s[j - 1] <= distance + TIE).collect();
    let condition_hits = (1..=12)
        .map(|j| sj_conditions(j, input).expect("index in range"))
        .collect();
    OppositeResult {
        s,
        distance,
        minimizers,
        condition_hits,
    }
}

const PARAMS: [&str; 4] = ["a", "b", "c", "d"];

/// Conditions (37)-(41): the minimum is `s1`.
pub fn s1_condition_set() -> &'static ConditionSet {
    static SET: OnceLock<ConditionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ConditionSet::parse(
            PARAMS,
            &[
                (37, &["|b| <= a", "|d| <= c"]),
                (38, &["c = 1", "-d = 1", "b >= -a"]),
                (39, &["c = 1", "d = 1", "b <= a"]),
                (40, &["a = 1", "-b = 1", "d >= -c"]),
                (41, &["a = 1", "b = 1", "d <= c"]),
            ],
        )
    })
}

/// Conditions (42)-(46): the minimum is `s6`.
pub fn s6_condition_set() -> &'static ConditionSet {
    static SET: OnceLock<ConditionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ConditionSet::parse(
            PARAMS,
            &[
                (
                    42,
                    &[
                        "a+b <= 0",
                        "c+d >= 0",
                        "|a+d| <= c-b",
                        "b+d <= a+c",
                        "b <= 0",
                        "c >= 0",
                    ],
                ),
                (43, &["b = -1", "c >= 0", "-c <= d", "d <= 1+a+c"]),
                (44, &["b = -1", "d >= 1-a-c"]),
                (45, &["c = 1", "b <= 0", "b+d-1 <= a", "a <= -b"]),
                (46, &["c = 1", "a <= -1-b-d"]),
            ],
        )
    })
}

/// Conditions (68)-(72): the minimum is `s4`.
///
/// Row (71) reads `d <= -c`, the image of row (40) under
/// `a -> -b, b -> -a, c -> -d, d -> -c`.
pub fn s4_condition_set() -> &'static ConditionSet {
    static SET: OnceLock<ConditionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ConditionSet::parse(
            PARAMS,
            &[
                (68, &["|a| <= -b", "|c| <= -d"]),
                (69, &["c = 1", "-d = 1", "b <= -a"]),
                (70, &["c = -1", "d = -1", "b <= a"]),
                (71, &["a = 1", "-b = 1", "d <= -c"]),
                (72, &["a = -1", "b = -1", "d <= c"]),
            ],
        )
    })
}

/// Conditions (73)-(77): the minimum is `s5`.
pub fn s5_condition_set() -> &'static ConditionSet {
    static SET: OnceLock<ConditionSet> = OnceLock::new();
    SET.get_or_init(|| {
        ConditionSet::parse(
            PARAMS,
            &[
                (
                    73,
                    &[
                        "a <= b",
                        "d <= c",
                        "|a-d| <= c+b",
                        "a+b+c+d >= 0",
                        "b >= 0",
                        "c >= 0",
                    ],
                ),
                (74, &["b = 1", "c >= 0", "-1-a-c <= d", "d <= c"]),
                (75, &["b = 1", "d <= -1+a+c"]),
                (76, &["c = 1", "b >= 0", "-b-d-1 <= a", "a <= b"]),
                (77, &["c = 1", "a <= -1+b+d"]),
            ],
        )
    })
}

/// `(template, g)` with `s_template(g·p) = s_j(p)` for every input `p`,
/// where `g` is a cube isometry fixing axis 0 acting on both endpoints.
pub fn substitution(j: usize) -> Result<(usize, SignedPermutation)> {
    use Sign::{Minus as M, Plus as P};
    let (template, perm, signs) = match j {
        1 => (1, [0, 1, 2], [P, P, P]),
        2 => (1, [0, 1, 2], [P, M, P]),
        3 => (1, [0, 2, 1], [P, P, P]),
        4 => (1, [0, 2, 1], [P, M, M]),
        5 => (6, [0, 1, 2], [P, P, M]),
        6 => (6, [0, 1, 2], [P, P, P]),
        7 => (6, [0, 1, 2], [P, M, M]),
        8 => (6, [0, 1, 2], [P, M, P]),
        9 => (6, [0, 2, 1], [P, M, P]),
        10 => (6, [0, 2, 1], [P, M, M]),
        11 => (6, [0, 2, 1], [P, P, P]),
        12 => (6, [0, 2, 1], [P, P, M]),
        _ => {
            return Err(GeodesicError::IndexOutOfRange { index: j, n: 12 });
        }
    };
    Ok((template, SignedPermutation::new(perm.to_vec(), signs.to_vec())?))
}

fn printed_set(j: usize) -> Option<&'static ConditionSet> {
    match j {
        1 => Some(s1_condition_set()),
        4 => Some(s4_condition_set()),
        5 => Some(s5_condition_set()),
        6 => Some(s6_condition_set()),
        _ => None,
    }
}

pub fn s1_conditions(input: &OppositeInput) -> ConditionHit {
    sj_conditions(1, input).expect("index in range")
}

pub fn s6_conditions(input: &OppositeInput) -> ConditionHit {
    sj_conditions(6, input).expect("index in range")
}

/// Minimality test for `s_j`: the written-out set for `j` in {1, 4, 5, 6},
/// otherwise the `s1`/`s6` set at the symmetry image of the input.
pub fn sj_conditions(j: usize, input: &OppositeInput) -> Result<ConditionHit> {
    let (template, g) = substitution(j)?;
    if let Some(set) = printed_set(j) {
        let fired = set.fired(&input.params());
        return Ok(ConditionHit {
            j,
            holds: !fired.is_empty(),
            fired,
            derived_from: None,
        });
    }
    let set = printed_set(template).expect("templates are printed sets");
    let fired = set.fired(&input.transformed(&g).params());
    Ok(ConditionHit {
        j,
        holds: !fired.is_empty(),
        fired,
        derived_from: Some(template),
    })
}

/// Smallest boundary gap over every condition used by [`sj_conditions`].
pub fn condition_boundary_gap(input: &OppositeInput) -> f64 {
    (1..=12)
        .map(|j| {
            let (template, g) = substitution(j).expect("index in range");
            match printed_set(j) {
                Some(set) => set.min_boundary_gap(&input.params()),
                None => printed_set(template)
                    .expect("templates are printed sets")
                    .min_boundary_gap(&input.transformed(&g).params()),
            }
        })
        .fold(f64::INFINITY, f64::min)
}

fn midpoint(lo: f64, hi: f64) -> f64 {
    0.5 * (lo + hi)
}

/// Corners of the three-leg `s1` route `A -> (1, 1, z1) -> (-1, 1, z2) -> B`.
fn s1_corners(p: &OppositeInput) -> Vec<[f64; 3]> {
    let OppositeInput { a, b, c, d } = *p;
    let z1 = midpoint((b - (1.0 - a)).max(-1.0), (b + (1.0 - a)).min(1.0));
    let z2 = midpoint((d - (1.0 - c)).max(-1.0), (d + (1.0 - c)).min(1.0));
    vec![[1.0, 1.0, z1], [-1.0, 1.0, z2]]
}

/// Corners of the four-leg `s6` route
/// `A -> (1, y, -1) -> (x, 1, -1) -> (-1, 1, z) -> B`.
fn s6_corners(p: &OppositeInput) -> Option<Vec<[f64; 3]>> {
    let OppositeInput { a, b, c, d } = *p;
    let (x, y, z) = if term(2.0, -a, d) >= term(4.0, b, -c) {
        // The first leg is dominated by its y-travel and the last by its
        // z-travel: 1 + a + b <= y = x = z <= c + d - 1.
        let t = midpoint(1.0 + a + b, c + d - 1.0);
        (t, t, t)
    } else {
        // The first and last legs are dominated by 1 + b and 1 - c, which
        // confines y and z to boxes around a and d; the middle pair costs 2
        // whenever z <= x <= y.
        let (ylo, yhi) = ((a - 1.0 - b).max(-1.0), (a + 1.0 + b).min(1.0));
        let (zlo, zhi) = ((d - 1.0 + c).max(-1.0), (d + 1.0 - c).min(1.0));
        let (lo, hi) = (ylo.max(zlo), yhi.min(zhi));
        if lo <= hi {
            let t = midpoint(lo, hi);
            (t, t, t)
        } else if yhi >= zlo {
            let y = midpoint(ylo.max(zlo), yhi);
            let z = midpoint(zlo, zhi.min(y));
            (midpoint(z, y), y, z)
        } else {
            return None;
        }
    };
    Some(vec![[1.0, y, -1.0], [x, 1.0, -1.0], [-1.0, 1.0, z]])
}

/// Shortest path realizing `min(s1..s12)`.
///
/// The route of a minimizing index is built in the frame of its template
/// (`s1` or `s6`) and carried back by the inverse symmetry; the result is
/// accepted only when its length matches the distance to `1e-12`.
pub fn opposite3_witness(input: &OppositeInput) -> Result<GeodesicPath> {
    let r = opposite3_distance(input);
    for &j in &r.minimizers {
        let (template, g) = substitution(j)?;
        let image = input.transformed(&g);
        let corners = match template {
            1 => Some(s1_corners(&image)),
            _ => s6_corners(&image),
        };
        let Some(corners) = corners else { continue };
        let back = g.inverse();
        let mut vertices = vec![input.point_a().to_vec()];
        vertices.extend(corners.iter().map(|c| back.apply(c)));
        vertices.push(input.point_b().to_vec());
        let path = GeodesicPath::from_coords(vertices, 0.0)?;
        if (path.total_length() - r.distance).abs() <= 1e-12 {
            return Ok(path);
        }
    }
    Err(GeodesicError::Inconsistent(format!(
        "no witness route attains {} for {input:?}",
        r.distance
    )))
}

/// The twelve example inputs `(i, a, b, c, d)` for which `s_i` is the
/// strict minimum.
pub const STRICT_EXAMPLES: [(usize, [f64; 4]); 12] = [
    (1, [1.0 / 20.0, 0.0, 1.0 / 20.0, 0.0]),
    (2, [-1.0, -19.0 / 20.0, -1.0, -19.0 / 20.0]),
    (3, [-19.0 / 20.0, 1.0, -19.0 / 20.0, 1.0]),
    (4, [-19.0 / 20.0, -1.0, -19.0 / 20.0, -1.0]),
    (5, [-19.0 / 20.0, 1.0 / 20.0, 19.0 / 20.0, 0.0]),
    (6, [-19.0 / 20.0, -1.0, 1.0 / 20.0, 0.0]),
    (7, [-19.0 / 20.0, 1.0, -1.0, -19.0 / 20.0]),
    (8, [-19.0 / 20.0, -1.0, -1.0, -19.0 / 20.0]),
    (9, [1.0 / 20.0, -19.0 / 20.0, -1.0 / 20.0, 1.0]),
    (10, [1.0 / 20.0, 0.0, -19.0 / 20.0, -1.0]),
    (11, [-1.0, -19.0 / 20.0, -19.0 / 20.0, 1.0]),
    (12, [-1.0, -19.0 / 20.0, -19.0 / 20.0, -1.0]),
];

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn inp(p: [f64; 4]) -> OppositeInput {
        OppositeInput::new(p[0], p[1], p[2], p[3]).unwrap()
    }

    #[test]
    fn origin_pair_ties_everywhere() {
        let r = opposite3_distance(&inp([0.0; 4]));
        assert!(r.s.iter().all(|&s| s == 4.0));
        assert_eq!(r.distance, 4.0);
        assert_eq!(r.minimizers.len(), 12);
        let w = opposite3_witness(&inp([0.0; 4])).unwrap();
        assert_eq!(w.total_length(), 4.0);
    }

    #[test]
    fn substitutions_map_route_lengths_exactly() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = inp([(); 4].map(|_| rng.gen_range(-1.0..=1.0)));
            let s = route_lengths(&p);
            for j in 1..=12 {
                let (t, g) = substitution(j).unwrap();
                assert_eq!(route_lengths(&p.transformed(&g))[t - 1], s[j - 1], "j = {j}");
            }
        }
        assert!(substitution(13).is_err());
        assert!(substitution(0).is_err());
    }

    #[test]
    fn printed_sets_agree_with_their_substitutions() {
        // s4 and s5 are written out; they must coincide with the template
        // sets evaluated at the symmetric image.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let snap = |x: f64| if x.abs() > 0.8 { x.signum() } else { x };
        for _ in 0..20000 {
            let p = inp([(); 4].map(|_| snap(rng.gen_range(-1.0..=1.0))));
            for (j, set) in [(4, s4_condition_set()), (5, s5_condition_set())] {
                let (t, g) = substitution(j).unwrap();
                let template = printed_set(t).unwrap();
                assert_eq!(
                    set.any(&p.params()),
                    template.any(&p.transformed(&g).params()),
                    "j = {j}, {p:?}"
                );
            }
        }
    }

    #[test]
    fn literal_row_71_misclassifies() {
        // A = (1, 1, -1), B = (-1, 0, 1/2): s1 = 3 < s4 = 7/2, yet
        // `a = -b = 1, d >= -c` holds.
        let p = inp([1.0, -1.0, 0.0, 0.5]);
        let r = opposite3_distance(&p);
        assert!(r.s[0] < r.s[3]);
        let literal = ConditionSet::parse(PARAMS, &[(71, &["a = 1", "-b = 1", "d >= -c"])]);
        assert!(literal.any(&p.params()));
        assert!(!sj_conditions(4, &p).unwrap().holds);
    }

    #[test]
    fn example_values() {
        let r = opposite3_distance(&inp(STRICT_EXAMPLES[0].1));
        assert!((r.s[0] - 3.9).abs() < 1e-15);
        assert_eq!(r.minimizers, vec![1]);
        let hit = s1_conditions(&inp(STRICT_EXAMPLES[0].1));
        assert_eq!(hit.fired, vec![37]);

        let p = inp(STRICT_EXAMPLES[5].1);
        let r = opposite3_distance(&p);
        assert!((r.s[5] - 2.95).abs() < 1e-15);
        assert!(!s1_conditions(&p).holds);
        assert!(s6_conditions(&p).holds);

        assert!(s1_conditions(&inp([0.0, 0.0, 1.0, -1.0])).fired.contains(&38));

        let hit = sj_conditions(4, &inp(STRICT_EXAMPLES[3].1)).unwrap();
        assert!(hit.fired.contains(&68));
        assert!(sj_conditions(5, &inp(STRICT_EXAMPLES[4].1)).unwrap().holds);
        let hit = sj_conditions(2, &inp(STRICT_EXAMPLES[1].1)).unwrap();
        assert!(hit.holds);
        assert_eq!(hit.derived_from, Some(1));
    }

    #[test]
    fn s6_counterexamples() {
        let p = inp([1.0 / 30.0, -1.0, -1.0 / 30.0, 1.0]);
        let fired = s6_conditions(&p).fired;
        assert!(fired.contains(&44) && !fired.contains(&42));
        let p = inp([1.0 / 30.0, -1.0, 0.0, 1.0]);
        let fired = s6_conditions(&p).fired;
        assert!(fired.contains(&43) && !fired.contains(&42));
    }

    #[test]
    fn witnesses_for_examples() {
        let w = opposite3_witness(&inp(STRICT_EXAMPLES[0].1)).unwrap();
        assert_eq!(w.vertices().len(), 4);
        assert!((w.total_length() - 3.9).abs() < 1e-12);
        // A sits on the ridge z = -1, so the first corner coincides with it.
        let w = opposite3_witness(&inp(STRICT_EXAMPLES[5].1)).unwrap();
        assert_eq!(w.vertices().len(), 4);
        assert!((w.total_length() - 2.95).abs() < 1e-12);
        assert!(w.interior_vertices_on_ridges());
        for (_, p) in STRICT_EXAMPLES {
            let p = inp(p);
            let w = opposite3_witness(&p).unwrap();
            assert!((w.total_length() - opposite3_distance(&p).distance).abs() < 1e-12);
        }
    }
}
