//! Points on the boundary of the cube `[-1, 1]^n`, face incidence, cube
//! isometries, and polylines measured in the sup norm.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GeodesicError, Result};

/// Default tolerance used when validating that a vector lies on the surface.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Smallest supported ambient dimension.
pub const MIN_DIM: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// The facet `x[axis] = sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceId {
    pub axis: usize,
    pub sign: Sign,
}

impl FaceId {
    pub fn new(axis: usize, sign: Sign) -> Self {
        FaceId { axis, sign }
    }

    pub fn plus(axis: usize) -> Self {
        FaceId::new(axis, Sign::Plus)
    }

    pub fn minus(axis: usize) -> Self {
        FaceId::new(axis, Sign::Minus)
    }

    pub fn opposite(self) -> Self {
        FaceId::new(self.axis, self.sign.flip())
    }

    /// Two distinct facets meet in an (n-2)-face exactly when their axes differ.
    pub fn is_adjacent(self, other: FaceId) -> bool {
        self.axis != other.axis
    }

    pub fn contains(self, coords: &[f64]) -> bool {
        coords.get(self.axis) == Some(&self.sign.value())
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}={}1", self.axis + 1, self.sign.symbol())
    }
}

/// Sup norm of `a - b`.
pub fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// A point of the cube surface together with every facet containing it.
///
/// Coordinates within the validation tolerance of `±1` are stored as exactly
/// `±1`, so face incidence tests are exact comparisons.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfacePoint {
    coords: Vec<f64>,
    faces: Vec<FaceId>,
}

impl SurfacePoint {
    pub fn new(coords: Vec<f64>, tol: f64) -> Result<Self> {
        let n = coords.len();
        if n < MIN_DIM {
            return Err(GeodesicError::DimensionTooSmall(n));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(GeodesicError::NonFinite(i));
        }
        let sup = coords.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if (sup - 1.0).abs() > tol {
            return Err(GeodesicError::NotOnSurface(sup));
        }
        let coords: Vec<f64> = coords
            .into_iter()
            .map(|c| {
                if c >= 1.0 - tol {
                    1.0
                } else if c <= -1.0 + tol {
                    -1.0
                } else {
                    c
                }
            })
            .collect();
        let faces = coords
            .iter()
            .enumerate()
            .filter_map(|(axis, &c)| {
                if c == 1.0 {
                    Some(FaceId::plus(axis))
                } else if c == -1.0 {
                    Some(FaceId::minus(axis))
                } else {
                    None
                }
            })
            .collect();
        Ok(SurfacePoint { coords, faces })
    }

    /// Validates with [`DEFAULT_TOL`].
    pub fn from_coords(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords, DEFAULT_TOL)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Incident facets, sorted by axis.
    pub fn faces(&self) -> &[FaceId] {
        &self.faces
    }

    pub fn on_face(&self, face: FaceId) -> bool {
        face.contains(&self.coords)
    }

    /// First facet containing both points, if any.
    pub fn common_face(&self, other: &SurfacePoint) -> Option<FaceId> {
        self.faces.iter().copied().find(|f| other.on_face(*f))
    }

    pub fn sup_distance(&self, other: &SurfacePoint) -> f64 {
        sup_distance(&self.coords, &other.coords)
    }
}

/// Polyline on the surface; every leg lies in a single facet.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeodesicPath {
    vertices: Vec<SurfacePoint>,
}

impl GeodesicPath {
    pub fn new(vertices: Vec<SurfacePoint>) -> Result<Self> {
        let first = vertices.first().ok_or(GeodesicError::EmptyPath)?;
        let n = first.dim();
        if let Some(v) = vertices.iter().find(|v| v.dim() != n) {
            return Err(GeodesicError::DimensionMismatch(n, v.dim()));
        }
        for (i, leg) in vertices.windows(2).enumerate() {
            if leg[0].common_face(&leg[1]).is_none() {
                return Err(GeodesicError::LegOffSurface(i));
            }
        }
        Ok(GeodesicPath { vertices })
    }

    /// Builds a path from raw vertex coordinates, dropping repeated
    /// consecutive vertices.
    pub fn from_coords<I>(vertices: I, tol: f64) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<f64>>,
    {
        let mut points: Vec<SurfacePoint> = Vec::new();
        for v in vertices {
            let p = SurfacePoint::new(v, tol)?;
            if points.last() != Some(&p) {
                points.push(p);
            }
        }
        Self::new(points)
    }

    pub fn single(point: SurfacePoint) -> Self {
        GeodesicPath {
            vertices: vec![point],
        }
    }

    pub fn vertices(&self) -> &[SurfacePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn leg_lengths(&self) -> Vec<f64> {
        self.vertices
            .windows(2)
            .map(|w| w[0].sup_distance(&w[1]))
            .collect()
    }

    pub fn total_length(&self) -> f64 {
        self.leg_lengths().iter().sum()
    }

    pub fn start(&self) -> &SurfacePoint {
        &self.vertices[0]
    }

    pub fn end(&self) -> &SurfacePoint {
        self.vertices.last().expect("paths are nonempty")
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        GeodesicPath { vertices }
    }

    /// Image of the path under a cube isometry.
    pub fn transformed(&self, g: &SignedPermutation) -> Self {
        GeodesicPath {
            vertices: self.vertices.iter().map(|v| g.apply_point(v)).collect(),
        }
    }

    /// True when every interior vertex lies on at least two facets.
    pub fn interior_vertices_on_ridges(&self) -> bool {
        let k = self.vertices.len();
        k < 3 || self.vertices[1..k - 1].iter().all(|v| v.faces().len() >= 2)
    }
}

/// Validates `vertices` as a surface polyline and returns its sup-norm length.
pub fn path_length(vertices: &[SurfacePoint]) -> Result<f64> {
    Ok(GeodesicPath::new(vertices.to_vec())?.total_length())
}

/// A cube isometry: `(g x)[perm[i]] = signs[i] * x[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<Sign>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(GeodesicError::DimensionMismatch(n, signs.len()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(GeodesicError::Precondition(format!(
                    "{perm:?} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![Sign::Plus; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        for (i, &xi) in x.iter().enumerate() {
            out[self.perm[i]] = match self.signs[i] {
                Sign::Plus => xi,
                Sign::Minus => -xi,
            };
        }
        out
    }

    pub fn apply_point(&self, p: &SurfacePoint) -> SurfacePoint {
        let coords = self.apply(p.coords());
        let mut faces: Vec<FaceId> = p.faces().iter().map(|&f| self.apply_face(f)).collect();
        faces.sort();
        SurfacePoint { coords, faces }
    }

    pub fn apply_face(&self, f: FaceId) -> FaceId {
        FaceId::new(self.perm[f.axis], f.sign.times(self.signs[f.axis]))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other
            .perm
            .iter()
            .zip(&other.signs)
            .map(|(&j, &s)| s.times(self.signs[j]))
            .collect();
        SignedPermutation { perm, signs }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut signs = vec![Sign::Plus; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Uniformly random element of the hyperoctahedral group.
    pub fn random<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let signs = (0..n)
            .map(|_| if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus })
            .collect();
        SignedPermutation { perm, signs }
    }
}

/// How a pair of points sits relative to the facets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairClass {
    SameFace(FaceId),
    /// `A` on the first facet, `B` on the second; the facets are adjacent.
    Adjacent(FaceId, FaceId),
    /// `A` on `x[axis] = sign`, `B` on the opposite facet.
    Opposite { axis: usize, a_sign: Sign },
}

/// Every facet assignment for the pair. A shared facet short-circuits to a
/// single [`PairClass::SameFace`]; otherwise all (face of A, face of B)
/// combinations are listed so callers can minimize over them.
pub fn classify_pair(a: &SurfacePoint, b: &SurfacePoint) -> Result<Vec<PairClass>> {
    if a.dim() != b.dim() {
        return Err(GeodesicError::DimensionMismatch(a.dim(), b.dim()));
    }
    if let Some(f) = a.common_face(b) {
        return Ok(vec![PairClass::SameFace(f)]);
    }
    let mut out = Vec::new();
    for &fa in a.faces() {
        for &fb in b.faces() {
            let class = if fa.axis == fb.axis {
                PairClass::Opposite {
                    axis: fa.axis,
                    a_sign: fa.sign,
                }
            } else {
                PairClass::Adjacent(fa, fb)
            };
            if !out.contains(&class) {
                out.push(class);
            }
        }
    }
    Ok(out)
}

/// A pair moved into normal position by a cube isometry.
#[derive(Clone, Debug, PartialEq)]
pub struct Canonical {
    pub iso: SignedPermutation,
    pub a: SurfacePoint,
    pub b: SurfacePoint,
}

/// Moves the pair so that `A` lies on `x1 = 1` and `B` on `x2 = 1`
/// (adjacent) or `x1 = -1` (opposite). Unused axes keep their relative order.
pub fn canonicalize(a: &SurfacePoint, b: &SurfacePoint, class: PairClass) -> Result<Canonical> {
    let n = a.dim();
    if b.dim() != n {
        return Err(GeodesicError::DimensionMismatch(n, b.dim()));
    }
    let mut perm = vec![usize::MAX; n];
    let mut signs = vec![Sign::Plus; n];
    let mut next = match class {
        PairClass::SameFace(_) => {
            return Err(GeodesicError::Precondition(
                "same-face pairs have no normal form".into(),
            ))
        }
        PairClass::Adjacent(fa, fb) => {
            if !a.on_face(fa) || !b.on_face(fb) || fa.axis == fb.axis {
                return Err(GeodesicError::Precondition(format!(
                    "assignment {fa}/{fb} does not match the points"
                )));
            }
            perm[fa.axis] = 0;
            signs[fa.axis] = fa.sign;
            perm[fb.axis] = 1;
            signs[fb.axis] = fb.sign;
            2
        }
        PairClass::Opposite { axis, a_sign } => {
            let fa = FaceId::new(axis, a_sign);
            if !a.on_face(fa) || !b.on_face(fa.opposite()) {
                return Err(GeodesicError::Precondition(format!(
                    "assignment {fa} opposite does not match the points"
                )));
            }
            perm[axis] = 0;
            signs[axis] = a_sign;
            1
        }
    };
    for slot in perm.iter_mut().filter(|p| **p == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let iso = SignedPermutation { perm, signs };
    Ok(Canonical {
        a: iso.apply_point(a),
        b: iso.apply_point(b),
        iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn pt(c: &[f64]) -> SurfacePoint {
        SurfacePoint::from_coords(c.to_vec()).unwrap()
    }

    #[test]
    fn face_incidence() {
        assert_eq!(pt(&[1.0, 0.5, 0.0]).faces(), &[FaceId::plus(0)]);
        assert_eq!(
            pt(&[1.0, 1.0, 1.0]).faces(),
            &[FaceId::plus(0), FaceId::plus(1), FaceId::plus(2)]
        );
        assert!(matches!(
            SurfacePoint::from_coords(vec![0.5, 0.5, 0.5]),
            Err(GeodesicError::NotOnSurface(_))
        ));
    }

    #[test]
    fn snapping_and_rejection() {
        let p = SurfacePoint::new(vec![1.0 + 1e-12, -0.3, 1.0 - 1e-11], 1e-9).unwrap();
        assert_eq!(p.coords(), &[1.0, -0.3, 1.0]);
        assert_eq!(p.faces().len(), 2);
        assert!(SurfacePoint::new(vec![1.1, 0.0, 0.0], 1e-9).is_err());
        assert_eq!(
            SurfacePoint::from_coords(vec![1.0, 0.0]),
            Err(GeodesicError::DimensionTooSmall(2))
        );
        assert_eq!(
            SurfacePoint::from_coords(vec![1.0, f64::NAN, 0.0]),
            Err(GeodesicError::NonFinite(1))
        );
    }

    #[test]
    fn lengths() {
        assert_eq!(path_length(&[pt(&[1.0, 0.5, 0.0])]).unwrap(), 0.0);
        assert_eq!(
            path_length(&[pt(&[1.0, 0.0, 0.0]), pt(&[1.0, 1.0, 0.0])]).unwrap(),
            1.0
        );
        let corner = [
            pt(&[1.0, 0.5, 0.0]),
            pt(&[1.0, 1.0, 0.25]),
            pt(&[0.5, 1.0, 0.0]),
        ];
        assert_eq!(path_length(&corner).unwrap(), 1.0);
        assert_eq!(
            path_length(&[pt(&[1.0, 0.0, 0.0]), pt(&[-1.0, 0.0, 0.0])]),
            Err(GeodesicError::LegOffSurface(0))
        );
    }

    #[test]
    fn classification() {
        let a = pt(&[1.0, 0.2, 0.0]);
        assert_eq!(
            classify_pair(&a, &pt(&[0.1, 1.0, 0.0])).unwrap(),
            vec![PairClass::Adjacent(FaceId::plus(0), FaceId::plus(1))]
        );
        assert_eq!(
            classify_pair(&a, &pt(&[-1.0, 0.1, 0.0])).unwrap(),
            vec![PairClass::Opposite {
                axis: 0,
                a_sign: Sign::Plus
            }]
        );
        let classes = classify_pair(&pt(&[1.0, 1.0, 1.0]), &pt(&[-1.0, 0.0, 0.0])).unwrap();
        assert_eq!(classes.len(), 3);
        assert!(classes.contains(&PairClass::Opposite {
            axis: 0,
            a_sign: Sign::Plus
        }));
        assert!(classes.contains(&PairClass::Adjacent(FaceId::plus(1), FaceId::minus(0))));
        assert!(classes.contains(&PairClass::Adjacent(FaceId::plus(2), FaceId::minus(0))));
        assert!(matches!(
            classify_pair(&a, &pt(&[1.0, -0.4, 0.5])).unwrap()[..],
            [PairClass::SameFace(_)]
        ));
    }

    #[test]
    fn canonical_forms() {
        let a = pt(&[1.0, 0.2, 0.3]);
        let b = pt(&[0.1, 1.0, -0.5]);
        let c = canonicalize(&a, &b, PairClass::Adjacent(FaceId::plus(0), FaceId::plus(1))).unwrap();
        assert_eq!(c.iso, SignedPermutation::identity(3));

        let a = pt(&[0.0, -1.0, 0.3]);
        let b = pt(&[0.2, 0.5, 1.0]);
        let c = canonicalize(&a, &b, PairClass::Adjacent(FaceId::minus(1), FaceId::plus(2))).unwrap();
        assert_eq!(c.iso.perm(), &[2, 0, 1]);
        assert_eq!(c.iso.signs(), &[Sign::Plus, Sign::Minus, Sign::Plus]);
        assert_eq!(c.a.coords()[0], 1.0);
        assert_eq!(c.b.coords()[1], 1.0);
        assert_eq!(c.a.coords(), &[1.0, 0.3, 0.0]);
        assert_eq!(c.b.coords(), &[-0.5, 1.0, 0.2]);
        let back = c.iso.inverse();
        assert_eq!(back.apply_point(&c.a), a);
        assert_eq!(back.apply_point(&c.b), b);

        let c = canonicalize(
            &pt(&[0.1, 0.2, -1.0]),
            &pt(&[0.3, 0.4, 1.0]),
            PairClass::Opposite {
                axis: 2,
                a_sign: Sign::Minus,
            },
        )
        .unwrap();
        assert_eq!(c.a.coords(), &[1.0, 0.1, 0.2]);
        assert_eq!(c.b.coords(), &[-1.0, 0.3, 0.4]);
        assert!(canonicalize(&a, &a, PairClass::SameFace(FaceId::minus(1))).is_err());
    }

    fn arb_surface(n: usize) -> impl Strategy<Value = Vec<f64>> {
        (
            0..n,
            any::<bool>(),
            proptest::collection::vec(-1.0f64..=1.0, n),
        )
            .prop_map(|(axis, plus, mut c)| {
                c[axis] = if plus { 1.0 } else { -1.0 };
                c
            })
    }

    proptest! {
        #[test]
        fn isometries_preserve_surface_and_lengths(
            a in arb_surface(4), b in arb_surface(4), seed in any::<u64>()
        ) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = SignedPermutation::random(4, &mut rng);
            let h = SignedPermutation::random(4, &mut rng);
            let pa = SurfacePoint::from_coords(a).unwrap();
            let pb = SurfacePoint::from_coords(b).unwrap();
            let ga = g.apply_point(&pa);
            prop_assert_eq!(&SurfacePoint::from_coords(ga.coords().to_vec()).unwrap(), &ga);
            prop_assert_eq!(ga.sup_distance(&g.apply_point(&pb)), pa.sup_distance(&pb));
            prop_assert_eq!(g.inverse().apply_point(&ga), pa.clone());
            prop_assert_eq!(
                g.compose(&h).apply(pa.coords()),
                g.apply(&h.apply(pa.coords()))
            );
            if let Some(f) = pa.common_face(&pb) {
                let _ = f;
                let path = GeodesicPath::new(vec![pa.clone(), pb.clone()]).unwrap();
                let moved = path.transformed(&g);
                prop_assert_eq!(moved.total_length(), path.total_length());
                prop_assert!(path.total_length() >= pa.sup_distance(&pb));
            }
            for class in classify_pair(&pa, &pb).unwrap() {
                if let PairClass::SameFace(_) = class { continue; }
                let c = canonicalize(&pa, &pb, class).unwrap();
                prop_assert_eq!(c.iso.inverse().apply_point(&c.a), pa.clone());
                prop_assert_eq!(c.iso.inverse().apply_point(&c.b), pb.clone());
                prop_assert_eq!(c.a.coords()[0], 1.0);
            }
        }
    }
}
