//! Candidate families for general `n` and the distance dispatcher.
//!
//! In normal position `A = (1, a_2, ..., a_n)`. For adjacent facets
//! `B = (b_1, 1, b_3, ..., b_n)`, for opposite facets `B = (-1, b_2, ..., b_n)`.
//! Each candidate is an ordered tuple of free axes with one sign per axis;
//! its value is a max of terms `c ± a_i ± b_j` (plus `|a_i - b_i|` residuals
//! for adjacent facets) and equals the shortest length of paths crossing a
//! fixed facet sequence. The distance is the least candidate value.
//!
//! Axes are 0-based in code and 1-based in every printed label.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::adjacent3::{self, AdjacentInput, AdjacentQuantity};
use crate::error::{GeodesicError, Result};
use crate::opposite3::{self, OppositeInput};
use crate::oracle::solve_face_sequence;
use crate::surface::{
    canonicalize, classify_pair, FaceId, GeodesicPath, PairClass, Sign, SurfacePoint, MIN_DIM,
};
use crate::{term, TIE};

/// Largest dimension accepted unless configured otherwise.
pub const DEFAULT_MAX_DIM: usize = 10;

/// At most this many tied candidates are recorded per minimization.
pub const MAX_RECORDED_TIES: usize = 64;

/// Agreement required between a witness path and the candidate value.
pub const WITNESS_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NdConfig {
    pub max_dim: usize,
}

impl Default for NdConfig {
    fn default() -> Self {
        NdConfig {
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

impl NdConfig {
    pub fn check(&self, n: usize) -> Result<()> {
        if n < MIN_DIM {
            return Err(GeodesicError::DimensionTooSmall(n));
        }
        if n > self.max_dim {
            return Err(GeodesicError::DimensionCap {
                found: n,
                cap: self.max_dim,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Adjacent,
    Opposite,
}

impl Family {
    /// First free axis: `2` for adjacent facets, `1` for opposite ones.
    fn first_axis(self) -> usize {
        match self {
            Family::Adjacent => 2,
            Family::Opposite => 1,
        }
    }

    fn min_len(self) -> usize {
        match self {
            Family::Adjacent => 0,
            Family::Opposite => 1,
        }
    }
}

/// One closed-form candidate: an ordered tuple of distinct free axes and a
/// sign per axis, shared by the `a` and `b` coordinate of that axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Candidate {
    pub family: Family,
    pub tuple: Vec<usize>,
    pub signs: Vec<Sign>,
}

/// A candidate together with its evaluated terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateValue {
    pub candidate: Candidate,
    pub terms: Vec<f64>,
    pub value: f64,
}

impl Candidate {
    pub fn new(family: Family, tuple: Vec<usize>, signs: Vec<Sign>, n: usize) -> Result<Self> {
        let c = Candidate {
            family,
            tuple,
            signs,
        };
        c.validate(n)?;
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.tuple.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuple.is_empty()
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.signs.len() != self.tuple.len() {
            return Err(GeodesicError::Precondition(format!(
                "{} signs for a tuple of length {}",
                self.signs.len(),
                self.tuple.len()
            )));
        }
        if self.tuple.len() < self.family.min_len() {
            return Err(GeodesicError::Precondition("opposite candidates need at least one axis".into()));
        }
        for (k, &i) in self.tuple.iter().enumerate() {
            if i < self.family.first_axis() || i >= n {
                return Err(GeodesicError::IndexOutOfRange { index: i + 1, n });
            }
            if self.tuple[..k].contains(&i) {
                return Err(GeodesicError::Precondition(format!("axis {} repeated", i + 1)));
            }
        }
        Ok(())
    }

    /// Evaluated term list, in schema order.
    pub fn terms(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
        let n = a.len();
        if b.len() != n {
            return Err(GeodesicError::DimensionMismatch(n, b.len()));
        }
        self.validate(n)?;
        let mut out = Vec::new();
        self.for_each_term(a, b, |x| out.push(x));
        Ok(out)
    }

    pub fn evaluate(&self, a: &[f64], b: &[f64]) -> Result<CandidateValue> {
        let terms = self.terms(a, b)?;
        let value = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(CandidateValue {
            candidate: self.clone(),
            terms,
            value,
        })
    }

    /// Value without allocation. Indices must be valid for `a` and `b`.
    pub fn value(&self, a: &[f64], b: &[f64]) -> f64 {
        let mut v = f64::NEG_INFINITY;
        self.for_each_term(a, b, |x| v = v.max(x));
        v
    }

    fn for_each_term(&self, a: &[f64], b: &[f64], mut f: impl FnMut(f64)) {
        let t = &self.tuple;
        let e = |k: usize| self.signs[k].value();
        let m = t.len();
        match self.family {
            Family::Adjacent => {
                if m == 0 {
                    f(term(2.0, -a[1], -b[0]));
                } else {
                    f(term(2.0, -a[1], e(0) * b[t[0]]));
                    let second = if m == 1 { 0 } else { 1 };
                    f(term(2.0, e(second) * a[t[second]], -b[0]));
                    for r in 1..m.saturating_sub(1) {
                        f(term(2.0, e(r + 1) * a[t[r + 1]], e(r) * b[t[r]]));
                    }
                    if m >= 2 {
                        f(term(2.0, e(0) * a[t[0]], e(m - 1) * b[t[m - 1]]));
                    }
                }
                for i in 2..a.len() {
                    if !t.contains(&i) {
                        f((a[i] - b[i]).abs());
                    }
                }
            }
            Family::Opposite => {
                for r in 0..m - 1 {
                    f(term(2.0, e(r + 1) * a[t[r + 1]], e(r) * b[t[r]]));
                }
                f(term(4.0, e(0) * a[t[0]], e(m - 1) * b[t[m - 1]]));
            }
        }
    }

    /// Printed form of each term, e.g. `2 - a2 + b3` or `|a4 - b4|`.
    pub fn schema(&self, n: usize) -> Vec<String> {
        let t = &self.tuple;
        let m = t.len();
        let s = |k: usize| match self.signs[k] {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        let mut out = Vec::new();
        match self.family {
            Family::Adjacent => {
                if m == 0 {
                    out.push("2 - a2 - b1".to_string());
                } else {
                    out.push(format!("2 - a2 {} b{}", s(0), t[0] + 1));
                    let second = if m == 1 { 0 } else { 1 };
                    out.push(format!("2 {} a{} - b1", s(second), t[second] + 1));
                    for r in 1..m.saturating_sub(1) {
                        out.push(format!("2 {} a{} {} b{}", s(r + 1), t[r + 1] + 1, s(r), t[r] + 1));
                    }
                    if m >= 2 {
                        out.push(format!("2 {} a{} {} b{}", s(0), t[0] + 1, s(m - 1), t[m - 1] + 1));
                    }
                }
                for i in 2..n {
                    if !t.contains(&i) {
                        out.push(format!("|a{0} - b{0}|", i + 1));
                    }
                }
            }
            Family::Opposite => {
                for r in 0..m - 1 {
                    out.push(format!("2 {} a{} {} b{}", s(r + 1), t[r + 1] + 1, s(r), t[r] + 1));
                }
                out.push(format!("4 {} a{} {} b{}", s(0), t[0] + 1, s(m - 1), t[m - 1] + 1));
            }
        }
        out
    }

    /// Facets crossed, in path order, from the facet of `A` to that of `B`.
    /// A free axis with sign `ε` is crossed on the facet `x = -ε`.
    pub fn face_sequence(&self) -> Vec<FaceId> {
        let face = |k: usize| FaceId::new(self.tuple[k], self.signs[k].flip());
        let mut out = vec![FaceId::plus(0)];
        match self.family {
            Family::Adjacent => {
                let m = self.tuple.len();
                out.extend((1..m).map(face));
                if m > 0 {
                    out.push(face(0));
                }
                out.push(FaceId::plus(1));
            }
            Family::Opposite => {
                out.extend((0..self.tuple.len()).map(face));
                out.push(FaceId::minus(0));
            }
        }
        out
    }

    /// The matching three-dimensional quantity: `alpha`/`beta`/`gamma` or
    /// `s1`..`s12`.
    pub fn label3(&self) -> Option<&'static str> {
        use Sign::{Minus as M, Plus as P};
        const S: [&str; 12] = [
            "s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "s9", "s10", "s11", "s12",
        ];
        if self.tuple.iter().any(|&i| i > 2) {
            return None;
        }
        let j = match (self.family, self.tuple.as_slice(), self.signs.as_slice()) {
            (Family::Adjacent, [], []) => return Some("alpha"),
            (Family::Adjacent, [2], [M]) => return Some("beta"),
            (Family::Adjacent, [2], [P]) => return Some("gamma"),
            (Family::Opposite, [1], [M]) => 1,
            (Family::Opposite, [1], [P]) => 2,
            (Family::Opposite, [2], [M]) => 3,
            (Family::Opposite, [2], [P]) => 4,
            (Family::Opposite, [2, 1], [M, M]) => 5,
            (Family::Opposite, [2, 1], [P, M]) => 6,
            (Family::Opposite, [2, 1], [M, P]) => 7,
            (Family::Opposite, [2, 1], [P, P]) => 8,
            (Family::Opposite, [1, 2], [M, M]) => 9,
            (Family::Opposite, [1, 2], [M, P]) => 10,
            (Family::Opposite, [1, 2], [P, M]) => 11,
            (Family::Opposite, [1, 2], [P, P]) => 12,
            _ => return None,
        };
        Some(S[j - 1])
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Adjacent => "adj",
            Family::Opposite => "opp",
        };
        write!(f, "{name}(")?;
        for (k, (i, s)) in self.tuple.iter().zip(&self.signs).enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", i + 1, s.symbol())?;
        }
        write!(f, ")")
    }
}

/// Every candidate of a family in `(length, tuple, signs)` order, with `-`
/// before `+`.
pub fn candidates(family: Family, n: usize, cfg: &NdConfig) -> Result<impl Iterator<Item = Candidate>> {
    cfg.check(n)?;
    let pool: Vec<usize> = (family.first_axis()..n).collect();
    let max_len = pool.len();
    Ok((family.min_len()..=max_len).flat_map(move |k| {
        pool.clone().into_iter().permutations(k).flat_map(move |tuple| {
            (0u64..1 << k).map(move |code| {
                let signs = (0..k)
                    .map(|i| {
                        if code >> (k - 1 - i) & 1 == 1 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect();
                Candidate {
                    family,
                    tuple: tuple.clone(),
                    signs,
                }
            })
        })
    }))
}

pub fn adjacent_candidates(n: usize) -> Result<impl Iterator<Item = Candidate>> {
    candidates(Family::Adjacent, n, &NdConfig::default())
}

pub fn opposite_candidates(n: usize) -> Result<impl Iterator<Item = Candidate>> {
    candidates(Family::Opposite, n, &NdConfig::default())
}

/// `Σ_{k=0}^{m} m!/(m-k)! · 2^k` in exact integer arithmetic.
pub fn candidate_count(m: u32) -> Result<u128> {
    let mut total: u128 = 0;
    let mut falling: u128 = 1; // m!/(m-k)!
    for k in 0..=m {
        if k > 0 {
            falling = falling
                .checked_mul((m - k + 1) as u128)
                .ok_or(GeodesicError::CountOverflow(m))?;
        }
        let t = falling
            .checked_mul(1u128.checked_shl(k).ok_or(GeodesicError::CountOverflow(m))?)
            .ok_or(GeodesicError::CountOverflow(m))?;
        total = total.checked_add(t).ok_or(GeodesicError::CountOverflow(m))?;
    }
    Ok(total)
}

/// Number of candidates streamed for dimension `n` (no cap applied).
pub fn family_count(family: Family, n: usize) -> Result<u128> {
    if n < MIN_DIM {
        return Err(GeodesicError::DimensionTooSmall(n));
    }
    match family {
        Family::Adjacent => candidate_count((n - 2) as u32),
        Family::Opposite => Ok(candidate_count((n - 1) as u32)? - 1),
    }
}

/// Checks `floor(m! 2^m sqrt(e)) = count` without floating point: with
/// `X = m! 2^m` and rational bounds `e_lo < e < e_hi`, it verifies
/// `N^2 <= X^2 e_lo` and `X^2 e_hi < (N + 1)^2`.
pub fn floor_identity_holds(m: u32, count: u128) -> bool {
    // e_lo = Σ_{k<=K} 1/k! = p / K!, e_hi = e_lo + 2 / (K + 1)!.
    let terms = 2 * m + 30;
    let mut q = BigUint::one();
    for k in 1..=terms {
        q *= k;
    }
    let mut p = BigUint::zero();
    let mut tail = BigUint::one(); // K!/k! for k = K down to 0
    for k in (0..=terms).rev() {
        p += &tail;
        tail *= k.max(1);
    }
    let x = {
        let mut x = BigUint::one();
        for k in 1..=m {
            x *= k;
        }
        x << m
    };
    let x2 = &x * &x;
    let n = BigUint::from(count);
    let n1 = &n + 1u32;
    // e_hi = (p (K+1) + 2) / (K+1)!
    let q_hi = &q * (terms + 1);
    let p_hi = &p * (terms + 1) + 2u32;
    &n * &n * &q <= &x2 * &p && &x2 * &p_hi < &n1 * &n1 * &q_hi
}

/// `m! 2^m R_m` with `R_m = Σ_{i > m} 0.5^i / i!`, summed as
/// `Σ_{i >= 1} 2^{-i} m!/(m+i)!`.
pub fn floor_remainder(m: u32) -> f64 {
    let mut total = 0.0;
    let mut t = 1.0;
    for i in 1..200u32 {
        t /= 2.0 * (m + i) as f64;
        total += t;
        if t < total * 1e-18 {
            break;
        }
    }
    total
}

/// Closed-form `[M! 2^M sqrt(e)]` (minus one for opposite facets) checked
/// against the integer sum.
pub fn closed_form_count(family: Family, n: usize) -> Result<u128> {
    let m = match family {
        Family::Adjacent => (n - 2) as u32,
        Family::Opposite => (n - 1) as u32,
    };
    let count = candidate_count(m)?;
    if !floor_identity_holds(m, count) {
        return Err(GeodesicError::Inconsistent(format!("floor identity fails at m = {m}")));
    }
    Ok(match family {
        Family::Adjacent => count,
        Family::Opposite => count - 1,
    })
}

/// Least candidate value and the candidates attaining it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Minimum {
    pub value: f64,
    /// Candidates within [`TIE`] of the minimum, at most
    /// [`MAX_RECORDED_TIES`], sorted in stream order.
    pub ties: Vec<Candidate>,
    pub ties_truncated: bool,
}

/// Minimum over the whole stream, evaluating every candidate.
pub fn minimize_by_stream(family: Family, a: &[f64], b: &[f64], cfg: &NdConfig) -> Result<Minimum> {
    let n = check_pair(family, a, b)?;
    let mut value = f64::INFINITY;
    for c in candidates(family, n, cfg)? {
        value = value.min(c.value(a, b));
    }
    let mut ties = Vec::new();
    let mut truncated = false;
    for c in candidates(family, n, cfg)? {
        if c.value(a, b) <= value + TIE {
            if ties.len() < MAX_RECORDED_TIES {
                ties.push(c);
            } else {
                truncated = true;
                break;
            }
        }
    }
    Ok(Minimum {
        value,
        ties,
        ties_truncated: truncated,
    })
}

fn check_pair(family: Family, a: &[f64], b: &[f64]) -> Result<usize> {
    let n = a.len();
    if b.len() != n {
        return Err(GeodesicError::DimensionMismatch(n, b.len()));
    }
    let ok = a[0] == 1.0
        && match family {
            Family::Adjacent => b[1] == 1.0,
            Family::Opposite => b[0] == -1.0,
        };
    if !ok {
        return Err(GeodesicError::Precondition("points are not in normal position".into()));
    }
    Ok(n)
}

/// Depth-first search over tuple prefixes with branch and bound.
///
/// Terms that survive every extension of a prefix give a lower bound for the
/// whole subtree; subtrees whose bound exceeds the target are skipped. The
/// minimum equals [`minimize_by_stream`] bitwise since both take the max of
/// the same term values.
pub fn minimize(family: Family, a: &[f64], b: &[f64], cfg: &NdConfig) -> Result<Minimum> {
    let n = check_pair(family, a, b)?;
    cfg.check(n)?;
    let mut search = Search {
        family,
        a,
        b,
        n,
        tuple: Vec::with_capacity(n),
        signs: Vec::with_capacity(n),
        best: f64::INFINITY,
        collect: None,
        ties: Vec::new(),
        truncated: false,
    };
    search.run(f64::NEG_INFINITY);
    let value = search.best;
    search.collect = Some(value + TIE);
    search.run(f64::NEG_INFINITY);
    let mut ties = search.ties;
    ties.sort_by(|x, y| (x.len(), &x.tuple, &x.signs).cmp(&(y.len(), &y.tuple, &y.signs)));
    Ok(Minimum {
        value,
        ties,
        ties_truncated: search.truncated,
    })
}

struct Search<'a> {
    family: Family,
    a: &'a [f64],
    b: &'a [f64],
    n: usize,
    tuple: Vec<usize>,
    signs: Vec<Sign>,
    best: f64,
    collect: Option<f64>,
    ties: Vec<Candidate>,
    truncated: bool,
}

impl Search<'_> {
    fn threshold(&self) -> f64 {
        self.collect.unwrap_or(self.best)
    }

    fn e(&self, k: usize) -> f64 {
        self.signs[k].value()
    }

    /// Value of the current tuple as a complete candidate, given the max of
    /// its persistent terms.
    fn complete(&self, bound: f64) -> f64 {
        let (a, b, t) = (self.a, self.b, &self.tuple);
        let m = t.len();
        let mut v = bound;
        match self.family {
            Family::Adjacent => {
                if m == 0 {
                    v = v.max(term(2.0, -a[1], -b[0]));
                } else if m == 1 {
                    v = v.max(term(2.0, self.e(0) * a[t[0]], -b[0]));
                } else {
                    v = v.max(term(2.0, self.e(0) * a[t[0]], self.e(m - 1) * b[t[m - 1]]));
                }
                for i in 2..self.n {
                    if !t.contains(&i) {
                        v = v.max((a[i] - b[i]).abs());
                    }
                }
            }
            Family::Opposite => {
                v = v.max(term(4.0, self.e(0) * a[t[0]], self.e(m - 1) * b[t[m - 1]]));
            }
        }
        v
    }

    /// Max of the terms fixed once the last entry of the tuple is chosen.
    fn new_persistent(&self) -> f64 {
        let (a, b, t) = (self.a, self.b, &self.tuple);
        let m = t.len();
        match (self.family, m) {
            (_, 0) => f64::NEG_INFINITY,
            (Family::Adjacent, 1) => term(2.0, -a[1], self.e(0) * b[t[0]]),
            (Family::Adjacent, 2) => term(2.0, self.e(1) * a[t[1]], -b[0]),
            (Family::Opposite, 1) => f64::NEG_INFINITY,
            _ => term(2.0, self.e(m - 1) * a[t[m - 1]], self.e(m - 2) * b[t[m - 2]]),
        }
    }

    fn run(&mut self, bound: f64) {
        if self.tuple.len() >= self.family.min_len() {
            let v = self.complete(bound);
            match self.collect {
                None => self.best = self.best.min(v),
                Some(limit) => {
                    if v <= limit {
                        if self.ties.len() < MAX_RECORDED_TIES {
                            self.ties.push(Candidate {
                                family: self.family,
                                tuple: self.tuple.clone(),
                                signs: self.signs.clone(),
                            });
                        } else {
                            self.truncated = true;
                        }
                    }
                }
            }
        }
        for axis in self.family.first_axis()..self.n {
            if self.tuple.contains(&axis) {
                continue;
            }
            for sign in [Sign::Minus, Sign::Plus] {
                self.tuple.push(axis);
                self.signs.push(sign);
                let next = bound.max(self.new_persistent());
                if next <= self.threshold() {
                    self.run(next);
                }
                self.tuple.pop();
                self.signs.pop();
            }
        }
    }
}

/// Which formula produced a distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Both points on one facet: the straight segment.
    Segment,
    /// Three dimensions, adjacent facets: `min(alpha, beta, gamma)`.
    Adjacent3,
    /// Three dimensions, opposite facets: `min(s1, ..., s12)`.
    Opposite3,
    AdjacentFamily,
    OppositeFamily,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub source: Source,
    /// Facet assignment that attained the distance.
    pub class: PairClass,
    /// Minimizing quantities (`alpha`, `s6`, ...) or candidate labels.
    pub minimizers: Vec<String>,
    /// Fired minimality conditions, three dimensions only.
    pub conditions: Vec<String>,
    pub candidates: Vec<Candidate>,
    pub candidates_truncated: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicResult {
    pub distance: f64,
    pub path: GeodesicPath,
    pub provenance: Provenance,
}

/// Shortest-path distance with a witness, over every facet assignment.
pub fn geodesic_distance(a: &SurfacePoint, b: &SurfacePoint) -> Result<GeodesicResult> {
    geodesic_distance_with(a, b, &NdConfig::default())
}

pub fn geodesic_distance_with(a: &SurfacePoint, b: &SurfacePoint, cfg: &NdConfig) -> Result<GeodesicResult> {
    let n = a.dim();
    if b.dim() != n {
        return Err(GeodesicError::DimensionMismatch(n, b.dim()));
    }
    cfg.check(n)?;
    let mut best: Option<GeodesicResult> = None;
    for class in classify_pair(a, b)? {
        let r = match class {
            PairClass::SameFace(_) => segment(a, b, class)?,
            _ => across(a, b, class, cfg)?,
        };
        if best.as_ref().is_none_or(|x| r.distance < x.distance) {
            best = Some(r);
        }
    }
    let mut best = best.ok_or_else(|| GeodesicError::Inconsistent("no facet assignment".into()))?;
    best.distance = norm_floor(best.distance, a, b);
    Ok(best)
}

// Closed-form sums can land one ulp under the norm distance, which is a
// lower bound for every path.
fn norm_floor(d: f64, a: &SurfacePoint, b: &SurfacePoint) -> f64 {
    d.max(a.sup_distance(b))
}

/// Distance only; the same value as [`geodesic_distance`] without building
/// a witness.
pub fn distance_value(a: &SurfacePoint, b: &SurfacePoint, cfg: &NdConfig) -> Result<f64> {
    let n = a.dim();
    if b.dim() != n {
        return Err(GeodesicError::DimensionMismatch(n, b.dim()));
    }
    cfg.check(n)?;
    let mut best = f64::INFINITY;
    for class in classify_pair(a, b)? {
        let v = match class {
            PairClass::SameFace(_) => a.sup_distance(b),
            _ => {
                let c = canonicalize(a, b, class)?;
                minimize(family_of(class), c.a.coords(), c.b.coords(), cfg)?.value
            }
        };
        best = best.min(v);
    }
    Ok(norm_floor(best, a, b))
}

fn family_of(class: PairClass) -> Family {
    match class {
        PairClass::Opposite { .. } => Family::Opposite,
        _ => Family::Adjacent,
    }
}

fn segment(a: &SurfacePoint, b: &SurfacePoint, class: PairClass) -> Result<GeodesicResult> {
    let path = if a == b {
        GeodesicPath::single(a.clone())
    } else {
        GeodesicPath::new(vec![a.clone(), b.clone()])?
    };
    Ok(GeodesicResult {
        distance: a.sup_distance(b),
        path,
        provenance: Provenance {
            source: Source::Segment,
            class,
            minimizers: vec!["segment".into()],
            conditions: Vec::new(),
            candidates: Vec::new(),
            candidates_truncated: false,
        },
    })
}

fn across(a: &SurfacePoint, b: &SurfacePoint, class: PairClass, cfg: &NdConfig) -> Result<GeodesicResult> {
    let canon = canonicalize(a, b, class)?;
    let (ca, cb) = (canon.a.coords(), canon.b.coords());
    let family = family_of(class);
    let min = minimize(family, ca, cb, cfg)?;
    let back = canon.iso.inverse();
    let finish = |path: GeodesicPath, provenance: Provenance| -> Result<GeodesicResult> {
        let path = path.transformed(&back);
        if (path.total_length() - min.value).abs() > WITNESS_TOL {
            return Err(GeodesicError::Inconsistent(format!(
                "witness length {} differs from distance {}",
                path.total_length(),
                min.value
            )));
        }
        Ok(GeodesicResult {
            distance: min.value,
            path,
            provenance,
        })
    };
    let mut provenance = Provenance {
        source: match family {
            Family::Adjacent => Source::AdjacentFamily,
            Family::Opposite => Source::OppositeFamily,
        },
        class,
        minimizers: min.ties.iter().map(|c| c.to_string()).collect(),
        conditions: Vec::new(),
        candidates: min.ties.clone(),
        candidates_truncated: min.ties_truncated,
    };

    if ca.len() == 3 {
        match family {
            Family::Adjacent => {
                let input = AdjacentInput::from_points(ca, cb)?;
                let r = adjacent3::adjacent3_distance(&input);
                if r.distance.to_bits() != min.value.to_bits() {
                    return Err(GeodesicError::Inconsistent(format!(
                        "candidate minimum {} differs from min(alpha, beta, gamma) = {}",
                        min.value, r.distance
                    )));
                }
                provenance.source = Source::Adjacent3;
                provenance.minimizers = r.minimizers.iter().map(|q| q.name().to_string()).collect();
                provenance.conditions = r.satisfied_conditions.iter().map(|l| format!("({l})")).collect();
                return finish(adjacent3::adjacent3_witness(&input)?, provenance);
            }
            Family::Opposite => {
                let input = OppositeInput::from_points(ca, cb)?;
                let r = opposite3::opposite3_distance(&input);
                if r.distance.to_bits() != min.value.to_bits() {
                    return Err(GeodesicError::Inconsistent(format!(
                        "candidate minimum {} differs from min(s1..s12) = {}",
                        min.value, r.distance
                    )));
                }
                provenance.source = Source::Opposite3;
                provenance.minimizers = r.minimizers.iter().map(|j| format!("s{j}")).collect();
                provenance.conditions = r
                    .condition_hits
                    .iter()
                    .filter(|h| h.holds)
                    .flat_map(|h| {
                        h.fired.iter().map(move |l| match h.derived_from {
                            None => format!("s{}: ({l})", h.j),
                            Some(t) => format!("s{}: ({l}) of s{t} after substitution", h.j),
                        })
                    })
                    .collect();
                return finish(opposite3::opposite3_witness(&input)?, provenance);
            }
        }
    }

    if min.value == 0.0 {
        // Coincident points.
        return finish(GeodesicPath::single(canon.a.clone()), provenance);
    }
    for c in &min.ties {
        let path = solve_face_sequence(&canon.a, &canon.b, &c.face_sequence())?;
        if (path.total_length() - min.value).abs() <= WITNESS_TOL {
            return finish(path, provenance);
        }
    }
    Err(GeodesicError::Inconsistent(format!(
        "no facet sequence of a minimizing candidate attains {}",
        min.value
    )))
}

/// Names the `AdjacentQuantity` a three-dimensional candidate stands for.
pub fn quantity_of(c: &Candidate) -> Option<AdjacentQuantity> {
    match c.label3()? {
        "alpha" => Some(AdjacentQuantity::Alpha),
        "beta" => Some(AdjacentQuantity::Beta),
        "gamma" => Some(AdjacentQuantity::Gamma),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> NdConfig {
        NdConfig::default()
    }

    #[test]
    fn counts_match_the_integer_sum() {
        let expect = [3u128, 13, 79, 633, 6331, 75973];
        for (k, n) in (3..=8).enumerate() {
            assert_eq!(family_count(Family::Adjacent, n).unwrap(), expect[k]);
            assert_eq!(closed_form_count(Family::Adjacent, n).unwrap(), expect[k]);
            let opp = family_count(Family::Opposite, n).unwrap();
            assert_eq!(opp, candidate_count(n as u32 - 1).unwrap() - 1);
            if k + 1 < expect.len() {
                assert_eq!(opp, expect[k + 1] - 1);
            }
        }
        assert_eq!(candidate_count(1).unwrap(), 3);
        assert_eq!(candidate_count(2).unwrap(), 13);
        assert_eq!(candidate_count(3).unwrap(), 79);
        assert_eq!(adjacent_candidates(5).unwrap().count(), 79);
        assert_eq!(opposite_candidates(4).unwrap().count(), 78);
        assert!(matches!(candidate_count(40), Err(GeodesicError::CountOverflow(40))));
    }

    #[test]
    fn floor_identity_and_remainder() {
        for m in 1..=20 {
            let c = candidate_count(m).unwrap();
            assert!(floor_identity_holds(m, c), "m = {m}");
            assert!(!floor_identity_holds(m, c + 1));
            let r = floor_remainder(m);
            assert!(r > 0.0 && r < 1.0);
        }
    }

    #[test]
    fn streams_are_ordered() {
        let all: Vec<_> = adjacent_candidates(4).unwrap().collect();
        assert_eq!(all[0].tuple, Vec::<usize>::new());
        assert_eq!(all[1].to_string(), "adj(3-)");
        assert_eq!(all[2].to_string(), "adj(3+)");
        assert_eq!(all[5].to_string(), "adj(3-,4-)");
        assert!(all.windows(2).all(|w| (w[0].len(), &w[0].tuple, &w[0].signs)
            < (w[1].len(), &w[1].tuple, &w[1].signs)));
        assert!(matches!(
            candidates(Family::Adjacent, 11, &cfg()).err(),
            Some(GeodesicError::DimensionCap { found: 11, cap: 10 })
        ));
    }

    #[test]
    fn schema_for_documented_case() {
        let c = Candidate::new(Family::Adjacent, vec![2, 4], vec![Sign::Plus, Sign::Minus], 5).unwrap();
        assert_eq!(
            c.schema(5),
            vec!["2 - a2 + b3", "2 - a5 - b1", "2 + a3 - b5", "|a4 - b4|"]
        );
        let a = [1.0, 0.1, 0.2, 0.3, 0.4];
        let b = [0.5, 1.0, -0.6, 0.7, 0.8];
        let v = c.evaluate(&a, &b).unwrap();
        let expect = [2.0 - 0.1 - 0.6, 2.0 - 0.4 - 0.5, 2.0 + 0.2 - 0.8, 0.4f64];
        for (x, y) in v.terms.iter().zip(expect) {
            assert!((x - y).abs() < 1e-15);
        }
        let o = Candidate::new(Family::Opposite, vec![1, 2], vec![Sign::Minus, Sign::Plus], 3).unwrap();
        assert_eq!(o.schema(3), vec!["2 + a3 - b2", "4 - a2 + b3"]);
        assert_eq!(o.label3(), Some("s10"));
        assert!(Candidate::new(Family::Opposite, vec![0], vec![Sign::Plus], 3).is_err());
        assert!(Candidate::new(Family::Adjacent, vec![2, 2], vec![Sign::Plus; 2], 4).is_err());
    }

    #[test]
    fn labels_match_three_dimensional_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..2000 {
            let p: [f64; 4] = [(); 4].map(|_| rng.gen_range(-1.0..=1.0));
            let o = OppositeInput::new(p[0], p[1], p[2], p[3]).unwrap();
            let s = opposite3::route_lengths(&o);
            let (a, b) = (o.point_a(), o.point_b());
            let all: Vec<_> = opposite_candidates(3).unwrap().collect();
            assert_eq!(all.len(), 12);
            let mut seen = [false; 12];
            for c in all {
                let j: usize = c.label3().unwrap()[1..].parse().unwrap();
                assert_eq!(c.value(&a, &b).to_bits(), s[j - 1].to_bits(), "{c}");
                seen[j - 1] = true;
            }
            assert!(seen.iter().all(|&x| x));

            let i = AdjacentInput::new(p[0], p[1], p[2], p[3]).unwrap();
            let r = adjacent3::adjacent3_distance(&i);
            let (a, b) = (i.point_a(), i.point_b());
            for c in adjacent_candidates(3).unwrap() {
                let want = match quantity_of(&c).unwrap() {
                    AdjacentQuantity::Alpha => r.alpha,
                    AdjacentQuantity::Beta => r.beta,
                    AdjacentQuantity::Gamma => r.gamma,
                };
                assert_eq!(c.value(&a, &b).to_bits(), want.to_bits());
            }
        }
    }

    #[test]
    fn search_matches_stream() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 3..=6 {
            for _ in 0..200 {
                let mut a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                let mut b: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
                a[0] = 1.0;
                b[1] = 1.0;
                let s = minimize_by_stream(Family::Adjacent, &a, &b, &cfg()).unwrap();
                let d = minimize(Family::Adjacent, &a, &b, &cfg()).unwrap();
                assert_eq!(s.value.to_bits(), d.value.to_bits());
                assert_eq!(s.ties[0], d.ties[0]);
                b[1] = rng.gen_range(-1.0..=1.0);
                b[0] = -1.0;
                let s = minimize_by_stream(Family::Opposite, &a, &b, &cfg()).unwrap();
                let d = minimize(Family::Opposite, &a, &b, &cfg()).unwrap();
                assert_eq!(s.value.to_bits(), d.value.to_bits());
            }
        }
    }

    #[test]
    fn face_sequences_follow_the_worked_cases() {
        // Adjacent, n = 5, axes (3, 5): facets x1, x5 = +1, x3 = -1, x2.
        let c = Candidate::new(Family::Adjacent, vec![2, 4], vec![Sign::Plus, Sign::Minus], 5).unwrap();
        assert_eq!(
            c.face_sequence(),
            vec![FaceId::plus(0), FaceId::plus(4), FaceId::minus(2), FaceId::plus(1)]
        );
        // Opposite, n = 6, axes (5, 3): facets x1, x5 = +1, x3 = -1, x1 = -1.
        let c = Candidate::new(Family::Opposite, vec![4, 2], vec![Sign::Minus, Sign::Plus], 6).unwrap();
        assert_eq!(
            c.face_sequence(),
            vec![FaceId::plus(0), FaceId::plus(4), FaceId::minus(2), FaceId::minus(0)]
        );
    }

    #[test]
    fn dispatcher_examples() {
        let p = |c: &[f64]| SurfacePoint::new(c.to_vec(), 1e-9).unwrap();
        let r = geodesic_distance(&p(&[1.0, 0.2, 0.3]), &p(&[1.0, 0.2, 0.3])).unwrap();
        assert_eq!(r.distance, 0.0);
        let r = geodesic_distance(&p(&[1.0, 0.2, 0.3]), &p(&[1.0, -0.4, 0.5])).unwrap();
        assert!((r.distance - 0.6).abs() < 1e-15);
        assert_eq!(r.provenance.source, Source::Segment);
        let r = geodesic_distance(&p(&[1.0, 0.0, 0.0, 0.0]), &p(&[-1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(r.distance, 4.0);
        assert!((r.path.total_length() - 4.0).abs() < 1e-9);
        let r = geodesic_distance(&p(&[1.0, 0.05, 0.0]), &p(&[-1.0, 0.05, 0.0])).unwrap();
        assert!((r.distance - 3.9).abs() < 1e-15);
        assert_eq!(r.provenance.minimizers, vec!["s1"]);
        let r = geodesic_distance(&p(&[1.0, 0.5, 0.0]), &p(&[0.5, 1.0, 0.0])).unwrap();
        assert_eq!(r.distance, 1.0);
        assert_eq!(r.provenance.minimizers, vec!["alpha"]);
        assert!(r.provenance.conditions.contains(&"(1)".to_string()));
    }
}
