//! Brute-force reference engines.
//!
//! [`exact_oracle`] enumerates facet sequences and minimizes the path length
//! over each one with a linear program. [`GridOracle`] runs breadth-first
//! search on a king-move lattice laid over the surface. Neither uses any of
//! the closed forms.

use minilp::{ComparisonOp, OptimizationDirection, Problem, Variable};

use crate::error::{GeodesicError, Result};
use crate::surface::{sup_distance, FaceId, GeodesicPath, Sign, SurfacePoint};

/// Default sequence depth (number of facets) for the exact oracle: five in
/// three dimensions, `n + 1` above. Four facets are not enough for `n = 4`;
/// opposite pairs whose shortest path crosses three side facets are common.
pub fn default_depth(n: usize) -> usize {
    if n <= 3 {
        5
    } else {
        n + 1
    }
}

/// Facet sequences of at most `max_faces` entries that start on one of
/// `start`, end on one of `end`, step between adjacent facets and never
/// revisit a facet.
pub fn face_sequences(n: usize, start: &[FaceId], end: &[FaceId], max_faces: usize) -> Vec<Vec<FaceId>> {
    let all: Vec<FaceId> = (0..n)
        .flat_map(|axis| [FaceId::plus(axis), FaceId::minus(axis)])
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(max_faces);
    for &f in start {
        stack.push(f);
        extend_sequences(&all, end, max_faces, &mut stack, &mut out);
        stack.pop();
    }
    out
}

fn extend_sequences(
    all: &[FaceId],
    end: &[FaceId],
    max_faces: usize,
    stack: &mut Vec<FaceId>,
    out: &mut Vec<Vec<FaceId>>,
) {
    let last = *stack.last().expect("nonempty");
    if end.contains(&last) {
        out.push(stack.clone());
    }
    if stack.len() == max_faces {
        return;
    }
    for &g in all {
        if last.is_adjacent(g) && !stack.contains(&g) {
            stack.push(g);
            extend_sequences(all, end, max_faces, stack, out);
            stack.pop();
        }
    }
}

#[derive(Clone, Copy)]
enum Coord {
    Fixed(f64),
    Free(Variable),
}

/// Shortest path from `a` to `b` whose legs lie in `faces` in order.
///
/// Crossing point `r` sits on `faces[r] ∩ faces[r + 1]`; every other
/// coordinate is a variable in `[-1, 1]`. One epigraph variable per leg
/// bounds the absolute coordinate differences from above, so the optimum of
/// the linear program is the optimum path length. The returned path is
/// rebuilt from the clamped solution and its length recomputed directly.
pub fn solve_face_sequence(a: &SurfacePoint, b: &SurfacePoint, faces: &[FaceId]) -> Result<GeodesicPath> {
    let n = a.dim();
    if b.dim() != n {
        return Err(GeodesicError::DimensionMismatch(n, b.dim()));
    }
    let (first, last) = match (faces.first(), faces.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(GeodesicError::EmptyPath),
    };
    if !a.on_face(first) || !b.on_face(last) {
        return Err(GeodesicError::Precondition(format!(
            "sequence must start on a face of A and end on a face of B, got {first} .. {last}"
        )));
    }
    if faces.windows(2).any(|w| !w[0].is_adjacent(w[1])) {
        return Err(GeodesicError::Precondition("consecutive facets must be adjacent".into()));
    }
    if faces.len() == 1 {
        return GeodesicPath::from_coords([a.coords().to_vec(), b.coords().to_vec()], 0.0);
    }

    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let mut points: Vec<Vec<Coord>> = vec![a.coords().iter().map(|&x| Coord::Fixed(x)).collect()];
    for w in faces.windows(2) {
        let point = (0..n)
            .map(|i| {
                if i == w[0].axis {
                    Coord::Fixed(w[0].sign.value())
                } else if i == w[1].axis {
                    Coord::Fixed(w[1].sign.value())
                } else {
                    Coord::Free(lp.add_var(0.0, (-1.0, 1.0)))
                }
            })
            .collect();
        points.push(point);
    }
    points.push(b.coords().iter().map(|&x| Coord::Fixed(x)).collect());

    for leg in points.windows(2) {
        let t = lp.add_var(1.0, (0.0, f64::INFINITY));
        for i in 0..n {
            // diff = lin + constant
            let mut lin: Vec<(Variable, f64)> = Vec::with_capacity(2);
            let mut constant = 0.0;
            match leg[1][i] {
                Coord::Fixed(x) => constant += x,
                Coord::Free(v) => lin.push((v, 1.0)),
            }
            match leg[0][i] {
                Coord::Fixed(x) => constant -= x,
                Coord::Free(v) => lin.push((v, -1.0)),
            }
            if lin.is_empty() {
                lp.add_constraint([(t, 1.0)], ComparisonOp::Ge, constant.abs());
                continue;
            }
            // t - diff >= 0 and t + diff >= 0
            let minus: Vec<_> = std::iter::once((t, 1.0))
                .chain(lin.iter().map(|&(v, c)| (v, -c)))
                .collect();
            lp.add_constraint(minus, ComparisonOp::Ge, constant);
            let plus: Vec<_> = std::iter::once((t, 1.0)).chain(lin.iter().copied()).collect();
            lp.add_constraint(plus, ComparisonOp::Ge, -constant);
        }
    }

    let solution = lp.solve().map_err(|e| GeodesicError::Solver(e.to_string()))?;
    let vertices = points.iter().map(|p| {
        p.iter()
            .map(|c| match *c {
                Coord::Fixed(x) => x,
                Coord::Free(v) => solution[v].clamp(-1.0, 1.0),
            })
            .collect::<Vec<f64>>()
    });
    GeodesicPath::from_coords(vertices, 0.0)
}

/// Result of the exact oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    pub distance: f64,
    pub path: GeodesicPath,
    pub faces: Vec<FaceId>,
}

/// Global minimum over all facet sequences of at most `depth` facets.
pub fn exact_oracle(a: &SurfacePoint, b: &SurfacePoint, depth: usize) -> Result<ExactResult> {
    if a.dim() != b.dim() {
        return Err(GeodesicError::DimensionMismatch(a.dim(), b.dim()));
    }
    if depth == 0 {
        return Err(GeodesicError::Precondition("depth must be at least 1".into()));
    }
    let floor = sup_distance(a.coords(), b.coords());
    let mut best: Option<ExactResult> = None;
    for faces in face_sequences(a.dim(), a.faces(), b.faces(), depth) {
        let path = solve_face_sequence(a, b, &faces)?;
        let length = path.total_length();
        if best.as_ref().is_none_or(|r| length < r.distance) {
            best = Some(ExactResult {
                distance: length,
                path,
                faces,
            });
        }
        // Nothing beats the norm distance.
        if best.as_ref().is_some_and(|r| r.distance <= floor) {
            break;
        }
    }
    best.ok_or_else(|| {
        GeodesicError::Inconsistent(format!("no facet sequence of length <= {depth} joins the points"))
    })
}

/// [`exact_oracle`] restricted to sequences of at most `max_faces` facets.
pub fn restricted_exact_oracle(a: &SurfacePoint, b: &SurfacePoint, max_faces: usize) -> Result<f64> {
    exact_oracle(a, b, max_faces).map(|r| r.distance)
}

/// Lattice slots the grid oracle may allocate by default.
pub const DEFAULT_NODE_BUDGET: u128 = 20_000_000;

/// King-move lattice on the surface with spacing `h = 2 / K`.
///
/// Nodes are the integer points of `[0, K]^n` with some coordinate at `0` or
/// `K`. Two nodes are joined when they lie on a common facet and differ by at
/// most one step in every coordinate, so every edge has sup-norm length `h`
/// and plain breadth-first search gives shortest paths.
#[derive(Clone, Debug)]
pub struct GridOracle {
    n: usize,
    k: usize,
    ids: Vec<u32>,
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
}

/// Reusable buffers for [`GridOracle::distance_with`].
#[derive(Clone, Debug, Default)]
pub struct GridScratch {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    queue: Vec<u32>,
    epoch: u32,
}

const NONE: u32 = u32::MAX;

impl GridOracle {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Self::with_budget(n, k, DEFAULT_NODE_BUDGET)
    }

    pub fn with_budget(n: usize, k: usize, budget: u128) -> Result<Self> {
        if n < crate::surface::MIN_DIM {
            return Err(GeodesicError::DimensionTooSmall(n));
        }
        if k < 10 || k % 2 != 0 {
            return Err(GeodesicError::BadResolution(k));
        }
        let slots = (k as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX);
        if slots > budget || slots >= NONE as u128 {
            return Err(GeodesicError::BudgetExceeded { nodes: slots, budget });
        }
        let slots = slots as usize;
        let side = k + 1;
        let mut strides = vec![1usize; n];
        for i in 1..n {
            strides[i] = strides[i - 1] * side;
        }

        let mut ids = vec![NONE; slots];
        let mut flat_of = Vec::new();
        let mut digits = vec![0usize; n];
        for (flat, id) in ids.iter_mut().enumerate() {
            let mut rest = flat;
            for d in digits.iter_mut() {
                *d = rest % side;
                rest /= side;
            }
            if digits.iter().any(|&d| d == 0 || d == k) {
                *id = flat_of.len() as u32;
                flat_of.push(flat);
            }
        }

        // Offsets in {-1, 0, 1}^n, excluding zero.
        let steps: Vec<Vec<i64>> = (0..3usize.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let s = (code % 3) as i64 - 1;
                        code /= 3;
                        s
                    })
                    .collect::<Vec<i64>>()
            })
            .filter(|s| s.iter().any(|&x| x != 0))
            .collect();

        let mut offsets = Vec::with_capacity(flat_of.len() + 1);
        let mut neighbors = Vec::new();
        let mut local = Vec::new();
        offsets.push(0u32);
        for &flat in &flat_of {
            let mut rest = flat;
            for d in digits.iter_mut() {
                *d = rest % side;
                rest /= side;
            }
            local.clear();
            for step in &steps {
                // The move must keep some boundary coordinate of this node
                // fixed, i.e. stay on a facet containing it.
                let on_shared_facet = (0..n).any(|i| (digits[i] == 0 || digits[i] == k) && step[i] == 0);
                if !on_shared_facet {
                    continue;
                }
                let mut target = 0usize;
                let mut inside = true;
                for i in 0..n {
                    let c = digits[i] as i64 + step[i];
                    if c < 0 || c > k as i64 {
                        inside = false;
                        break;
                    }
                    target += c as usize * strides[i];
                }
                if inside {
                    local.push(ids[target]);
                }
            }
            local.sort_unstable();
            local.dedup();
            debug_assert!(local.iter().all(|&v| v != NONE));
            neighbors.extend_from_slice(&local);
            offsets.push(neighbors.len() as u32);
        }

        Ok(GridOracle {
            n,
            k,
            ids,
            offsets,
            neighbors,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn resolution(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> f64 {
        2.0 / self.k as f64
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Lattice index of the nearest node along each axis, ties going to the
    /// lower index.
    pub fn snap_index(&self, x: f64) -> usize {
        let t = ((x + 1.0) * self.k as f64 / 2.0 - 0.5).ceil();
        t.clamp(0.0, self.k as f64) as usize
    }

    /// Node id of the nearest lattice point to a surface point.
    pub fn snap(&self, p: &[f64]) -> Result<u32> {
        if p.len() != self.n {
            return Err(GeodesicError::DimensionMismatch(self.n, p.len()));
        }
        let side = self.k + 1;
        let mut flat = 0usize;
        let mut stride = 1usize;
        for &x in p {
            flat += self.snap_index(x) * stride;
            stride *= side;
        }
        match self.ids[flat] {
            NONE => Err(GeodesicError::NotOnSurface(sup_distance(p, &vec![0.0; self.n]))),
            id => Ok(id),
        }
    }

    /// Graph distance between the nodes nearest to `a` and `b`, in units of
    /// length.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        self.distance_with(&mut GridScratch::default(), a, b)
    }

    pub fn distance_with(&self, scratch: &mut GridScratch, a: &[f64], b: &[f64]) -> Result<f64> {
        let s = self.snap(a)?;
        let t = self.snap(b)?;
        Ok(self.node_steps(scratch, s, t) as f64 * self.h())
    }

    /// Number of king moves between two nodes.
    pub fn node_steps(&self, scratch: &mut GridScratch, s: u32, t: u32) -> u32 {
        if s == t {
            return 0;
        }
        let count = self.node_count();
        if scratch.stamp.len() != count {
            scratch.stamp = vec![0; count];
            scratch.dist = vec![0; count];
            scratch.epoch = 0;
        }
        scratch.epoch = scratch.epoch.wrapping_add(1);
        if scratch.epoch == 0 {
            scratch.stamp.iter_mut().for_each(|x| *x = 0);
            scratch.epoch = 1;
        }
        let epoch = scratch.epoch;
        scratch.queue.clear();
        scratch.queue.push(s);
        scratch.stamp[s as usize] = epoch;
        scratch.dist[s as usize] = 0;
        let mut head = 0;
        while head < scratch.queue.len() {
            let u = scratch.queue[head] as usize;
            head += 1;
            let du = scratch.dist[u] + 1;
            let (lo, hi) = (self.offsets[u] as usize, self.offsets[u + 1] as usize);
            for &v in &self.neighbors[lo..hi] {
                let vi = v as usize;
                if scratch.stamp[vi] != epoch {
                    if v == t {
                        return du;
                    }
                    scratch.stamp[vi] = epoch;
                    scratch.dist[vi] = du;
                    scratch.queue.push(v);
                }
            }
        }
        unreachable!("the surface lattice is connected")
    }

    /// Coordinates of a node.
    pub fn node_coords(&self, id: u32) -> Vec<f64> {
        let side = self.k + 1;
        let flat = self
            .ids
            .iter()
            .position(|&x| x == id)
            .expect("valid node id");
        let mut rest = flat;
        (0..self.n)
            .map(|_| {
                let d = rest % side;
                rest /= side;
                -1.0 + d as f64 * self.h()
            })
            .collect()
    }
}

/// Facets containing a lattice coordinate vector, for diagnostics.
pub fn lattice_faces(digits: &[usize], k: usize) -> Vec<FaceId> {
    digits
        .iter()
        .enumerate()
        .filter_map(|(axis, &d)| match d {
            0 => Some(FaceId::new(axis, Sign::Minus)),
            d if d == k => Some(FaceId::new(axis, Sign::Plus)),
            _ => None,
        })
        .collect()
}
