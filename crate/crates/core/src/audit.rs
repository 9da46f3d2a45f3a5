//! Batch verification of the closed forms against the oracles.
//!
//! Samples are drawn from per-index streams, processed in order and written
//! into a report that serializes identically for a fixed configuration.

use serde::Serialize;

use crate::adjacent3::{self, AdjacentInput, AdjacentQuantity};
use crate::error::{GeodesicError, Result};
use crate::nd::{distance_value, geodesic_distance_with, NdConfig};
use crate::opposite3::{self, OppositeInput};
use crate::oracle::{default_depth, exact_oracle, restricted_exact_oracle, GridOracle, GridScratch};
use crate::sampling::{self, SampleClass};
use crate::surface::{canonicalize, classify_pair, PairClass, SurfacePoint};

pub const DEFAULT_EXACT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleChoice {
    Exact,
    Grid,
    Both,
}

impl OracleChoice {
    fn exact(self) -> bool {
        matches!(self, OracleChoice::Exact | OracleChoice::Both)
    }

    fn grid(self) -> bool {
        matches!(self, OracleChoice::Grid | OracleChoice::Both)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditConfig {
    pub n: usize,
    pub class: SampleClass,
    pub samples: usize,
    pub seed: u64,
    pub oracle: OracleChoice,
    /// Grid spacing; defaults to `0.01` for `n = 3` and `0.05` above.
    pub h: Option<f64>,
    /// Exact-oracle tolerance; defaults to [`DEFAULT_EXACT_TOL`].
    pub tol: Option<f64>,
    /// Exact-oracle depth; defaults to [`default_depth`].
    pub depth: Option<usize>,
    pub nd: NdConfig,
}

impl AuditConfig {
    pub fn new(n: usize, class: SampleClass, samples: usize, seed: u64, oracle: OracleChoice) -> Self {
        AuditConfig {
            n,
            class,
            samples,
            seed,
            oracle,
            h: None,
            tol: None,
            depth: None,
            nd: NdConfig::default(),
        }
    }
}

/// Default grid spacing for a dimension.
pub fn default_h(n: usize) -> f64 {
    if n <= 3 {
        0.01
    } else {
        0.05
    }
}

/// Grid error bound `2 n h`: `6h` for `n = 3`, `8h` for `n = 4`.
pub fn grid_tolerance(n: usize, h: f64) -> f64 {
    2.0 * n as f64 * h
}

/// Lattice resolution `K = 2 / h`, which must be an even integer >= 10.
pub fn resolution_for(h: f64) -> Result<usize> {
    if !(h.is_finite() && h > 0.0) {
        return Err(GeodesicError::Precondition(format!("grid spacing {h} must be positive")));
    }
    let k = (2.0 / h).round();
    if (2.0 / k - h).abs() > 1e-12 * h.max(1.0) || k < 10.0 || k % 2.0 != 0.0 {
        return Err(GeodesicError::BadResolution(k as usize));
    }
    Ok(k as usize)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub closed_form: f64,
    pub minimizers: Vec<String>,
    pub conditions: Vec<String>,
    pub exact: Option<f64>,
    pub grid: Option<f64>,
    pub delta_exact: Option<f64>,
    pub delta_grid: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub class: SampleClass,
    pub samples: usize,
    pub seed: u64,
    pub oracle: OracleChoice,
    pub h: Option<f64>,
    pub exact_tol: f64,
    pub grid_tol: Option<f64>,
    pub depth: usize,
    pub records: Vec<SampleRecord>,
    pub max_abs_delta_exact: Option<f64>,
    pub max_abs_delta_grid: Option<f64>,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn fold_max(acc: Option<f64>, x: Option<f64>) -> Option<f64> {
    match (acc, x) {
        (None, x) => x.map(f64::abs),
        (a, None) => a,
        (Some(a), Some(x)) => Some(a.max(x.abs())),
    }
}

/// Runs the audit. Setup errors (bad dimension, bad grid spacing) are
/// returned as errors; everything found while checking samples is a
/// violation in the report.
pub fn run_audit(cfg: &AuditConfig) -> Result<AuditReport> {
    cfg.nd.check(cfg.n)?;
    let n = cfg.n;
    let exact_tol = cfg.tol.unwrap_or(DEFAULT_EXACT_TOL);
    if exact_tol.is_nan() || exact_tol < 0.0 {
        return Err(GeodesicError::Precondition(format!("tolerance {exact_tol} must be non-negative")));
    }
    let depth = cfg.depth.unwrap_or_else(|| default_depth(n));
    let (grid, h) = if cfg.oracle.grid() {
        let h = cfg.h.unwrap_or_else(|| default_h(n));
        (Some(GridOracle::new(n, resolution_for(h)?)?), Some(h))
    } else {
        (None, None)
    };
    let grid_tol = h.map(|h| grid_tolerance(n, h));
    let mut scratch = GridScratch::default();

    let mut report = AuditReport {
        n,
        class: cfg.class,
        samples: cfg.samples,
        seed: cfg.seed,
        oracle: cfg.oracle,
        h,
        exact_tol,
        grid_tol,
        depth,
        records: Vec::with_capacity(cfg.samples),
        max_abs_delta_exact: None,
        max_abs_delta_grid: None,
        violations: Vec::new(),
    };

    for index in 0..cfg.samples {
        let mut rng = sampling::sample_rng(cfg.seed, index as u64);
        let (a, b) = sampling::random_pair(cfg.class, n, &mut rng);
        let mut flag = |check: &str, detail: String| {
            report.violations.push(Violation {
                index,
                check: check.to_string(),
                detail,
            })
        };

        let result = match geodesic_distance_with(&a, &b, &cfg.nd) {
            Ok(r) => r,
            Err(e) => {
                flag("dispatch", e.to_string());
                continue;
            }
        };
        let d = result.distance;

        let floor = a.sup_distance(&b);
        if d < floor {
            flag("norm-bound", format!("distance {d} below norm distance {floor}"));
        }
        match distance_value(&b, &a, &cfg.nd) {
            Ok(back) if back == d => {}
            Ok(back) => flag("symmetry", format!("d(A,B) = {d}, d(B,A) = {back}")),
            Err(e) => flag("symmetry", e.to_string()),
        }
        if (result.path.total_length() - d).abs() > exact_tol {
            flag(
                "witness",
                format!("witness length {} vs distance {d}", result.path.total_length()),
            );
        }

        let exact = if cfg.oracle.exact() {
            match exact_oracle(&a, &b, depth) {
                Ok(r) => Some(r.distance),
                Err(e) => {
                    flag("exact-oracle", e.to_string());
                    None
                }
            }
        } else {
            None
        };
        let delta_exact = exact.map(|x| d - x);
        if let Some(delta) = delta_exact {
            if delta.abs() > exact_tol {
                flag("exact-oracle", format!("closed form {d} minus oracle = {delta}"));
            }
        }

        let grid_value = match &grid {
            Some(g) => match g.distance_with(&mut scratch, a.coords(), b.coords()) {
                Ok(x) => Some(x),
                Err(e) => {
                    flag("grid-oracle", e.to_string());
                    None
                }
            },
            None => None,
        };
        let delta_grid = grid_value.map(|x| d - x);
        if let (Some(delta), Some(tol)) = (delta_grid, grid_tol) {
            if delta.abs() > tol {
                flag("grid-oracle", format!("closed form {d} minus grid = {delta}"));
            }
        }

        if n == 3 {
            for (check, detail) in condition_checks(&a, &b, d, cfg.oracle.exact()) {
                flag(check, detail);
            }
        }

        report.max_abs_delta_exact = fold_max(report.max_abs_delta_exact, delta_exact);
        report.max_abs_delta_grid = fold_max(report.max_abs_delta_grid, delta_grid);
        report.records.push(SampleRecord {
            index,
            a: a.coords().to_vec(),
            b: b.coords().to_vec(),
            closed_form: d,
            minimizers: result.provenance.minimizers,
            conditions: result.provenance.conditions,
            exact,
            grid: grid_value,
            delta_exact,
            delta_grid,
        });
    }
    Ok(report)
}

/// Condition/minimizer equivalences for every facet assignment of a
/// three-dimensional pair, plus the two-leg criterion when the exact
/// oracle is enabled. Assignments close to a case boundary are skipped.
fn condition_checks(a: &SurfacePoint, b: &SurfacePoint, d: f64, with_oracle: bool) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    let Ok(classes) = classify_pair(a, b) else {
        return out;
    };
    for class in classes {
        let Ok(canon) = canonicalize(a, b, class) else {
            continue;
        };
        let (ca, cb) = (canon.a.coords(), canon.b.coords());
        match class {
            PairClass::Adjacent(..) => {
                let Ok(input) = AdjacentInput::from_points(ca, cb) else { continue };
                if sampling::adjacent_is_ambiguous(&input) {
                    continue;
                }
                let r = adjacent3::adjacent3_distance(&input);
                for q in [AdjacentQuantity::Alpha, AdjacentQuantity::Beta, AdjacentQuantity::Gamma] {
                    let fired = adjacent3::conditions_for(q).any(&input.params());
                    if fired != r.is_minimizer(q) {
                        out.push((
                            "conditions",
                            format!("{:?}: conditions {fired}, {} minimal {}", input.params(), q.name(), !fired),
                        ));
                    }
                }
                // The two-leg criterion concerns this facet pair only, so it
                // is checked when neither point has another facet to use.
                if with_oracle && a.faces().len() == 1 && b.faces().len() == 1 {
                    match restricted_exact_oracle(&canon.a, &canon.b, 2) {
                        Ok(two) => {
                            let reaches = (two - d).abs() <= DEFAULT_EXACT_TOL;
                            if reaches != adjacent3::two_leg_exists(&input) {
                                out.push((
                                    "two-leg",
                                    format!("{:?}: two-facet optimum {two}, distance {d}", input.params()),
                                ));
                            }
                        }
                        Err(e) => out.push(("two-leg", e.to_string())),
                    }
                }
            }
            PairClass::Opposite { .. } => {
                let Ok(input) = OppositeInput::from_points(ca, cb) else { continue };
                if sampling::opposite_is_ambiguous(&input) {
                    continue;
                }
                let r = opposite3::opposite3_distance(&input);
                for hit in &r.condition_hits {
                    if hit.holds != r.minimizers.contains(&hit.j) {
                        out.push((
                            "conditions",
                            format!("{:?}: conditions for s{} {}", input.params(), hit.j, hit.holds),
                        ));
                    }
                }
            }
            PairClass::SameFace(_) => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_audit() {
        let r = run_audit(&AuditConfig::new(3, SampleClass::Opposite, 0, 1, OracleChoice::Exact)).unwrap();
        assert!(r.passed());
        assert!(r.records.is_empty());
        assert_eq!(r.max_abs_delta_exact, None);
    }

    #[test]
    fn small_audits_pass_and_repeat() {
        let mut cfg = AuditConfig::new(3, SampleClass::Adjacent, 20, 5, OracleChoice::Both);
        cfg.h = Some(0.1);
        let r = run_audit(&cfg).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r, run_audit(&cfg).unwrap());
        assert!(r.max_abs_delta_exact.unwrap() <= 1e-9);
        assert!(r.max_abs_delta_grid.unwrap() <= 0.6);
    }

    #[test]
    fn resolution_checks() {
        assert_eq!(resolution_for(0.01).unwrap(), 200);
        assert_eq!(resolution_for(0.05).unwrap(), 40);
        assert!(resolution_for(0.3).is_err());
        assert!(resolution_for(0.0).is_err());
        assert_eq!(grid_tolerance(3, 0.01), 0.06);
    }
}
