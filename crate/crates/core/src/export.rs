//! Path serialization: a serde-friendly view plus CSV and OBJ writers.
//!
//! Numbers are printed with Rust's shortest round-trip formatting.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{GeodesicError, Result};
use crate::surface::GeodesicPath;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathExport {
    pub vertices: Vec<Vec<f64>>,
    pub leg_lengths: Vec<f64>,
    pub total: f64,
}

impl From<&GeodesicPath> for PathExport {
    fn from(p: &GeodesicPath) -> Self {
        PathExport {
            vertices: p.vertices().iter().map(|v| v.coords().to_vec()).collect(),
            leg_lengths: p.leg_lengths(),
            total: p.total_length(),
        }
    }
}

/// One vertex per line, `x1,...,xn`.
pub fn to_csv(path: &GeodesicPath) -> String {
    let mut out = String::new();
    for v in path.vertices() {
        let line: Vec<String> = v.coords().iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Wavefront OBJ: `v` records and a single `l` polyline. Three dimensions
/// only.
pub fn to_obj(path: &GeodesicPath) -> Result<String> {
    if path.dim() != 3 {
        return Err(GeodesicError::Precondition(format!(
            "OBJ export needs three dimensions, path has {}",
            path.dim()
        )));
    }
    let mut out = String::new();
    for v in path.vertices() {
        let c = v.coords();
        writeln!(out, "v {} {} {}", c[0], c[1], c[2]).expect("write to string");
    }
    out.push('l');
    for k in 1..=path.vertices().len() {
        write!(out, " {k}").expect("write to string");
    }
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path() -> GeodesicPath {
        GeodesicPath::from_coords([vec![1.0, 0.5, 0.0], vec![1.0, 1.0, 0.25], vec![0.5, 1.0, 0.0]], 1e-9)
            .unwrap()
    }

    #[test]
    fn csv_and_obj() {
        assert_eq!(to_csv(&path()), "1,0.5,0\n1,1,0.25\n0.5,1,0\n");
        assert_eq!(
            to_obj(&path()).unwrap(),
            "v 1 0.5 0\nv 1 1 0.25\nv 0.5 1 0\nl 1 2 3\n"
        );
        let p4 = GeodesicPath::from_coords([vec![1.0, 0.0, 0.0, 0.0]], 1e-9).unwrap();
        assert!(to_obj(&p4).is_err());
    }

    #[test]
    fn export_view() {
        let e = PathExport::from(&path());
        assert_eq!(e.leg_lengths, vec![0.5, 0.5]);
        assert_eq!(e.total, 1.0);
        assert_eq!(e.vertices.len(), 3);
    }
}
