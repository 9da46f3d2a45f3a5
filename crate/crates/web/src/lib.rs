//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; the page parses it with `JSON.parse`.
//! The plain functions underneath are what the native tests call.

use cube_geodesic::adjacent3::{adjacent3_distance, AdjacentInput};
use cube_geodesic::export::PathExport;
use cube_geodesic::nd::{candidates, closed_form_count, family_count, geodesic_distance, Family, NdConfig};
use cube_geodesic::opposite3::{opposite3_distance, OppositeInput};
use cube_geodesic::SurfacePoint;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Listings longer than this are cut; the count is still exact.
pub const LISTING_LIMIT: usize = 500;

#[derive(Debug, Serialize)]
pub struct Exploration {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub distance: f64,
    /// Named closed-form values: `alpha`, `beta`, `gamma` or `s1`..`s12`.
    pub quantities: Vec<(String, f64)>,
    pub minimizers: Vec<String>,
    pub conditions: Vec<String>,
    pub path: PathExport,
}

fn explore(a: Vec<f64>, b: Vec<f64>, quantities: Vec<(String, f64)>) -> Result<Exploration, String> {
    let pa = SurfacePoint::from_coords(a.clone()).map_err(|e| e.to_string())?;
    let pb = SurfacePoint::from_coords(b.clone()).map_err(|e| e.to_string())?;
    let r = geodesic_distance(&pa, &pb).map_err(|e| e.to_string())?;
    Ok(Exploration {
        a,
        b,
        distance: r.distance,
        quantities,
        minimizers: r.provenance.minimizers,
        conditions: r.provenance.conditions,
        path: PathExport::from(&r.path),
    })
}

/// `A = (1, a_y, a_z)` on `x = 1`, `B = (b_x, 1, b_z)` on `y = 1`.
pub fn adjacent(a_y: f64, a_z: f64, b_x: f64, b_z: f64) -> Result<Exploration, String> {
    let input = AdjacentInput::new(a_y, a_z, b_x, b_z).map_err(|e| e.to_string())?;
    let r = adjacent3_distance(&input);
    let q = vec![("alpha".into(), r.alpha), ("beta".into(), r.beta), ("gamma".into(), r.gamma)];
    explore(input.point_a().to_vec(), input.point_b().to_vec(), q)
}

/// `A = (1, a, b)`, `B = (-1, c, d)`.
pub fn opposite(a: f64, b: f64, c: f64, d: f64) -> Result<Exploration, String> {
    let input = OppositeInput::new(a, b, c, d).map_err(|e| e.to_string())?;
    let r = opposite3_distance(&input);
    let q = r.s.iter().enumerate().map(|(i, &s)| (format!("s{}", i + 1), s)).collect();
    explore(input.point_a().to_vec(), input.point_b().to_vec(), q)
}

#[derive(Debug, Serialize)]
pub struct Listing {
    pub n: usize,
    pub count: String,
    pub closed_form: String,
    pub candidates: Vec<String>,
    pub truncated: bool,
}

pub fn listing(n: usize, opposite: bool) -> Result<Listing, String> {
    let family = if opposite { Family::Opposite } else { Family::Adjacent };
    let cfg = NdConfig::default();
    let count = family_count(family, n).map_err(|e| e.to_string())?;
    let closed = closed_form_count(family, n).map_err(|e| e.to_string())?;
    let lines = candidates(family, n, &cfg)
        .map_err(|e| e.to_string())?
        .take(LISTING_LIMIT)
        .map(|c| {
            let label = c.label3().map(|l| format!(" [{l}]")).unwrap_or_default();
            format!("{c}{label}: max({})", c.schema(n).join(", "))
        })
        .collect::<Vec<_>>();
    Ok(Listing {
        n,
        // Strings, since the counts can pass 2^53.
        count: count.to_string(),
        closed_form: closed.to_string(),
        truncated: count > lines.len() as u128,
        candidates: lines,
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn explore_adjacent(a_y: f64, a_z: f64, b_x: f64, b_z: f64) -> Result<String, JsValue> {
    to_js(adjacent(a_y, a_z, b_x, b_z))
}

#[wasm_bindgen]
pub fn explore_opposite(a: f64, b: f64, c: f64, d: f64) -> Result<String, JsValue> {
    to_js(opposite(a, b, c, d))
}

#[wasm_bindgen]
pub fn list_candidates(n: usize, opposite: bool) -> Result<String, JsValue> {
    to_js(listing(n, opposite))
}
