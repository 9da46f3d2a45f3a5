use cube_geodesic_web::{adjacent, listing, opposite, LISTING_LIMIT};

#[test]
fn adjacent_corner_example() {
    let e = adjacent(0.5, 0.0, 0.5, 0.0).unwrap();
    assert_eq!(e.distance, 1.0);
    assert_eq!(e.minimizers, vec!["alpha"]);
    assert_eq!(e.quantities[0], ("alpha".to_string(), 1.0));
    assert!((e.path.total - 1.0).abs() < 1e-12);
}

#[test]
fn opposite_examples() {
    let e = opposite(0.05, 0.0, 0.05, 0.0).unwrap();
    assert_eq!(e.distance, 3.9);
    assert_eq!(e.quantities.len(), 12);
    assert_eq!(e.minimizers, vec!["s1"]);

    let e = opposite(-0.95, -1.0, 0.05, 0.0).unwrap();
    assert!((e.distance - 2.95).abs() < 1e-12);
    assert_eq!(e.path.vertices.first().unwrap(), &vec![1.0, -0.95, -1.0]);
    assert_eq!(e.path.vertices.last().unwrap(), &vec![-1.0, 0.05, 0.0]);
}

#[test]
fn out_of_range_is_an_error() {
    assert!(adjacent(1.5, 0.0, 0.0, 0.0).is_err());
    assert!(opposite(0.0, f64::NAN, 0.0, 0.0).is_err());
}

#[test]
fn listings() {
    let l = listing(3, true).unwrap();
    assert_eq!(l.count, "12");
    assert_eq!(l.closed_form, "12");
    assert_eq!(l.candidates.len(), 12);
    assert!(!l.truncated);

    let l = listing(7, false).unwrap();
    assert_eq!(l.count, "6331");
    assert!(l.truncated);
    assert_eq!(l.candidates.len(), LISTING_LIMIT);

    assert!(listing(2, false).is_err());
}

#[test]
fn json_shape() {
    let v: serde_json::Value = serde_json::to_value(adjacent(-0.5, 0.9, -0.5, 0.9).unwrap()).unwrap();
    assert_eq!(v["path"]["vertices"].as_array().unwrap().len(), 4);
    assert!((v["distance"].as_f64().unwrap() - 1.6).abs() < 1e-12);
}
