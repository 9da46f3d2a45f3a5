use std::process::{Command, Output};

fn cubegeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubegeo"))
        .args(args)
        .output()
        .expect("run cubegeo")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dist_json_s1_example() {
    let o = cubegeo(&["dist", "-a", "1,0.05,0", "-b", "-1,0.05,0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["n", "a", "b", "distance", "provenance", "minimizers", "conditions"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["n"], 3);
    assert_eq!(v["distance"].as_f64().unwrap(), 3.9);
    assert_eq!(v["minimizers"][0], "s1");
}

#[test]
fn dist_text() {
    let o = cubegeo(&["dist", "-a", "1,0.5,0", "-b", "0.5,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("distance: 1\n"), "{s}");
    assert!(s.contains("minimizers: alpha"));
    assert!(s.contains("(1)"));

    let o = cubegeo(&["dist", "-a", "1,0,0", "-b", "1,0,0"]);
    assert!(stdout(&o).starts_with("distance: 0\n"));
}

#[test]
fn bad_input_exits_1() {
    for args in [
        vec!["dist", "-a", "1,0", "-b", "1,0"],
        vec!["dist", "-a", "1,0,0", "-b", "1,0,0,0"],
        vec!["dist", "-a", "0.5,0,0", "-b", "1,0,0"],
        vec!["dist", "-a", "1,nope,0", "-b", "1,0,0"],
        vec!["dist", "-a", "1,0,0"],
        vec!["frobnicate"],
        vec!["audit", "--class", "sideways"],
        vec!["audit", "--oracle", "grid", "--h", "0.3"],
        vec!["audit", "--tol=-1"],
        vec!["candidates", "--n", "11", "--mode", "adjacent"],
        vec!["path", "-a", "1,0,0,0", "-b", "-1,0,0,0", "--format", "obj"],
    ] {
        let o = cubegeo(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(cubegeo(&["--help"]).status.code(), Some(0));
}

#[test]
fn path_formats() {
    let o = cubegeo(&["path", "-a", "1,-0.5,0.9", "-b", "-0.5,1,0.9", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Vec<f64>> = stdout(&o)
        .lines()
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    let total: f64 = rows
        .windows(2)
        .map(|w| w[0].iter().zip(&w[1]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
        .sum();
    assert!((total - 1.6).abs() < 1e-9);

    let o = cubegeo(&["path", "-a", "1,-0.95,-1", "-b", "-1,0.05,0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["total"].as_f64().unwrap() - 2.95).abs() < 1e-12);
    assert_eq!(v["leg_lengths"].as_array().unwrap().len() + 1, v["vertices"].as_array().unwrap().len());

    let o = cubegeo(&["path", "-a", "1,0.2,0.3", "-b", "1,0.2,0.3", "--format", "obj"]);
    assert_eq!(stdout(&o), "v 1 0.2 0.3\nl 1\n");
}

#[test]
fn path_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.obj");
    let o = cubegeo(&[
        "path",
        "-a",
        "1,0.5,0",
        "-b",
        "0.5,1,0",
        "--format",
        "obj",
        "-o",
        file.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(file).unwrap();
    assert!(text.starts_with("v 1 0.5 0\n"));
    assert!(text.lines().last().unwrap().starts_with("l 1 2"));
}

#[test]
fn audit_empty_and_report_is_stable() {
    let o = cubegeo(&["audit", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations: 0"));

    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for name in ["r1.json", "r2.json"] {
        let file = dir.path().join(name);
        let o = cubegeo(&[
            "audit", "--n", "3", "--class", "opposite", "--samples", "40", "--seed", "42", "--oracle", "both", "--h",
            "0.1", "--report", file.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        reports.push(std::fs::read(file).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let v: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 40);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn audit_failure_exits_2() {
    // Zero tolerance: some closed form differs from the LP in the last bit.
    let o = cubegeo(&["audit", "--class", "opposite", "--samples", "300", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stdout(&o).contains("exact-oracle"));
}

#[test]
fn candidate_counts_and_listing() {
    let o = cubegeo(&["candidates", "--n", "3", "--mode", "opposite", "--count-only"]);
    assert_eq!(stdout(&o), "12 = 12\n");
    let o = cubegeo(&["candidates", "--n", "5", "--mode", "adjacent", "--count-only"]);
    assert_eq!(stdout(&o), "79 = 79\n");

    let o = cubegeo(&["candidates", "--n", "3", "--mode", "adjacent"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 3);
    for (line, q) in lines.iter().zip(["[alpha]", "[beta]", "[gamma]"]) {
        assert!(line.contains(q), "{line}");
    }

    let o = cubegeo(&["candidates", "--n", "3", "--mode", "opposite"]);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 12);
    for j in 1..=12 {
        assert!(s.contains(&format!("[s{j}]")), "s{j} missing");
    }
}
