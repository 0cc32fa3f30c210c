//! The constructed critical configurations: adjacent pairs on critical sets, yet short runs of
//! consecutive triangles already have trivial intersections.

use std::path::Path;

use triortho::geometry::{classify_fourth_vertex, shared_edge, validate_patch, CriticalClass, TrianglePatch};
use triortho::intersection::{intersect_many, intersect_pair};
use triortho::scalar::{rational, Rational};

type Q = Rational;

fn load(name: &str) -> TrianglePatch<Q> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/patches").join(name);
    let p = TrianglePatch::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(validate_patch(&p).is_empty(), "{name}");
    p
}

fn tag(c: &CriticalClass<Q>) -> String {
    match c {
        CriticalClass::NonCritical => "-".into(),
        CriticalClass::RayBeyondA { t } => format!("A{t}"),
        CriticalClass::RayBeyondB { t } => format!("B{t}"),
        CriticalClass::ReflectedPoint => "R".into(),
        CriticalClass::QuadraticLine { t } => format!("L{t}"),
    }
}

/// Checks the pair classes, that pair dimensions follow them, and that every run of `len`
/// consecutive triangles intersects trivially.
fn check(name: &str, n: usize, classes: &[&str], len: usize) {
    let tris = load(name).triangles().unwrap();
    let q = tris.len();
    assert_eq!(q, classes.len());
    for i in 0..q {
        let (a, b) = (&tris[i], &tris[(i + 1) % q]);
        let edge = shared_edge(a, b).unwrap();
        let class = classify_fourth_vertex(&edge.first(), &edge.apex2, n).unwrap();
        assert_eq!(tag(&class), classes[i], "{name} pair {i}");
        assert_eq!(intersect_pair(n, a, b).unwrap().dim, usize::from(class.is_critical()), "{name} pair {i}");
    }
    for start in 0..q {
        let run: Vec<_> = (0..len).map(|j| tris[(start + j) % q].clone()).collect();
        assert_eq!(intersect_many(n, &run).unwrap().dim, 0, "{name} run from {start}");
    }
}

#[test]
fn case_a_two_rays() {
    check("case_a.json", 3, &["-", "B2", "-", "B2"], 3);
}

#[test]
fn case_b_rays_and_reflected_point() {
    check("case_b.json", 3, &["-", "B2", "R", "B2"], 3);
}

#[test]
fn case_c_four_critical_pairs_in_a_row() {
    check("case_c.json", 3, &["B2", "A2", "R", "R", "-"], 3);
    check("case_c.json", 3, &["B2", "A2", "R", "R", "-"], 4);
}

#[test]
fn case_d_reflected_points() {
    check("case_d.json", 3, &["-", "R", "R", "-", "B2"], 3);
}

#[test]
fn quadratic_cases() {
    check("case_e.json", 2, &["-", "A2", "L3/2", "-", "B3"], 3);
    check("case_f.json", 2, &["L5/2", "B2", "L3/2", "B2"], 3);
    check("case_g.json", 2, &["-", "L5/3", "L3/2", "-"], 3);
}

#[test]
fn quadratic_line_contains_reflected_point() {
    // In degree 2 the reflected point is reported as the point t = 1 of the quadratic line.
    let p = load("case_b.json");
    let tris = p.triangles().unwrap();
    let edge = shared_edge(&tris[2], &tris[3]).unwrap();
    assert_eq!(
        classify_fourth_vertex(&edge.first(), &edge.apex2, 2).unwrap(),
        CriticalClass::QuadraticLine { t: rational(1, 1) }
    );
    assert_eq!(intersect_pair(2, &tris[2], &tris[3]).unwrap().dim, 1);
}
