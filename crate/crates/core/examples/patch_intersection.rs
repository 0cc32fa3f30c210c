//! Loads a patch (default `examples/patches/case_c.json`), validates it and prints pair and
//! whole-patch intersection dimensions.
//!
//! `cargo run --example patch_intersection -- path/to/patch.json`

use triortho::geometry::{predicted_pair_dim, validate_patch, TrianglePatch};
use triortho::intersection::{intersect_many, intersect_pair};
use triortho::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/patches/case_c.json").into());
    let patch = TrianglePatch::<Rational>::from_json(&std::fs::read_to_string(path)?)?;
    let violations = validate_patch(&patch);
    if !violations.is_empty() {
        return Err(format!("invalid patch: {violations:?}").into());
    }
    let t = patch.triangles()?;
    for n in 1..=4 {
        let pairs: Vec<String> = (0..t.len())
            .map(|i| {
                let (a, b) = (&t[i], &t[(i + 1) % t.len()]);
                Ok::<_, triortho::Error>(format!("{}/{}", intersect_pair(n, a, b)?.dim, predicted_pair_dim(a, b, n)?))
            })
            .collect::<Result<_, _>>()?;
        println!("n={n}: pairs (dim/predicted) [{}], patch dim {}", pairs.join(" "), intersect_many(n, &t)?.dim);
    }
    Ok(())
}
