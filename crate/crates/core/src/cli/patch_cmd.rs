use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use super::{dec, point_json, DegreeRange, ModeArg, OutputArgs, Report};
use crate::error::{Error, Result};
use crate::geometry::{
    barycenters_collinear, classify_fourth_vertex, predicted_pair_dim, shared_edge, validate_patch,
    Triangle, TrianglePatch,
};
use crate::intersection::{intersect_many, intersect_pair};
use crate::projection::constants;
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, Args)]
pub struct PatchArgs {
    /// Patch JSON: `{"z": [x, y], "ring": [[x, y], ...]}` with decimal or fraction strings.
    #[arg(long)]
    pub patch: PathBuf,
    #[arg(long = "n", default_value = "1..4")]
    pub n: DegreeRange,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Dimensions of the intersections over runs of `len` consecutive triangles starting at each
/// index (wrapping around the ring).
fn window_dims<T: Scalar>(triangles: &[Triangle<T>], n: usize, len: usize) -> Result<Vec<usize>> {
    let q = triangles.len();
    (0..q)
        .map(|start| {
            let run: Vec<Triangle<T>> = (0..len).map(|j| triangles[(start + j) % q].clone()).collect();
            Ok(intersect_many(n, &run)?.dim)
        })
        .collect()
}

struct DegreeOutcome {
    record: Value,
    mismatch: bool,
}

fn degree_record<T: Scalar>(patch: &TrianglePatch<T>, n: usize) -> Result<DegreeOutcome> {
    let triangles = patch.triangles()?;
    let q = triangles.len();
    let mut mismatch = false;
    let mut pairs = Vec::with_capacity(q);
    for i in 0..q {
        let (k1, k2) = (&triangles[i], &triangles[(i + 1) % q]);
        let predicted = predicted_pair_dim(k1, k2, n)?;
        let dim = intersect_pair(n, k1, k2)?.dim;
        mismatch |= dim != predicted;
        let mut rec = json!({ "triangles": [i, (i + 1) % q], "predicted": predicted, "dim": dim });
        if n >= 2 {
            let edge = shared_edge(k1, k2)?;
            let class = classify_fourth_vertex(&edge.first(), &edge.apex2, n)?;
            rec["class"] = class_json(&class);
        }
        pairs.push(rec);
    }
    let mut windows = serde_json::Map::new();
    for len in 3..q {
        windows.insert(len.to_string(), json!(window_dims(&triangles, n, len)?));
    }
    let patch_dim = intersect_many(n, &triangles)?.dim;
    mismatch |= patch_dim != 0;
    let c = constants(patch, n)?;
    let record = json!({
        "n": n,
        "pairs": pairs,
        "windows": windows,
        "patch_dim": patch_dim,
        "constants": {
            "c_prime": dec(&c.c_prime),
            "c_doubleprime": dec(&c.c_doubleprime),
            "c_check": dec(&c.c_check),
            "inequality_holds": c.inequality_holds(1e-8),
        },
    });
    Ok(DegreeOutcome { record, mismatch })
}

fn class_json<T: Scalar>(class: &crate::geometry::CriticalClass<T>) -> Value {
    use crate::geometry::CriticalClass::*;
    match class {
        NonCritical => json!({ "tag": "NonCritical" }),
        RayBeyondA { t } => json!({ "tag": "RayBeyondA", "t": dec(t) }),
        RayBeyondB { t } => json!({ "tag": "RayBeyondB", "t": dec(t) }),
        ReflectedPoint => json!({ "tag": "ReflectedPoint" }),
        QuadraticLine { t } => json!({ "tag": "QuadraticLine", "t": dec(t) }),
    }
}

fn mode_section<T: Scalar>(patch: &TrianglePatch<T>, n: DegreeRange) -> Result<(Value, bool)> {
    let mut mismatch = false;
    let mut degrees = Vec::new();
    for k in n.iter() {
        let out = degree_record(patch, k)?;
        mismatch |= out.mismatch;
        degrees.push(out.record);
    }
    Ok((json!(degrees), mismatch))
}

/// `(patch_dim, [(predicted, dim) per pair])` per degree.
fn dims_of(section: &Value) -> Vec<(Value, Vec<(Value, Value)>)> {
    section
        .as_array()
        .into_iter()
        .flatten()
        .map(|d| {
            let pairs = d["pairs"].as_array().into_iter().flatten();
            (d["patch_dim"].clone(), pairs.map(|p| (p["predicted"].clone(), p["dim"].clone())).collect())
        })
        .collect()
}

pub fn patch_report(args: &PatchArgs) -> Result<Report> {
    if args.n.lo == 0 {
        return Err(Error::InvalidDegree(0, "patch reports need degree at least 1"));
    }
    let text = std::fs::read_to_string(&args.patch)?;
    let patch = TrianglePatch::<Rational>::from_json(&text)?;
    let violations = validate_patch(&patch);
    if !violations.is_empty() {
        return Err(Error::InvalidPatch(violations));
    }
    let mut json = json!({
        "command": "patch",
        "mode": args.mode.to_string(),
        "patch": {
            "z": point_json(&patch.z),
            "ring": patch.ring.iter().map(point_json).collect::<Vec<_>>(),
        },
        "q": patch.q(),
        "valid": true,
        "barycenters": serde_json::to_value(barycenters_collinear(&patch)?).map_err(|e| Error::Io(e.to_string()))?,
    });
    let mut mismatch = false;
    let mut exact_dims = None;
    if args.mode.exact() {
        let (section, bad) = mode_section(&patch, args.n)?;
        mismatch |= bad;
        exact_dims = Some(section.clone());
        json["exact"] = section;
    }
    if args.mode.float() {
        let (section, bad) = mode_section(&patch.to_f64(), args.n)?;
        match exact_dims {
            // exact arithmetic is the reference; float discrepancies are only recorded
            Some(exact) => {
                json["float_agrees_with_exact"] = json!(dims_of(&section) == dims_of(&exact));
            }
            None => mismatch |= bad,
        }
        json["float"] = section;
    }
    json["status"] = json!(if mismatch { "fail" } else { "pass" });
    Ok(Report { json, passed: !mismatch })
}
