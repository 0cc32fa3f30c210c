//! Fans of triangles around a common vertex.
//!
//! Triangle `i` (0-based) is `(z, ring[i - 1], ring[i])` with the ring index taken cyclically,
//! so a valid patch lists its ring counterclockwise around `z`.

use num_bigint::BigInt;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{orient2d, sign_with_tolerance, triangles_overlap, AffineMap, Point, Triangle};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrianglePatch<T> {
    pub z: Point<T>,
    pub ring: Vec<Point<T>>,
}

/// A reason a [`TrianglePatch`] is malformed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewTriangles { q: usize },
    Degenerate { triangle: usize },
    Clockwise { triangle: usize },
    Overlap { first: usize, second: usize },
    /// The ring winds around `z` this many times instead of once.
    Coverage { winding: i64 },
}

impl<T: Scalar> TrianglePatch<T> {
    pub fn new(z: Point<T>, ring: Vec<Point<T>>) -> Self {
        TrianglePatch { z, ring }
    }

    pub fn q(&self) -> usize {
        self.ring.len()
    }

    /// Triangle `i` as `(z, ring[i - 1], ring[i])`, without orientation checks.
    pub fn vertices_of(&self, i: usize) -> [Point<T>; 3] {
        let q = self.q();
        [self.z.clone(), self.ring[(i + q - 1) % q].clone(), self.ring[i % q].clone()]
    }

    /// All triangles, failing on the first degenerate or clockwise one.
    pub fn triangles(&self) -> Result<Vec<Triangle<T>>> {
        (0..self.q())
            .map(|i| {
                let [a, b, c] = self.vertices_of(i);
                Triangle::new(a, b, c)
            })
            .collect()
    }

    pub fn diameter(&self) -> f64 {
        let pts: Vec<Point<f64>> =
            std::iter::once(&self.z).chain(&self.ring).map(Point::to_f64).collect();
        let mut d: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                d = d.max(p.sub(q).norm_sq().sqrt());
            }
        }
        d
    }

    /// Whether the ring turns left at `ring[i]`, i.e. the inner angle there, seen from `z`, is
    /// below `π`.
    pub fn inner_angle_below_pi(&self, i: usize) -> bool {
        let q = self.q();
        let prev = &self.ring[(i + q - 1) % q];
        let next = &self.ring[(i + 1) % q];
        let s = self.diameter();
        sign_with_tolerance(&orient2d(prev, &self.ring[i % q], next), s * s) > 0
    }

    pub fn map(&self, f: &AffineMap<T>) -> Self {
        TrianglePatch { z: f.apply(&self.z), ring: self.ring.iter().map(|p| f.apply(p)).collect() }
    }

    pub fn to_f64(&self) -> TrianglePatch<f64> {
        TrianglePatch { z: self.z.to_f64(), ring: self.ring.iter().map(Point::to_f64).collect() }
    }

    /// Winding number of the closed ring around `z`: signed crossings of the ray from `z` in
    /// the `+x` direction.
    fn winding(&self) -> i64 {
        let q = self.q();
        let s = self.diameter();
        let mut count = 0;
        for i in 0..q {
            let a = self.ring[(i + q - 1) % q].sub(&self.z);
            let b = self.ring[i].sub(&self.z);
            let turn = sign_with_tolerance(&orient2d(&Point::origin(), &a, &b), s * s);
            let (ya, yb) = (sign_with_tolerance(&a.y, s), sign_with_tolerance(&b.y, s));
            if ya < 0 && yb >= 0 && turn > 0 {
                count += 1;
            } else if yb < 0 && ya >= 0 && turn < 0 {
                count -= 1;
            }
        }
        count
    }
}

impl TrianglePatch<Rational> {
    pub fn to_scalar<U: Scalar>(&self) -> TrianglePatch<U> {
        TrianglePatch { z: self.z.to_scalar(), ring: self.ring.iter().map(Point::to_scalar).collect() }
    }

    /// Parses `{"z": [x, y], "ring": [[x, y], ...]}` where every coordinate is a decimal or
    /// fraction string (plain JSON numbers are accepted too and read from their literal text).
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let schema = |message: &str| Error::Parse { line: 0, column: 0, message: message.to_string() };
        let coord = |v: &Value| -> Result<Rational> {
            match v {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                _ => Err(schema("coordinate must be a decimal string")),
            }
        };
        let point = |v: &Value| -> Result<Point<Rational>> {
            match v.as_array().map(Vec::as_slice) {
                Some([x, y]) => Ok(Point::new(coord(x)?, coord(y)?)),
                _ => Err(schema("point must be a two-element array")),
            }
        };
        let z = point(value.get("z").ok_or_else(|| schema("missing field \"z\""))?)?;
        let ring = value
            .get("ring")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("missing array field \"ring\""))?
            .iter()
            .map(point)
            .collect::<Result<Vec<_>>>()?;
        Ok(TrianglePatch { z, ring })
    }

    /// Serializes with coordinates as exact `p/q` (or integer) strings.
    pub fn to_json(&self) -> Value {
        let point = |p: &Point<Rational>| Value::from(vec![p.x.to_string(), p.y.to_string()]);
        serde_json::json!({
            "z": point(&self.z),
            "ring": self.ring.iter().map(point).collect::<Vec<_>>(),
        })
    }
}

/// Every way the patch fails to be a fan of disjoint counterclockwise triangles winding once
/// around `z`; empty for a valid patch.
pub fn validate_patch<T: Scalar>(patch: &TrianglePatch<T>) -> Vec<Violation> {
    let q = patch.q();
    if q < 3 {
        return vec![Violation::TooFewTriangles { q }];
    }
    let mut out = Vec::new();
    let mut triangles = Vec::with_capacity(q);
    for i in 0..q {
        let [a, b, c] = patch.vertices_of(i);
        match Triangle::new(a.clone(), b.clone(), c.clone()) {
            Ok(t) => triangles.push((i, t)),
            Err(Error::ClockwiseTriangle) => {
                out.push(Violation::Clockwise { triangle: i });
                triangles.push((i, Triangle::from_unordered(a, b, c).expect("nondegenerate")));
            }
            Err(_) => out.push(Violation::Degenerate { triangle: i }),
        }
    }
    let winding = patch.winding();
    if winding != 1 {
        out.push(Violation::Coverage { winding });
    }
    for (x, (i, ti)) in triangles.iter().enumerate() {
        for (j, tj) in &triangles[x + 1..] {
            if triangles_overlap(ti, tj) {
                out.push(Violation::Overlap { first: *i, second: *j });
            }
        }
    }
    out
}

fn snap(v: f64, den: i64) -> Rational {
    Rational::new(BigInt::from((v * den as f64).round() as i64), BigInt::from(den))
}

/// A random valid patch with `q` triangles and exact rational vertices.
///
/// Sector angles are drawn with weights in `[0.2, 1]` (rejecting any sector of `0.95 π` or
/// more), radii in `[0.3, 2]`, and every coordinate is rounded to a grid of spacing `1/den`
/// with `den` drawn from `64..=1000`.
pub fn random_patch<R: Rng>(rng: &mut R, q: usize) -> Result<TrianglePatch<Rational>> {
    if q < 3 {
        return Err(Error::InvalidPatch(vec![Violation::TooFewTriangles { q }]));
    }
    use std::f64::consts::PI;
    loop {
        let weights: Vec<f64> = (0..q).map(|_| rng.gen_range(0.2..1.0)).collect();
        let total: f64 = weights.iter().sum();
        let gaps: Vec<f64> = weights.iter().map(|w| 2.0 * PI * w / total).collect();
        if gaps.iter().any(|g| *g >= 0.95 * PI) {
            continue;
        }
        let den = rng.gen_range(64..=1000);
        let offset: f64 = rng.gen_range(0.0..2.0 * PI);
        let z = Point::new(snap(rng.gen_range(-1.0..1.0), den), snap(rng.gen_range(-1.0..1.0), den));
        let mut theta = offset;
        let mut ring = Vec::with_capacity(q);
        for g in &gaps {
            theta += g;
            let r: f64 = rng.gen_range(0.3..2.0);
            let x = z.x.to_f64() + r * theta.cos();
            let y = z.y.to_f64() + r * theta.sin();
            ring.push(Point::new(snap(x, den), snap(y, den)));
        }
        let patch = TrianglePatch::new(z, ring);
        if validate_patch(&patch).is_empty() {
            return Ok(patch);
        }
    }
}
