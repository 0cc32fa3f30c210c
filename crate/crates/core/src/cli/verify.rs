use clap::Args;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{dec, DegreeRange, ModeArg, OutputArgs, Report};
use crate::error::{Error, Result};
use crate::geometry::Triangle;
use crate::intersection::{intersect_pair, predicted_cd_dim, reduced_system, spanning_case, spanning_poly, CdParams};
use crate::polynomial::{inner_product, monomial_count, monomial_exponents, BivarPoly};
use crate::scalar::{rational, Rational, Scalar};

/// Float results closer than this to an exceptional line defer to exact mode.
pub const ARBITRATION_DISTANCE: f64 = 1e-9;

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Degrees to check, e.g. `1..4`.
    #[arg(long = "n", default_value = "1..4")]
    pub n: DegreeRange,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
    /// Generic grid points per axis (the grid has `grid²` generic points).
    #[arg(long, default_value_t = 14)]
    pub grid: usize,
    /// Points placed on each exceptional line.
    #[arg(long, default_value_t = 10)]
    pub line_points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub cd: CdParams<Rational>,
    /// Why the point was placed: `generic`, a line name, or `near:<line>`.
    pub origin: String,
}

/// Names of the exceptional sets containing `(c, d)`.
pub fn exceptional_lines(cd: &CdParams<Rational>) -> Vec<&'static str> {
    let (c, d) = (&cd.c, &cd.d);
    let one = Rational::from_i64(1);
    let mut out = Vec::new();
    if c.is_zero() && *d == one {
        out.push("trivial");
    }
    if c.is_zero() {
        out.push("c=0");
    }
    if *d == one {
        out.push("d=1");
    }
    if d.clone() - c.clone() == one {
        out.push("d=c+1");
    }
    if c.clone() - d.clone() == one {
        out.push("d=c-1");
    }
    if *c == one && d.is_zero() {
        out.push("reflected");
    }
    out
}

/// Euclidean distance from `(c, d)` to the union of the exceptional lines and points.
pub fn distance_to_exceptional(c: f64, d: f64) -> f64 {
    let s = std::f64::consts::SQRT_2;
    [
        c.abs(),
        (d - 1.0).abs(),
        (d - c - 1.0).abs() / s,
        (d - c + 1.0).abs() / s,
        ((c - 1.0).powi(2) + d * d).sqrt(),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// Generic points on a `grid × grid` lattice offset off every exceptional line, `line_points`
/// points on each line, the two special points, and one point `10⁻¹²` off each line.
pub fn cd_grid(grid: usize, line_points: usize) -> Vec<GridPoint> {
    let mut out = Vec::new();
    let mut push = |c: Rational, d: Rational, origin: String| {
        if let Ok(cd) = CdParams::new(c, d) {
            if !out.iter().any(|p: &GridPoint| p.cd == cd) {
                out.push(GridPoint { cd, origin });
            }
        }
    };
    let g = grid as i64;
    for i in 0..g {
        for j in 0..g {
            let c = rational(3 * (2 * i + 1 - g), 2 * g) + rational(1, 11);
            let d = rational(3 * (2 * j + 1 - g), 2 * g) - rational(1, 13);
            push(c, d, "generic".into());
        }
    }
    push(Rational::from_i64(0), Rational::from_i64(1), "trivial".into());
    push(Rational::from_i64(1), Rational::from_i64(0), "reflected".into());
    let one = Rational::from_i64(1);
    for k in 0..line_points as i64 {
        let t = rational(2 * (k - line_points as i64 / 2), 3) + rational(1, 5);
        push(Rational::from_i64(0), t.clone(), "c=0".into());
        push(t.clone(), one.clone(), "d=1".into());
        push(t.clone(), t.clone() + one.clone(), "d=c+1".into());
        push(t.clone(), t.clone() - one.clone(), "d=c-1".into());
    }
    let eps = Rational::new(1.into(), num_bigint::BigInt::from(10).pow(12));
    push(eps.clone(), rational(-5, 3), "near:c=0".into());
    push(rational(7, 4), one.clone() + eps.clone(), "near:d=1".into());
    push(rational(-5, 2), rational(-3, 2) + eps.clone(), "near:d=c+1".into());
    push(rational(9, 4), rational(5, 4) + eps.clone(), "near:d=c-1".into());
    push(one + eps.clone(), eps, "near:reflected".into());
    out
}

/// Largest `|(q, x^r y^m)_K|` over `r + m < n` on `T1` and `K_{c,d}`.
fn membership_residual<T: Scalar>(q: &BivarPoly<T>, cd: &CdParams<T>, n: usize) -> T {
    let mut worst = T::zero();
    for k in [Triangle::unit(), cd.triangle()] {
        for i in 0..monomial_count(n - 1) {
            let (r, m) = monomial_exponents(i);
            let v = inner_product(q, &BivarPoly::monomial(r, m, T::one()), &k).abs();
            if v > worst {
                worst = v;
            }
        }
    }
    worst
}

struct Outcome {
    record: Value,
    mismatch: bool,
    arbitrated: bool,
}

fn check_point(index: usize, point: &GridPoint, n: usize, mode: ModeArg) -> Result<Outcome> {
    let cd = &point.cd;
    let predicted = predicted_cd_dim(n, cd);
    let (cf, df) = (cd.c.to_f64(), cd.d.to_f64());
    let distance = distance_to_exceptional(cf, df);
    let mut record = json!({
        "index": index,
        "n": n,
        "c": dec(&cd.c),
        "d": dec(&cd.d),
        "origin": point.origin,
        "lines": exceptional_lines(cd),
        "predicted": predicted,
        "geometrically_invalid": !cd.disjoint_from_unit(),
        "distance_to_exceptional": dec(&distance),
    });
    let mut mismatch = false;
    let mut arbitrated = false;
    let mut exact_dim = None;
    if mode.exact() {
        let res = intersect_pair(n, &Triangle::unit(), &cd.triangle())?;
        let nullity = n + 1 - reduced_system(n, cd)?.rank();
        let mut entry = json!({ "dim": res.dim, "reduced_nullity": nullity });
        if let Some(case) = spanning_case(n, cd) {
            let q = spanning_poly(n, &case)?;
            entry["spanning_case"] = json!(case.name());
            let residual = membership_residual(&q, cd, n);
            mismatch |= !residual.is_zero();
            entry["spanning_residual"] = dec(&residual);
        }
        mismatch |= res.dim != predicted || nullity != predicted;
        exact_dim = Some(res.dim);
        record["exact"] = entry;
    }
    if mode.float() {
        let cdf = CdParams::new(cf, df)?;
        let res = intersect_pair(n, &Triangle::unit(), &cdf.triangle())?;
        let mut entry = json!({
            "dim": res.dim,
            "rank_tolerance": res.rank_tolerance.map(|t| dec(&t)),
        });
        if res.dim != predicted {
            if distance <= ARBITRATION_DISTANCE {
                arbitrated = true;
                entry["arbitration"] = json!(match exact_dim {
                    Some(_) => "exact mode decides: float rank is unreliable this close to an exceptional line",
                    None => "within 1e-9 of an exceptional line: float rank not trusted",
                });
            } else {
                mismatch = true;
            }
        }
        if let Some(case) = spanning_case(n, &cdf) {
            entry["spanning_residual"] = dec(&membership_residual(&spanning_poly(n, &case)?, &cdf, n));
        }
        record["float"] = entry;
    }
    record["status"] = json!(if mismatch { "mismatch" } else if arbitrated { "arbitrated" } else { "match" });
    Ok(Outcome { record, mismatch, arbitrated })
}

/// Runs every `(point, n)` check; records are ordered by degree, then grid index.
pub fn dimension_report(args: &VerifyArgs) -> Result<Report> {
    if args.n.lo == 0 || args.n.hi > 8 {
        return Err(Error::InvalidDegree(args.n.lo.max(args.n.hi), "verify-theorem2 takes degrees in 1..=8"));
    }
    let grid = cd_grid(args.grid, args.line_points);
    let jobs: Vec<(usize, usize)> = args.n.iter().flat_map(|n| (0..grid.len()).map(move |i| (n, i))).collect();
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .map(|&(n, i)| check_point(i, &grid[i], n, args.mode))
        .collect::<Result<_>>()?;
    let mismatches = outcomes.iter().filter(|o| o.mismatch).count();
    let arbitrated = outcomes.iter().filter(|o| o.arbitrated).count();
    let json = json!({
        "command": "verify-theorem2",
        "mode": args.mode.to_string(),
        "degrees": args.n.to_string(),
        "grid_points": grid.len(),
        "checks": outcomes.len(),
        "mismatches": mismatches,
        "float_arbitrated": arbitrated,
        "status": if mismatches == 0 { "pass" } else { "fail" },
        "records": outcomes.into_iter().map(|o| o.record).collect::<Vec<_>>(),
    });
    Ok(Report { json, passed: mismatches == 0 })
}
