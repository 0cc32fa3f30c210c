use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use super::{dec, DegreeRange, ModeArg, OutputArgs, Report};
use crate::error::{Error, Result};
use crate::projection::{c_doubleprime, c_doubleprime_zero, sweep_x, PatchParams, SweepConfig, SweepResult};
use crate::scalar::Rational;

#[derive(Debug, Clone, Args)]
pub struct ConstantsArgs {
    /// Degrees for the c''_n table.
    #[arg(long = "n", default_value = "0..8")]
    pub n: DegreeRange,
    /// Backend for the patch sweep: Grams exact on lifted float vertices, or plain float.
    #[arg(long, value_enum, default_value_t = ModeArg::Float)]
    pub mode: ModeArg,
    /// Triangles per patch; enables the sweep over the patch family.
    #[arg(long)]
    pub q: Option<usize>,
    /// Lower bound on every patch angle.
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    /// Lower bound on every radius.
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Degree used in the sweep.
    #[arg(long, default_value_t = 2)]
    pub sweep_n: usize,
    /// Write one CSV row per sampled patch here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(dec).collect())
}

fn params_json(p: &PatchParams) -> Value {
    json!({ "alpha": floats(&p.alpha), "beta": floats(&p.beta), "gamma": floats(&p.gamma), "radii": floats(&p.radii) })
}

fn write_csv(path: &PathBuf, runs: &[(ModeArg, SweepResult)]) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let q = runs.first().map_or(0, |(_, r)| r.config.q);
    let mut header: Vec<String> = ["q", "delta", "rho", "n", "mode", "index", "boundary"].map(String::from).to_vec();
    for name in ["alpha", "beta", "gamma", "r"] {
        header.extend((1..=q).map(|i| format!("{name}_{i}")));
    }
    header.extend(["c_prime", "c_doubleprime", "c_check"].map(String::from));
    w.write_record(&header).map_err(io)?;
    for (mode, res) in runs {
        let c = &res.config;
        for row in &res.rows {
            let mut rec = vec![
                c.q.to_string(),
                dec(&c.delta).as_str().unwrap_or_default().to_string(),
                format!("{:?}", c.rho),
                c.n.to_string(),
                mode.to_string(),
                row.index.to_string(),
                row.boundary.to_string(),
            ];
            let p = &row.params;
            for v in p.alpha.iter().chain(&p.beta).chain(&p.gamma).chain(&p.radii) {
                rec.push(format!("{v:?}"));
            }
            for v in [row.c_prime, row.c_doubleprime, row.c_check] {
                rec.push(format!("{v:?}"));
            }
            w.write_record(&rec).map_err(io)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn constants_report(args: &ConstantsArgs) -> Result<Report> {
    let mut passed = true;
    let mut table = Vec::new();
    let mut prev = f64::INFINITY;
    let mut scaled = Vec::new();
    for n in args.n.iter() {
        let v = c_doubleprime(n);
        passed &= v > 0.0 && v <= prev * (1.0 + 1e-12);
        prev = v;
        let s = (n as f64 + 1.0).powi(4) * v;
        if n >= 1 {
            scaled.push(s);
        }
        let mut row = json!({ "n": n, "c_doubleprime": dec(&v), "scaled_by_n_plus_1_pow_4": dec(&s) });
        if n == 0 {
            row["exact"] = json!(c_doubleprime_zero().to_string());
        }
        table.push(row);
    }
    let band = match (scaled.iter().copied().reduce(f64::max), scaled.iter().copied().reduce(f64::min)) {
        (Some(hi), Some(lo)) => Some(dec(&(hi / lo))),
        _ => None,
    };
    let mut json = json!({
        "command": "constants",
        "degrees": args.n.to_string(),
        "c_doubleprime": table,
        "scaled_band_ratio": band,
    });
    if let Some(q) = args.q {
        let cfg = SweepConfig { q, delta: args.delta, rho: args.rho, samples: args.samples, n: args.sweep_n, seed: args.seed };
        let mut runs = Vec::new();
        if args.mode.exact() {
            runs.push((ModeArg::Exact, sweep_x::<Rational>(&cfg)?));
        }
        if args.mode.float() {
            runs.push((ModeArg::Float, sweep_x::<f64>(&cfg)?));
        }
        let mut sweeps = Vec::new();
        for (mode, res) in &runs {
            let positive = res.rows.iter().all(|r| r.c_prime > 0.0 && r.c_check > 0.0);
            let inequality = res.rows.iter().all(|r| r.c_check >= r.c_doubleprime * r.c_prime * (1.0 - 1e-8));
            passed &= positive && inequality;
            sweeps.push(json!({
                "mode": mode.to_string(),
                "q": q,
                "delta": dec(&args.delta),
                "rho": dec(&args.rho),
                "n": args.sweep_n,
                "seed": args.seed.to_string(),
                "patches": res.rows.len(),
                "min_c_check": dec(&res.min_c_check),
                "argmin": params_json(&res.argmin),
                "all_positive": positive,
                "inequality_holds": inequality,
            }));
        }
        json["sweeps"] = json!(sweeps);
        if let Some(path) = &args.csv {
            write_csv(path, &runs)?;
        }
    }
    json["status"] = json!(if passed { "pass" } else { "fail" });
    Ok(Report { json, passed })
}
