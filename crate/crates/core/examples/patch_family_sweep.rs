//! Samples fans with all angles at least `δ` and reports the smallest `č_n` found.

use triortho::projection::{sweep_x, SweepConfig};

fn main() {
    for q in [3, 4, 6] {
        let cfg = SweepConfig { q, delta: 0.35, rho: 1.0, samples: 40, n: 2, seed: 11 };
        let res = sweep_x::<f64>(&cfg).expect("nonempty family");
        let a: Vec<String> = res.argmin.alpha.iter().map(|v| format!("{v:.3}")).collect();
        println!("q={q}: {} patches, min c-check = {:.6e} at angles [{}]", res.rows.len(), res.min_c_check, a.join(", "));
    }
}
