//! Builds the bubble-weighted Proriol family on the reference triangle and prints its Gram
//! matrix, which comes out diagonal.

use triortho::orthobasis::{proriol, TriangleWeights};
use triortho::polynomial::BivarPoly;
use triortho::Rational;

fn main() {
    let w = TriangleWeights::<Rational>::bubble();
    let family: Vec<(usize, usize, BivarPoly<Rational>)> = (0..=2)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .map(|(n, k)| (n, k, proriol(n, k, &w).expect("proriol")))
        .collect();
    for (n, k, p) in &family {
        let row: Vec<String> = family
            .iter()
            .map(|(_, _, q)| (p * q).integrate_t1_bubble().to_string())
            .collect();
        println!("P_({n},{k}) | {}", row.join("  "));
    }
}
