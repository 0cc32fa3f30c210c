//! Intersection dimensions for the reference triangle and its neighbours `K_{c,d}`, computed
//! exactly and compared with the closed-form classification.

use triortho::geometry::Triangle;
use triortho::intersection::{intersect_pair, predicted_cd_dim, CdParams};
use triortho::scalar::rational;
use triortho::Rational;

fn main() {
    let points = [(rational(1, 2), rational(-3, 1)), (rational(0, 1), rational(-2, 1)), (rational(5, 2), rational(1, 1)),
        (rational(1, 1), rational(0, 1)), (rational(3, 1), rational(2, 1)), (rational(-1, 2), rational(1, 2))];
    for n in 1..=4 {
        for (c, d) in &points {
            let cd = CdParams::<Rational>::new(c.clone(), d.clone()).expect("c != d");
            let got = intersect_pair(n, &Triangle::unit(), &cd.triangle()).expect("intersection");
            println!(
                "n={n} (c,d)=({c},{d}): dim {} predicted {}{}",
                got.dim,
                predicted_cd_dim(n, &cd),
                if got.geometrically_invalid { "  [overlapping]" } else { "" }
            );
        }
    }
}
