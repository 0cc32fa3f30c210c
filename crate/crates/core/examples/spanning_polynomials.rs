//! Explicit generators of the one-dimensional intersections, checked against the nullspace
//! computation.

use triortho::intersection::{intersect_cd, spanning_case, spanning_poly, CdParams};
use triortho::scalar::rational;
use triortho::Rational;

fn main() {
    let cases = [(3, rational(0, 1), rational(-2, 1)), (3, rational(7, 3), rational(1, 1)), (4, rational(-2, 1), rational(-1, 1)),
        (3, rational(1, 1), rational(0, 1)), (2, rational(5, 2), rational(3, 2)), (1, rational(3, 1), rational(-4, 1))];
    for (n, c, d) in cases {
        let cd = CdParams::<Rational>::new(c, d).expect("c != d");
        let case = spanning_case(n, &cd).expect("one-dimensional case");
        let q = spanning_poly(n, &case).expect("generator");
        let basis = &intersect_cd(n, &cd).expect("intersection").basis[0];
        let ratio = q.coeffs().iter().zip(basis.coeffs()).find(|(_, b)| **b != rational(0, 1)).map(|(a, b)| a / b);
        let same = ratio.is_some_and(|r| basis.scale(&r) == q);
        println!("n={n} (c,d)=({},{}) {}: proportional to nullspace vector = {same}", cd.c, cd.d, case.name());
    }
}
