//! The degree-3 complement space of a world triangle, i.e. the polynomials of degree 3
//! orthogonal to everything of degree 2, and a spot check of the orthogonality.

use triortho::geometry::{Point, Triangle};
use triortho::orthobasis::complement_basis;
use triortho::polynomial::{inner_product, BivarPoly};
use triortho::{Rational, Scalar};

fn main() {
    let k = Triangle::from_unordered(Point::from_ints(2, 1), Point::from_ints(-1, 3), Point::from_ints(0, -2))
        .expect("nondegenerate");
    let basis = complement_basis::<Rational>(3, &k);
    for (i, p) in basis.polys.iter().enumerate() {
        let against_xy = inner_product(p, &BivarPoly::monomial(1, 1, Rational::from_i64(1)), &k);
        println!("member {i}: degree {}, (p, xy)_K = {against_xy}", p.degree());
    }
    println!("coefficient matrix rank: {}", basis.coefficient_matrix().rank());
}
