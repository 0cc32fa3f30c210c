//! The three projection constants on a square fan, and the patch-free `c''_n` table.

use triortho::geometry::{Point, TrianglePatch};
use triortho::projection::{c_doubleprime, c_doubleprime_zero, constants};
use triortho::Rational;

fn main() {
    let square = TrianglePatch::<Rational>::new(
        Point::from_ints(0, 0),
        vec![Point::from_ints(1, 0), Point::from_ints(0, 1), Point::from_ints(-1, 0), Point::from_ints(0, -1)],
    );
    for n in 1..=3 {
        let r = constants(&square, n).expect("valid patch");
        println!(
            "n={n}: c' = {:.6e}  c'' = {:.6e}  c-check = {:.6e}  (c-check >= c'' c': {})",
            r.c_prime, r.c_doubleprime, r.c_check, r.inequality_holds(1e-8)
        );
    }
    println!("c''_0 = {}", c_doubleprime_zero());
    for n in 0..=8 {
        let v = c_doubleprime(n);
        println!("n={n}: c''_n = {v:.6e}  (n+1)^4 c''_n = {:.4}", (n as f64 + 1.0).powi(4) * v);
    }
}
