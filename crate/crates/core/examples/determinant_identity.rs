//! The 3x3 block of the reduced linear system and its factored determinant.

use triortho::intersection::{det3, det3_closed, CdParams};
use triortho::scalar::rational;
use triortho::Rational;

fn main() {
    let cd = CdParams::<Rational>::new(rational(3, 2), rational(-2, 7)).expect("c != d");
    for n in 2..=6 {
        let lhs = det3(n, &cd).expect("n >= 2");
        let rhs = det3_closed(n, &cd).expect("n >= 2");
        println!("n={n}: det = {lhs}  closed form agrees: {}", lhs == rhs);
    }
    let on_line = CdParams::<Rational>::new(rational(3, 2), rational(5, 2)).expect("c != d");
    println!("on d = c + 1: closed form = {}", det3_closed(4, &on_line).expect("n >= 2"));
}
