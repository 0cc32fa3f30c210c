//! Prints low-degree Jacobi polynomials `P_n^(1,3)` and checks their value at `x = 1`.

use triortho::jacobi::{jacobi_eval, jacobi_poly, JacobiParams};
use triortho::{Rational, Scalar};

fn main() {
    for n in 0..=4 {
        let params = JacobiParams::<Rational>::ints(1, 3, n).expect("valid parameters");
        let coeffs: Vec<String> = jacobi_poly(&params).coeffs().iter().map(|c| c.to_string()).collect();
        let at_one = jacobi_eval(&params, &Rational::from_i64(1));
        println!("P_{n}^(1,3): [{}]  value at 1 = {at_one}", coeffs.join(", "));
    }
}
