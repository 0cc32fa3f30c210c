//! Independent oracles for the intersection dimensions and the 3×3 block.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triortho::geometry::{orient2d, predicted_pair_dim, Point, Triangle};
use triortho::intersection::{det3_matrix, intersect_pair, predicted_cd_dim, CdParams};
use triortho::jacobi::shifted_factorial;
use triortho::linalg::Matrix;
use triortho::polynomial::{inner_product, monomial_count, monomial_exponents, BivarPoly};
use triortho::scalar::{factorial, rational, Rational};

type Q = Rational;

fn rand_q<R: Rng>(r: &mut R, span: i64) -> Q {
    let den = r.gen_range(1..=9);
    rational(r.gen_range(-span * den..=span * den), den)
}

/// Nullity of the moment system `(q, x^r y^m)_K = 0` over both triangles and all `r + m < n`,
/// with `q` in the monomial basis of degree `n`.
fn moment_nullity(n: usize, ks: &[&Triangle<Q>]) -> usize {
    let cols = monomial_count(n);
    let tests = monomial_count(n - 1);
    let mono = |i: usize| {
        let (r, m) = monomial_exponents(i);
        BivarPoly::monomial(r, m, Q::one())
    };
    let mut rows = Vec::new();
    for k in ks {
        for i in 0..tests {
            rows.push((0..cols).map(|j| inner_product(&mono(j), &mono(i), k)).collect::<Vec<_>>());
        }
    }
    let m = Matrix::from_fn(rows.len(), cols, |i, j| rows[i][j].clone());
    cols - m.rank()
}

#[test]
fn moment_system_matches_intersection_on_random_pairs() {
    let mut r = ChaCha8Rng::seed_from_u64(41);
    let mut pairs = 0;
    let mut nonzero = 0;
    while pairs < 120 {
        let pts: Vec<Point<Q>> = (0..3).map(|_| Point::new(rand_q(&mut r, 2), rand_q(&mut r, 2))).collect();
        if orient2d(&pts[0], &pts[1], &pts[2]) <= Q::zero() {
            continue;
        }
        let ka = Triangle::new(pts[0].clone(), pts[1].clone(), pts[2].clone()).unwrap();
        let t = rand_q(&mut r, 3);
        let (c, d) = match pairs % 4 {
            0 => (Q::zero(), -Q::one() - t.clone() * t.clone()),
            1 => (Q::from_integer(2.into()) + t.clone() * t.clone(), Q::one()),
            2 => (Q::one(), Q::zero()),
            _ => (t.clone(), t - Q::one() - rational(1, 3)),
        };
        let Ok(p) = CdParams::new(c, d) else { continue };
        if !p.disjoint_from_unit() {
            continue;
        }
        let far = ka.reference_map().apply(&p.third_vertex());
        let kb = Triangle::new(pts[1].clone(), pts[0].clone(), far).unwrap();
        pairs += 1;
        for n in 1..=3 {
            let oracle = moment_nullity(n, &[&ka, &kb]);
            nonzero += usize::from(oracle > 0);
            assert_eq!(intersect_pair(n, &ka, &kb).unwrap().dim, oracle, "n={n} c={} d={}", p.c, p.d);
            assert_eq!(predicted_pair_dim(&ka, &kb, n).unwrap(), oracle);
            assert_eq!(predicted_cd_dim(n, &p), oracle);
        }
    }
    assert!(nonzero > 100, "critical placements should give nonzero intersections: {nonzero}");
}

#[test]
fn moment_system_on_reference_pair_is_full_for_identical_triangles() {
    let t1 = Triangle::<Q>::unit();
    for n in 1..=4 {
        assert_eq!(moment_nullity(n, &[&t1, &t1]), n + 1);
    }
}

fn f(n: usize) -> Q {
    Q::from_integer(factorial(n))
}

fn sign(n: usize) -> Q {
    if n.is_multiple_of(2) { Q::one() } else { -Q::one() }
}

/// The three equations in `α_n, α_{n-1}, α_{n-2}`, entry by entry as tabulated by hand.
fn tabulated_block(n: usize, c: &Q, d: &Q) -> [[Q; 3]; 3] {
    let i = |v: i64| Q::from_integer(v.into());
    let nn = i(n as i64);
    let s = sign(n);
    let one = Q::one();
    let half = rational(1, 2);
    let two_pow = Q::from_integer(num_bigint::BigInt::from(2).pow(2 * n as u32 - 1));
    let row0 = [
        -s.clone() * (c + d - &one) * f(2 * n + 1) / (f(n - 1) * f(n + 2)),
        i(2) * s.clone() * (c - d + &one) * (&nn + i(2)) * f(2 * n - 1) / (f(n - 1) * f(n + 1)),
        Q::zero(),
    ];
    let row1 = [
        s.clone() * (c + (c + d - &one) * &nn) * f(2 * n) / (f(n - 2) * f(n + 2)),
        -s.clone() * two_pow * (c * (&nn + &one) - (d - &one) * (&nn + i(3))) * shifted_factorial(&half, n)
            / (&nn * (&nn + &one) * f(n - 2)),
        -i(2) * s.clone() * (c - d + &one) * (i(2) * &nn + i(3)) * f(2 * n - 3) / (f(n - 2) * f(n)),
    ];
    let cd = c + d;
    let cmd = c - d;
    let row2 = [
        -s.clone() * (i(2) * c * d + (&cd * &cd - &one) * &nn) * f(2 * n) / (i(2) * f(n - 2) * f(n + 2)),
        s.clone() * (c * c - d * d + &one) * (&nn + i(2)) * f(2 * n - 1) / (f(n - 2) * f(n + 1)),
        -i(2) * s * (&cmd * &cmd - &one) * (&nn + i(2)) * (i(2) * &nn + i(3)) * f(2 * n - 3)
            / (i(3) * f(n - 2) * f(n)),
    ];
    [row0, row1, row2]
}

#[test]
fn three_by_three_block_matches_tabulated_entries() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let (c, d) = (rand_q(&mut r, 3), rand_q(&mut r, 3));
        let Ok(p) = CdParams::new(c.clone(), d.clone()) else { continue };
        for n in 2..=6 {
            let m = det3_matrix(n, &p).unwrap();
            let want = tabulated_block(n, &c, &d);
            for (i, row) in want.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(&m.row(i)[j], v, "n={n} entry ({i},{j}) at c={c} d={d}");
                }
            }
        }
    }
}
