//! Classifies candidate fourth vertices against the critical sets of the reference triangle.

use triortho::geometry::{classify_fourth_vertex, CriticalClass, Point, Triangle};
use triortho::scalar::rational;
use triortho::Rational;

fn main() {
    // K1 = (A, B, C) = ((0,0), (1,0), (0,1)); the neighbour lies below the x axis
    let k1 = Triangle::<Rational>::unit();
    let candidates = [
        Point::new(rational(3, 1), rational(-2, 1)),
        Point::new(rational(0, 1), rational(-5, 2)),
        Point::new(rational(1, 1), rational(-1, 1)),
        Point::new(rational(1, 2), rational(-1, 1)),
        Point::new(rational(1, 3), rational(-1, 4)),
    ];
    for n in [2, 3] {
        for d in &candidates {
            let class = classify_fourth_vertex(&k1, d, n).expect("across the edge");
            let label = match class {
                CriticalClass::NonCritical => "not critical".to_string(),
                CriticalClass::RayBeyondA { t } => format!("on the ray through A, t = {t}"),
                CriticalClass::RayBeyondB { t } => format!("on the ray through B, t = {t}"),
                CriticalClass::ReflectedPoint => "the reflected point A + B - C".to_string(),
                CriticalClass::QuadraticLine { t } => format!("on the degree-2 line, t = {t}"),
            };
            println!("n={n} D=({}, {}): {label}", d.x, d.y);
        }
    }
}
