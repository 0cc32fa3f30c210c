//! Points, oriented triangles, affine maps, triangle patches and the critical-set machinery for
//! adjacent triangle pairs.

mod critical;
mod patch;

pub use critical::{
    barycenters_collinear, classify_fourth_vertex, barycenter_mean_check, predicted_pair_dim,
    swapped_linear_partner, shared_edge, CollinearityWitness, CriticalClass, SharedEdge,
};
pub use patch::{random_patch, validate_patch, TrianglePatch, Violation};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Relative tolerance for float-mode geometric predicates, scaled by the configuration diameter.
pub const FLOAT_GEOMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(T::from_i64(x), T::from_i64(y))
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Point::new(self.x.add_ref(&o.x), self.y.add_ref(&o.y))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point::new(self.x.sub_ref(&o.x), self.y.sub_ref(&o.y))
    }

    pub fn scale(&self, s: &T) -> Self {
        Point::new(self.x.mul_ref(s), self.y.mul_ref(s))
    }

    pub fn norm_sq(&self) -> T {
        self.x.mul_ref(&self.x).add_ref(&self.y.mul_ref(&self.y))
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl Point<Rational> {
    pub fn to_scalar<U: Scalar>(&self) -> Point<U> {
        Point::new(U::from_rational(&self.x), U::from_rational(&self.y))
    }
}

/// Twice the signed area of `(a, b, c)`; positive for counterclockwise order.
pub fn orient2d<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> T {
    let ab = b.sub(a);
    let ac = c.sub(a);
    ab.x.mul_ref(&ac.y).sub_ref(&ab.y.mul_ref(&ac.x))
}

/// Sign of `value` with a float dead zone of `FLOAT_GEOMETRY_TOL * scale`; exact mode uses the
/// true sign.
pub fn sign_with_tolerance<T: Scalar>(value: &T, scale: f64) -> i8 {
    if T::is_exact() {
        if value.is_positive() {
            1
        } else if value.is_negative() {
            -1
        } else {
            0
        }
    } else {
        let v = value.to_f64();
        let tol = FLOAT_GEOMETRY_TOL * scale.max(f64::MIN_POSITIVE);
        if v > tol {
            1
        } else if v < -tol {
            -1
        } else {
            0
        }
    }
}

pub fn points_equal<T: Scalar>(a: &Point<T>, b: &Point<T>, scale: f64) -> bool {
    let d = a.sub(b);
    sign_with_tolerance(&d.x, scale) == 0 && sign_with_tolerance(&d.y, scale) == 0
}

/// Open triangle with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Triangle<T> {
    vertices: [Point<T>; 3],
}

impl<T: Scalar> Triangle<T> {
    pub fn new(a: Point<T>, b: Point<T>, c: Point<T>) -> Result<Self> {
        let area2 = orient2d(&a, &b, &c);
        if area2.is_zero() {
            return Err(Error::DegenerateTriangle);
        }
        if area2.is_negative() {
            return Err(Error::ClockwiseTriangle);
        }
        Ok(Triangle { vertices: [a, b, c] })
    }

    /// Builds the triangle from vertices in either orientation, reordering to counterclockwise.
    pub fn from_unordered(a: Point<T>, b: Point<T>, c: Point<T>) -> Result<Self> {
        let area2 = orient2d(&a, &b, &c);
        if area2.is_zero() {
            Err(Error::DegenerateTriangle)
        } else if area2.is_negative() {
            Ok(Triangle { vertices: [a, c, b] })
        } else {
            Ok(Triangle { vertices: [a, b, c] })
        }
    }

    /// The open unit triangle `T1` with vertices `(0,0), (1,0), (0,1)`.
    pub fn unit() -> Self {
        Triangle {
            vertices: [Point::from_ints(0, 0), Point::from_ints(1, 0), Point::from_ints(0, 1)],
        }
    }

    pub fn vertices(&self) -> &[Point<T>; 3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point<T> {
        &self.vertices[i % 3]
    }

    pub fn area(&self) -> T {
        orient2d(&self.vertices[0], &self.vertices[1], &self.vertices[2]) / T::from_i64(2)
    }

    pub fn barycenter(&self) -> Point<T> {
        let three = T::from_i64(3);
        let s = self.vertices[0].add(&self.vertices[1]).add(&self.vertices[2]);
        Point::new(s.x / three.clone(), s.y / three)
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        [(0, 1), (1, 2), (0, 2)]
            .iter()
            .map(|&(i, j)| v[i].sub(&v[j]).norm_sq().to_f64().sqrt())
            .fold(0.0, f64::max)
    }

    /// The affine map sending `T1`'s vertices `(0,0), (1,0), (0,1)` to this triangle's vertices
    /// in order. Orientation preserving.
    pub fn reference_map(&self) -> AffineMap<T> {
        let [a, b, c] = &self.vertices;
        let e1 = b.sub(a);
        let e2 = c.sub(a);
        AffineMap::new([[e1.x, e2.x], [e1.y, e2.y]], [a.x.clone(), a.y.clone()])
            .expect("nondegenerate triangle has an invertible reference map")
    }

    /// Triangle with vertices cyclically rotated so that `vertex(start)` comes first.
    pub fn rotated(&self, start: usize) -> Self {
        let v = &self.vertices;
        Triangle {
            vertices: [v[start % 3].clone(), v[(start + 1) % 3].clone(), v[(start + 2) % 3].clone()],
        }
    }

    pub fn map(&self, f: &AffineMap<T>) -> Result<Self> {
        let [a, b, c] = &self.vertices;
        Triangle::from_unordered(f.apply(a), f.apply(b), f.apply(c))
    }

    pub fn to_f64(&self) -> Triangle<f64> {
        Triangle { vertices: self.vertices.clone().map(|p| p.to_f64()) }
    }
}

impl Triangle<Rational> {
    pub fn to_scalar<U: Scalar>(&self) -> Triangle<U> {
        Triangle { vertices: self.vertices.clone().map(|p| p.to_scalar()) }
    }
}

/// Whether the open interiors of two triangles intersect (separating-axis test).
pub fn triangles_overlap<T: Scalar>(a: &Triangle<T>, b: &Triangle<T>) -> bool {
    let scale = a.diameter().max(b.diameter());
    let scale2 = scale * scale;
    let separated_by_edges_of = |s: &Triangle<T>, t: &Triangle<T>| {
        (0..3).any(|i| {
            let p = s.vertex(i);
            let q = s.vertex(i + 1);
            // s lies on the left of its ccw edges; t separated if it lies weakly on the right
            t.vertices()
                .iter()
                .all(|v| sign_with_tolerance(&orient2d(p, q, v), scale2) <= 0)
        })
    };
    !(separated_by_edges_of(a, b) || separated_by_edges_of(b, a))
}

/// Invertible affine map `p -> linear * p + shift`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<T> {
    linear: [[T; 2]; 2],
    shift: [T; 2],
}

impl<T: Scalar> AffineMap<T> {
    pub fn new(linear: [[T; 2]; 2], shift: [T; 2]) -> Result<Self> {
        let m = AffineMap { linear, shift };
        if m.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        AffineMap {
            linear: [[T::one(), T::zero()], [T::zero(), T::one()]],
            shift: [T::zero(), T::zero()],
        }
    }

    pub fn linear(&self) -> &[[T; 2]; 2] {
        &self.linear
    }

    pub fn shift(&self) -> &[T; 2] {
        &self.shift
    }

    pub fn det(&self) -> T {
        let l = &self.linear;
        l[0][0].mul_ref(&l[1][1]).sub_ref(&l[0][1].mul_ref(&l[1][0]))
    }

    pub fn apply(&self, p: &Point<T>) -> Point<T> {
        let l = &self.linear;
        Point::new(
            l[0][0].mul_ref(&p.x).add_ref(&l[0][1].mul_ref(&p.y)).add_ref(&self.shift[0]),
            l[1][0].mul_ref(&p.x).add_ref(&l[1][1].mul_ref(&p.y)).add_ref(&self.shift[1]),
        )
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        let l = &self.linear;
        let inv = [
            [l[1][1].clone() / det.clone(), -(l[0][1].clone() / det.clone())],
            [-(l[1][0].clone() / det.clone()), l[0][0].clone() / det],
        ];
        let shift = [
            -(inv[0][0].mul_ref(&self.shift[0]).add_ref(&inv[0][1].mul_ref(&self.shift[1]))),
            -(inv[1][0].mul_ref(&self.shift[0]).add_ref(&inv[1][1].mul_ref(&self.shift[1]))),
        ];
        AffineMap { linear: inv, shift }
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Self {
        let a = &self.linear;
        let b = &inner.linear;
        let entry = |i: usize, j: usize| a[i][0].mul_ref(&b[0][j]).add_ref(&a[i][1].mul_ref(&b[1][j]));
        let linear = [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]];
        let s = self.apply(&Point::new(inner.shift[0].clone(), inner.shift[1].clone()));
        AffineMap { linear, shift: [s.x, s.y] }
    }

    /// The unique affine map sending `src`'s vertices to `dst`'s vertices in order.
    pub fn between(src: &Triangle<T>, dst: &Triangle<T>) -> Self {
        dst.reference_map().compose(&src.reference_map().inverse())
    }

    /// Map determined by three point correspondences `from[i] -> to[i]`.
    pub fn from_points(from: [&Point<T>; 3], to: [&Point<T>; 3]) -> Result<Self> {
        let frame = |p: [&Point<T>; 3]| {
            let e1 = p[1].sub(p[0]);
            let e2 = p[2].sub(p[0]);
            AffineMap::new([[e1.x, e2.x], [e1.y, e2.y]], [p[0].x.clone(), p[0].y.clone()])
        };
        Ok(frame(to)?.compose(&frame(from)?.inverse()))
    }

    pub fn translation(dx: T, dy: T) -> Self {
        AffineMap { shift: [dx, dy], ..Self::identity() }
    }

    pub fn scaling(s: T) -> Result<Self> {
        Self::new([[s.clone(), T::zero()], [T::zero(), s]], [T::zero(), T::zero()])
    }
}

impl AffineMap<f64> {
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        AffineMap { linear: [[c, -s], [s, c]], shift: [0.0, 0.0] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::scalar::rational;

    fn pt(x: i64, y: i64) -> Point<Rational> {
        Point::from_ints(x, y)
    }

    #[test]
    fn orientation_is_enforced() {
        assert!(Triangle::new(pt(0, 0), pt(1, 0), pt(0, 1)).is_ok());
        assert_eq!(
            Triangle::new(pt(0, 0), pt(0, 1), pt(1, 0)),
            Err(Error::ClockwiseTriangle)
        );
        assert_eq!(
            Triangle::new(pt(0, 0), pt(1, 1), pt(2, 2)),
            Err(Error::DegenerateTriangle)
        );
        let t = Triangle::from_unordered(pt(0, 0), pt(0, 1), pt(1, 0)).unwrap();
        assert!(orient2d(t.vertex(0), t.vertex(1), t.vertex(2)).is_positive());
    }

    #[test]
    fn reference_map_hits_vertices() {
        let k = Triangle::new(pt(2, 1), pt(5, 2), pt(1, 4)).unwrap();
        let m = k.reference_map();
        assert_eq!(m.apply(&pt(0, 0)), pt(2, 1));
        assert_eq!(m.apply(&pt(1, 0)), pt(5, 2));
        assert_eq!(m.apply(&pt(0, 1)), pt(1, 4));
        let inv = m.inverse();
        assert_eq!(inv.apply(&pt(5, 2)), pt(1, 0));
        assert_eq!(m.compose(&inv), AffineMap::identity());
    }

    #[test]
    fn singular_map_rejected() {
        let one = Rational::from_i64(1);
        let zero = Rational::from_i64(0);
        assert_eq!(
            AffineMap::new([[one.clone(), one.clone()], [one.clone(), one]], [zero.clone(), zero]),
            Err(Error::SingularMap)
        );
    }

    #[test]
    fn overlap_predicate() {
        let t1 = Triangle::<Rational>::unit();
        let below = Triangle::new(pt(0, 0), pt(1, -1), pt(1, 0)).unwrap();
        let shifted = Triangle::new(
            Point::new(rational(1, 4), rational(1, 4)),
            pt(2, 0),
            pt(0, 2),
        )
        .unwrap();
        assert!(!triangles_overlap(&t1, &below));
        assert!(triangles_overlap(&t1, &shifted));
        assert!(triangles_overlap(&t1, &t1));
    }

    #[test]
    fn barycenter_and_area() {
        let k = Triangle::new(pt(0, 0), pt(3, 0), pt(0, 3)).unwrap();
        assert_eq!(k.area(), rational(9, 2));
        assert_eq!(k.barycenter(), pt(1, 1));
    }
}
