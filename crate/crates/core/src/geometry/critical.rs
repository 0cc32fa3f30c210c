//! Critical sets of a triangle and the dimension they predict for adjacent-pair intersections.
//!
//! For a counterclockwise triangle `K1 = (A, B, C)` and a fourth vertex `D` across the edge
//! `AB`, the complement spaces of `K1` and `K2 = (B, A, D)` share a nonzero polynomial exactly
//! when `D` lies on one of the critical sets seen from the apex `C`:
//!
//! * the ray from `C` through `A`, beyond `A`;
//! * the ray from `C` through `B`, beyond `B`;
//! * the reflected point `A + B - C` (degree > 2 only);
//! * the line through `2A - C` parallel to `AB` (degree 2 only; it contains the reflected point).

use serde::Serialize;

use super::{orient2d, points_equal, sign_with_tolerance, Point, Triangle, TrianglePatch};
use crate::error::{Error, Result};
use crate::polynomial::BivarPoly;
use crate::polynomial::inner_product;
use crate::scalar::Scalar;

/// Where the fourth vertex sits relative to the critical sets of `K1` seen from its apex.
/// `t` is the position along the set, in the parametrisation given on each variant.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "tag")]
pub enum CriticalClass<T> {
    NonCritical,
    /// `D = C + t (A - C)` with `t > 1`.
    RayBeyondA { t: T },
    /// `D = C + t (B - C)` with `t > 1`.
    RayBeyondB { t: T },
    /// `D = A + B - C`.
    ReflectedPoint,
    /// `D = 2A - C + t (B - A)`; only reported for degree 2.
    QuadraticLine { t: T },
}

impl<T> CriticalClass<T> {
    pub fn is_critical(&self) -> bool {
        !matches!(self, CriticalClass::NonCritical)
    }
}

fn dot<T: Scalar>(u: &Point<T>, v: &Point<T>) -> T {
    u.x.mul_ref(&v.x).add_ref(&u.y.mul_ref(&v.y))
}

/// Classifies `d` against the critical sets of `k1 = (A, B, C)` seen from `C`, where the
/// neighbour is `(B, A, d)`. Requires degree `n >= 2` and `d` strictly across the edge `AB`.
pub fn classify_fourth_vertex<T: Scalar>(
    k1: &Triangle<T>,
    d: &Point<T>,
    n: usize,
) -> Result<CriticalClass<T>> {
    if n < 2 {
        return Err(Error::InvalidDegree(n, "critical sets need degree at least 2"));
    }
    let [a, b, c] = k1.vertices();
    let scale = k1.diameter().max(d.sub(c).norm_sq().to_f64().sqrt());
    let scale2 = scale * scale;
    if sign_with_tolerance(&orient2d(a, b, d), scale2) >= 0 {
        return Err(Error::DegenerateConfiguration(
            "fourth vertex is not strictly across the shared edge".into(),
        ));
    }

    let ray_param = |through: &Point<T>| -> Option<T> {
        if sign_with_tolerance(&orient2d(c, through, d), scale2) != 0 {
            return None;
        }
        let dir = through.sub(c);
        let t = dot(&d.sub(c), &dir) / dir.norm_sq();
        (sign_with_tolerance(&(t.clone() - T::one()), 1.0) >= 0).then_some(t)
    };
    if let Some(t) = ray_param(a) {
        return Ok(CriticalClass::RayBeyondA { t });
    }
    if let Some(t) = ray_param(b) {
        return Ok(CriticalClass::RayBeyondB { t });
    }
    if n == 2 {
        let base = a.scale(&T::from_i64(2)).sub(c);
        let dir = b.sub(a);
        if sign_with_tolerance(&orient2d(&base, &base.add(&dir), d), scale2) == 0 {
            let t = dot(&d.sub(&base), &dir) / dir.norm_sq();
            return Ok(CriticalClass::QuadraticLine { t });
        }
    } else if points_equal(&a.add(b).sub(c), d, scale) {
        return Ok(CriticalClass::ReflectedPoint);
    }
    Ok(CriticalClass::NonCritical)
}

/// Two triangles glued along one edge: `k1 = (a, b, apex1)` counterclockwise and the neighbour
/// `(b, a, apex2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SharedEdge<T> {
    pub a: Point<T>,
    pub b: Point<T>,
    pub apex1: Point<T>,
    pub apex2: Point<T>,
}

impl<T: Scalar> SharedEdge<T> {
    /// The first triangle listed as `(a, b, apex1)`.
    pub fn first(&self) -> Triangle<T> {
        Triangle::new(self.a.clone(), self.b.clone(), self.apex1.clone())
            .expect("shared-edge orientation established on construction")
    }
}

/// Finds the unique common edge of two triangles.
pub fn shared_edge<T: Scalar>(k1: &Triangle<T>, k2: &Triangle<T>) -> Result<SharedEdge<T>> {
    let scale = k1.diameter().max(k2.diameter());
    let matches: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|&(i, j)| points_equal(k1.vertex(i), k2.vertex(j), scale))
        .collect();
    if matches.len() != 2 {
        return Err(Error::NoSharedEdge);
    }
    let (i0, j0) = matches[0];
    let (i1, j1) = matches[1];
    let apex1 = (0..3).find(|i| *i != i0 && *i != i1).expect("three vertices");
    let apex2 = (0..3).find(|j| *j != j0 && *j != j1).expect("three vertices");
    // k1 = (a, b, apex1) counterclockwise means a = vertex(apex1 + 1)
    let a = k1.vertex(apex1 + 1).clone();
    let b = k1.vertex(apex1 + 2).clone();
    Ok(SharedEdge { a, b, apex1: k1.vertex(apex1).clone(), apex2: k2.vertex(apex2).clone() })
}

/// Dimension of the intersection of the two degree-`n` complement spaces predicted from the
/// critical sets. Degree 1 always gives 1. The triangles must share an edge and lie on opposite
/// sides of it.
pub fn predicted_pair_dim<T: Scalar>(k1: &Triangle<T>, k2: &Triangle<T>, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidDegree(0, "complement spaces need degree at least 1"));
    }
    let edge = shared_edge(k1, k2)?;
    let class = classify_fourth_vertex(&edge.first(), &edge.apex2, n.max(2))?;
    if n == 1 {
        return Ok(1);
    }
    Ok(usize::from(class.is_critical()))
}

/// Outcome of the search for three consecutive patch triangles with non-collinear barycenters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollinearityWitness {
    pub exists_noncollinear_triple: bool,
    /// Index `i` such that the barycenters of triangles `i - 1`, `i`, `i + 1` are not collinear.
    pub witness: Option<usize>,
}

/// Looks for consecutive triangles whose barycenters are not collinear.
pub fn barycenters_collinear<T: Scalar>(patch: &TrianglePatch<T>) -> Result<CollinearityWitness> {
    let triangles = patch.triangles()?;
    let q = triangles.len();
    let centers: Vec<Point<T>> = triangles.iter().map(Triangle::barycenter).collect();
    let scale = patch.diameter();
    let witness = (0..q).find(|&i| {
        let prev = &centers[(i + q - 1) % q];
        let next = &centers[(i + 1) % q];
        sign_with_tolerance(&orient2d(prev, &centers[i], next), scale * scale) != 0
    });
    Ok(CollinearityWitness { exists_noncollinear_triple: witness.is_some(), witness })
}

/// Returns `((p, 1)_K, p(M) (1, 1)_K)` for affine `p` and the barycenter `M` of `K`; the two
/// agree because the bubble weight is symmetric in the barycentric coordinates.
pub fn barycenter_mean_check<T: Scalar>(k: &Triangle<T>, p: &BivarPoly<T>) -> Result<(T, T)> {
    if p.degree() > 1 {
        return Err(Error::InvalidDegree(p.degree(), "expected an affine polynomial"));
    }
    let one = BivarPoly::constant(T::one());
    let lhs = inner_product(p, &one, k);
    let rhs = p.eval_at(&k.barycenter()) * inner_product(&one, &one, k);
    Ok((lhs, rhs))
}

/// The pair `(c', d')` for which the degree-1 spanning polynomial of `K_{c',d'}`, with `x` and
/// `y` swapped, equals `k` times the one of `K_{c,d}`.
pub fn swapped_linear_partner<T: Scalar>(c: &T, d: &T, k: &T) -> (T, T) {
    let one = T::one();
    let c2 = k.mul_ref(&c.sub_ref(d).add_ref(&one));
    let d2 = k.mul_ref(&one.sub_ref(d)).add_ref(&one);
    (c2, d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AffineMap;
    use crate::scalar::{rational, Rational};
    use proptest::prelude::*;

    type Q = Rational;

    fn pt(x: i64, y: i64) -> Point<Q> {
        Point::from_ints(x, y)
    }

    #[test]
    fn classification_examples() {
        let t1 = Triangle::<Q>::unit();
        assert_eq!(
            classify_fourth_vertex(&t1, &pt(0, -1), 3).unwrap(),
            CriticalClass::RayBeyondA { t: Q::from_i64(2) }
        );
        assert_eq!(classify_fourth_vertex(&t1, &pt(1, -1), 3).unwrap(), CriticalClass::ReflectedPoint);
        assert_eq!(
            classify_fourth_vertex(&t1, &pt(2, -1), 4).unwrap(),
            CriticalClass::RayBeyondB { t: Q::from_i64(2) }
        );
        let d = Point::new(rational(7, 3), Q::from_i64(-1));
        assert_eq!(
            classify_fourth_vertex(&t1, &d, 2).unwrap(),
            CriticalClass::QuadraticLine { t: rational(7, 3) }
        );
        assert_eq!(classify_fourth_vertex(&t1, &d, 3).unwrap(), CriticalClass::NonCritical);
        assert_eq!(classify_fourth_vertex(&t1, &pt(3, -1), 3).unwrap(), CriticalClass::NonCritical);
        assert!(classify_fourth_vertex(&t1, &pt(1, 1), 3).is_err());
        assert!(classify_fourth_vertex(&t1, &pt(0, -1), 1).is_err());
    }

    #[test]
    fn shared_edge_orientation() {
        let t1 = Triangle::<Q>::unit();
        let k2 = Triangle::new(pt(1, 0), pt(0, 0), pt(0, -1)).unwrap();
        let e = shared_edge(&k2, &t1).unwrap();
        assert_eq!((e.a, e.b, e.apex1, e.apex2), (pt(1, 0), pt(0, 0), pt(0, -1), pt(0, 1)));
        let far = Triangle::new(pt(5, 5), pt(6, 5), pt(5, 6)).unwrap();
        assert_eq!(shared_edge(&t1, &far), Err(Error::NoSharedEdge));
    }

    #[test]
    fn predicted_dims() {
        let t1 = Triangle::<Q>::unit();
        let generic = Triangle::new(pt(1, 0), pt(0, 0), Point::new(rational(1, 3), Q::from_i64(-2)))
            .unwrap();
        assert_eq!(predicted_pair_dim(&t1, &generic, 3).unwrap(), 0);
        assert_eq!(predicted_pair_dim(&t1, &generic, 1).unwrap(), 1);
        let on_ray = Triangle::new(pt(1, 0), pt(0, 0), pt(0, -3)).unwrap();
        assert_eq!(predicted_pair_dim(&t1, &on_ray, 4).unwrap(), 1);
    }

    #[test]
    fn barycenter_mean_on_unit_triangle() {
        let (lhs, rhs) = barycenter_mean_check(&Triangle::<Q>::unit(), &BivarPoly::x()).unwrap();
        assert_eq!(lhs, rational(1, 360));
        assert_eq!(rhs, rational(1, 360));
    }

    #[test]
    fn collinearity_witness_on_square_fan() {
        let patch = TrianglePatch::new(pt(0, 0), vec![pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1)]);
        let w = barycenters_collinear(&patch).unwrap();
        assert!(w.exists_noncollinear_triple);
    }

    fn invertible_map() -> impl Strategy<Value = AffineMap<Q>> {
        prop::array::uniform6(-4i64..5)
            .prop_filter("orientation preserving", |a| a[0] * a[3] - a[1] * a[2] > 0)
            .prop_map(|a| {
                AffineMap::new(
                    [[Q::from_i64(a[0]), Q::from_i64(a[1])], [Q::from_i64(a[2]), Q::from_i64(a[3])]],
                    [rational(a[4], 7), rational(a[5], 5)],
                )
                .unwrap()
            })
    }

    fn candidate_vertex() -> impl Strategy<Value = Point<Q>> {
        prop_oneof![
            (-6i64..7, -6i64..0).prop_map(|(x, y)| Point::new(rational(x, 2), Q::from_i64(y))),
            (2i64..8).prop_map(|t| Point::new(Q::from_i64(0), Q::from_i64(1 - t))),
            (2i64..8).prop_map(|t| Point::new(Q::from_i64(t), Q::from_i64(1 - t))),
            Just(Point::from_ints(1, -1)),
        ]
    }

    proptest! {
        #[test]
        fn classification_is_affine_invariant(map in invertible_map(), d in candidate_vertex(), n in 2usize..5) {
            let t1 = Triangle::<Q>::unit();
            let mapped = Triangle::new(
                map.apply(t1.vertex(0)),
                map.apply(t1.vertex(1)),
                map.apply(t1.vertex(2)),
            ).unwrap();
            let before = classify_fourth_vertex(&t1, &d, n).unwrap();
            let after = classify_fourth_vertex(&mapped, &map.apply(&d), n).unwrap();
            prop_assert_eq!(before, after);
        }
    }
}
