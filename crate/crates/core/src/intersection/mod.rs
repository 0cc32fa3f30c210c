//! Intersections of complement spaces `P⊥_{n-1}(K)` across triangles.
//!
//! The general routines work on coefficient matrices: stacking the bases of two spaces as
//! `[B_A | -B_B]`, every nullspace vector `(α, β)` gives the common element `B_A α`. The
//! adjacent-pair family `K_{c,d}` (glued to `T1` along the edge from `(0,0)` to `(1,0)`) has its
//! own closed-form machinery in [`coefficients`] and [`spanning`].

pub mod coefficients;
pub mod spanning;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{shared_edge, triangles_overlap, AffineMap, Point, Triangle};
use crate::linalg::Matrix;
use crate::orthobasis::complement_basis;
use crate::polynomial::{monomial_count, BivarPoly};
use crate::scalar::{Mode, Scalar};

pub use coefficients::{
    below_diagonal_alphas, det3, det3_closed, det3_matrix, f_coefficient, f_diagonal_closed,
    f_superdiagonal_closed, reduced_system,
};
pub use spanning::{spanning_case, spanning_poly, SpanningCase};

/// The neighbour `K_{c,d}` of `T1` with vertices `(1,0)`, `(0,0)` and
/// `(-c/(d-c), 1/(d-c))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CdParams<T> {
    pub c: T,
    pub d: T,
}

impl<T: Scalar> CdParams<T> {
    pub fn new(c: T, d: T) -> Result<Self> {
        if c == d {
            return Err(Error::DegenerateConfiguration("c = d has no triangle".into()));
        }
        Ok(CdParams { c, d })
    }

    pub fn ints(c: i64, d: i64) -> Result<Self> {
        Self::new(T::from_i64(c), T::from_i64(d))
    }

    pub fn third_vertex(&self) -> Point<T> {
        let w = self.d.sub_ref(&self.c);
        Point::new(-(self.c.clone() / w.clone()), T::one() / w)
    }

    /// `K_{c,d}` with counterclockwise vertices.
    pub fn triangle(&self) -> Triangle<T> {
        Triangle::from_unordered(Point::from_ints(1, 0), Point::origin(), self.third_vertex())
            .expect("c != d gives a nondegenerate triangle")
    }

    /// `(x, y) -> (x + c y, (d - c) y)`, carrying `K_{c,d}` onto `T1`.
    pub fn to_reference(&self) -> AffineMap<T> {
        AffineMap::new(
            [[T::one(), self.c.clone()], [T::zero(), self.d.sub_ref(&self.c)]],
            [T::zero(), T::zero()],
        )
        .expect("c != d gives an invertible map")
    }

    /// `K_{c,d}` lies across the shared edge from `T1` exactly when `d < c`.
    pub fn disjoint_from_unit(&self) -> bool {
        self.d < self.c
    }
}

/// Dimension of `P⊥_{n-1}(T1) ∩ P⊥_{n-1}(K_{c,d})` as classified in closed form.
///
/// * `(c, d) = (0, 1)` is `T1` itself: `n + 1`.
/// * `n = 1`: 1.
/// * `n = 2`: 1 on `c = 0`, `d = 1`, `d - c = ±1`; else 0.
/// * `n > 2`: 1 on `c = 0`, `d = 1`, `d - c = 1` and at `(1, 0)`; else 0.
pub fn predicted_cd_dim<T: Scalar>(n: usize, cd: &CdParams<T>) -> usize {
    let (c, d) = (&cd.c, &cd.d);
    let one = T::one();
    if c.is_zero() && *d == one {
        return n + 1;
    }
    if n == 1 {
        return 1;
    }
    let diff = d.sub_ref(c);
    let base = c.is_zero() || *d == one || diff == one;
    let extra = if n == 2 { diff == -one } else { *c == T::one() && d.is_zero() };
    usize::from(base || extra)
}

/// Reads `(c, d)` off an adjacent pair: the orientation-preserving affine map sending
/// `ka = (A, B, C)` to `T1`, with the shared edge `AB` onto `(0,0)-(1,0)` and `C` to `(0,1)`,
/// sends the far vertex of `kb` to `D = (Dx, Dy)`; then `c = -Dx/Dy`, `d = c + 1/Dy`.
pub fn cd_from_pair<T: Scalar>(ka: &Triangle<T>, kb: &Triangle<T>) -> Result<CdParams<T>> {
    let edge = shared_edge(ka, kb)?;
    let to_unit = edge.first().reference_map().inverse();
    let d_img = to_unit.apply(&edge.apex2);
    if d_img.y.is_zero() {
        return Err(Error::DegenerateConfiguration("far vertex lies on the shared edge line".into()));
    }
    let c = -(d_img.x / d_img.y.clone());
    let d = c.add_ref(&(T::one() / d_img.y));
    CdParams::new(c, d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionResult<T: Scalar> {
    pub dim: usize,
    pub basis: Vec<BivarPoly<T>>,
    pub mode: Mode,
    /// Pivot threshold used for the last float rank decision; `None` in exact mode.
    pub rank_tolerance: Option<f64>,
    /// Set when some participating triangles overlap (the algebra is still carried out).
    pub geometrically_invalid: bool,
}

/// Intersects the column spans of the given coefficient matrices (all with
/// `monomial_count(n)` rows). Returns a basis of the intersection as columns.
fn intersect_spans<T: Scalar>(spans: &[Matrix<T>]) -> (Matrix<T>, Option<f64>) {
    let mut current = spans[0].clone();
    let mut tolerance = None;
    for next in &spans[1..] {
        if current.cols() == 0 {
            break;
        }
        let mut negated = next.clone();
        negated.scale_in_place(&-T::one());
        let reduction = current.hstack(&negated).reduce();
        if !T::is_exact() {
            tolerance = Some(reduction.tolerance);
        }
        let k = current.cols();
        let alphas: Vec<Vec<T>> =
            reduction.nullspace.iter().map(|v| v[..k].to_vec()).collect();
        let columns: Vec<Vec<T>> = alphas
            .iter()
            .map(|a| {
                let col = current.mul_vec(a);
                if T::is_exact() {
                    col
                } else {
                    normalize_max_abs(col)
                }
            })
            .collect();
        current = Matrix::from_columns(current.rows(), &columns);
    }
    (current, tolerance)
}

fn normalize_max_abs<T: Scalar>(v: Vec<T>) -> Vec<T> {
    let m = v.iter().fold(T::zero(), |acc, x| if x.abs() > acc { x.abs() } else { acc });
    if m.is_zero() {
        return v;
    }
    v.into_iter().map(|x| x / m.clone()).collect()
}

fn result_from_columns<T: Scalar>(
    n: usize,
    columns: Matrix<T>,
    tolerance: Option<f64>,
    geometrically_invalid: bool,
) -> IntersectionResult<T> {
    let basis: Vec<BivarPoly<T>> =
        (0..columns.cols()).map(|j| BivarPoly::from_coeffs(columns.column(j))).collect();
    debug_assert!(basis.iter().all(|b| b.degree() <= n));
    IntersectionResult {
        dim: basis.len(),
        basis,
        mode: T::MODE,
        rank_tolerance: tolerance,
        geometrically_invalid,
    }
}

/// `P⊥_{n-1}(ka) ∩ P⊥_{n-1}(kb)` through the nullspace of `[B_A | -B_B]`.
pub fn intersect_pair<T: Scalar>(
    n: usize,
    ka: &Triangle<T>,
    kb: &Triangle<T>,
) -> Result<IntersectionResult<T>> {
    intersect_many(n, &[ka.clone(), kb.clone()])
}

/// `⋂_i P⊥_{n-1}(K_i)`, reducing the running intersection against one space at a time.
pub fn intersect_many<T: Scalar>(n: usize, ks: &[Triangle<T>]) -> Result<IntersectionResult<T>> {
    if n == 0 {
        return Err(Error::InvalidDegree(0, "complement spaces need degree at least 1"));
    }
    if ks.len() < 2 {
        return Err(Error::DegenerateConfiguration("need at least two triangles".into()));
    }
    let spans: Vec<Matrix<T>> = ks.iter().map(|k| complement_basis(n, k).coefficient_matrix()).collect();
    let overlapping = ks
        .iter()
        .enumerate()
        .any(|(i, a)| ks[i + 1..].iter().any(|b| triangles_overlap(a, b)));
    let (columns, tolerance) = intersect_spans(&spans);
    Ok(result_from_columns(n, columns, tolerance, overlapping))
}

/// `P⊥_{n-1}(T1) ∩ P⊥_{n-1}(K_{c,d})` using the reference-map basis `p_{n,k}(x + cy, (d-c) y)`
/// for `K_{c,d}`; flagged geometrically invalid whenever `K_{c,d}` overlaps `T1` (`d > c`).
pub fn intersect_cd<T: Scalar>(n: usize, cd: &CdParams<T>) -> Result<IntersectionResult<T>> {
    if n == 0 {
        return Err(Error::InvalidDegree(0, "complement spaces need degree at least 1"));
    }
    let unit = complement_basis(n, &Triangle::unit()).coefficient_matrix();
    let polys = crate::orthobasis::complement_polys_from_map(n, &cd.to_reference())?;
    let columns: Vec<Vec<T>> =
        polys.iter().map(|p| p.coeff_vector(n).expect("degree n")).collect();
    let other = Matrix::from_columns(monomial_count(n), &columns);
    let (cols, tolerance) = intersect_spans(&[unit, other]);
    Ok(result_from_columns(n, cols, tolerance, !cd.disjoint_from_unit()))
}
