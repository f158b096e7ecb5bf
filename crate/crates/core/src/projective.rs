//! Homogeneous coordinates: points, hyperplanes, charts and simplices.
//!
//! A point of `P(V)` and a point of the dual space `P(V*)` (a hyperplane of
//! `P(V)`) share the same coordinate representation but are kept as distinct
//! types. [`Homogeneous`] abstracts over both so that constructions can be run
//! verbatim in the dual space.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, dot, Matrix};
use crate::scalar::{magnitude, Rational, Scalar};

/// Element of a projective space given by homogeneous coordinates.
pub trait Homogeneous: Clone + PartialEq + fmt::Debug {
    type Scalar: Scalar;
    type Dual: Homogeneous<Scalar = Self::Scalar, Dual = Self>;

    fn coords(&self) -> &[Self::Scalar];

    /// Builds the canonical representative of the class of `coords`.
    fn from_coords(coords: Vec<Self::Scalar>) -> Result<Self>;

    /// The element of the dual space with the same coordinates
    /// (`a ↦ a*`, with the bidual identified with the original space).
    fn dual(&self) -> Self::Dual {
        Self::Dual::from_coords(self.coords().to_vec()).expect("nonzero coordinates")
    }

    /// Projective dimension.
    fn dim(&self) -> usize {
        self.coords().len() - 1
    }

    /// Incidence with an element of the dual space.
    fn pairing(&self, other: &Self::Dual) -> Self::Scalar {
        dot(self.coords(), other.coords())
    }

    fn is_incident(&self, other: &Self::Dual) -> bool {
        let scale = magnitude(self.coords()) * magnitude(other.coords());
        self.pairing(other).is_negligible(scale)
    }

    /// Equality up to scale with a tolerance; exact for rationals.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let (a, b) = (self.coords(), other.coords());
        if a.len() != b.len() {
            return false;
        }
        if <Self::Scalar as Scalar>::EXACT {
            return a == b;
        }
        a.iter()
            .zip(b)
            .all(|(x, y)| (x.to_f64() - y.to_f64()).abs() <= tol)
            || a.iter()
                .zip(b)
                .all(|(x, y)| (x.to_f64() + y.to_f64()).abs() <= tol)
    }
}

macro_rules! homogeneous_type {
    ($name:ident, $field:ident, $dual:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name<S = Rational> {
            $field: Vec<S>,
        }

        impl<S: Scalar> $name<S> {
            pub fn new(mut coords: Vec<S>) -> Result<Self> {
                let scale = magnitude(&coords);
                if coords.len() < 2 || coords.iter().all(|c| c.is_negligible(scale)) {
                    return Err(Error::InvalidPoint);
                }
                S::normalize_homogeneous(&mut coords);
                Ok(Self { $field: coords })
            }

            pub fn $field(&self) -> &[S] {
                &self.$field
            }

            /// Converts to floating point coordinates.
            pub fn to_float(&self) -> $name<f64> {
                $name::new(self.$field.iter().map(|c| c.to_f64()).collect())
                    .expect("nonzero coordinates")
            }
        }

        impl $name<Rational> {
            pub fn from_ints(coords: &[i64]) -> Result<Self> {
                Self::new(crate::scalar::ints(coords))
            }
        }

        impl<S: Scalar> Homogeneous for $name<S> {
            type Scalar = S;
            type Dual = $dual<S>;

            fn coords(&self) -> &[S] {
                &self.$field
            }

            fn from_coords(coords: Vec<S>) -> Result<Self> {
                Self::new(coords)
            }
        }

        impl<S: Scalar> fmt::Display for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (i, c) in self.$field.iter().enumerate() {
                    if i > 0 {
                        write!(f, ":")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    };
}

homogeneous_type!(
    ProjPoint,
    coords,
    ProjHyperplane,
    "Point of `P(V)`, stored as its canonical representative."
);
homogeneous_type!(
    ProjHyperplane,
    coeffs,
    ProjPoint,
    "Hyperplane of `P(V)` given by the coefficients of a linear form."
);

impl<S: Scalar> ProjHyperplane<S> {
    pub fn contains(&self, p: &ProjPoint<S>) -> bool {
        p.is_incident(self)
    }
}

/// Canonical representative of a point.
pub fn canonicalize<S: Scalar>(p: &ProjPoint<S>) -> ProjPoint<S> {
    ProjPoint::new(p.coords().to_vec()).expect("valid point")
}

fn check_dims<'a, S: Scalar + 'a>(items: impl IntoIterator<Item = &'a [S]>) -> Result<usize> {
    let mut it = items.into_iter();
    let first = it.next().ok_or(Error::DegenerateSpan)?.len();
    for v in it {
        if v.len() != first {
            return Err(Error::DimensionMismatch {
                expected: first,
                got: v.len(),
            });
        }
    }
    Ok(first)
}

/// The unique element of the dual space incident to `n` independent elements
/// of an `n`-dimensional projective space.
pub fn join_all<H: Homogeneous>(items: &[H]) -> Result<H::Dual> {
    let len = check_dims(items.iter().map(|p| p.coords()))?;
    if items.len() != len - 1 {
        return Err(Error::DegenerateSpan);
    }
    let rows: Matrix<H::Scalar> = items.iter().map(|p| p.coords().to_vec()).collect();
    let ns = linalg::nullspace(&rows, len);
    if ns.len() != 1 {
        return Err(Error::DegenerateSpan);
    }
    H::Dual::from_coords(ns.into_iter().next().unwrap())
}

/// Hyperplane spanned by `n` independent points of `P^n`.
pub fn span<S: Scalar>(points: &[ProjPoint<S>]) -> Result<ProjHyperplane<S>> {
    join_all(points)
}

/// Point common to `n` independent hyperplanes of `P^n`.
pub fn meet<S: Scalar>(hyperplanes: &[ProjHyperplane<S>]) -> Result<ProjPoint<S>> {
    join_all(hyperplanes)
}

/// Intersection of the line `(a b)` with the hyperplane `h`.
pub fn meet_line_hyperplane<S: Scalar>(
    a: &ProjPoint<S>,
    b: &ProjPoint<S>,
    h: &ProjHyperplane<S>,
) -> Result<ProjPoint<S>> {
    let ha = a.pairing(h);
    let hb = b.pairing(h);
    let coords = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| hb.clone() * x.clone() - ha.clone() * y.clone())
        .collect();
    ProjPoint::new(coords).map_err(|_| Error::DegenerateSpan)
}

/// Rank of the coordinate matrix of a family.
pub fn rank_of<H: Homogeneous>(items: &[H]) -> usize {
    let rows: Matrix<H::Scalar> = items.iter().map(|p| p.coords().to_vec()).collect();
    linalg::rank(&rows)
}

pub fn are_collinear<S: Scalar>(points: &[ProjPoint<S>]) -> bool {
    rank_of(points) <= 2
}

/// Coordinates `(α, β)` with `c = α·a + β·b` for the stored representatives.
pub fn line_coordinates<H: Homogeneous>(a: &H, b: &H, c: &H) -> Result<(H::Scalar, H::Scalar)> {
    if rank_of(&[a.clone(), b.clone()]) < 2 {
        return Err(Error::DegenerateQuadruple);
    }
    if rank_of(&[a.clone(), b.clone(), c.clone()]) > 2 {
        return Err(Error::NotCollinear);
    }
    // Solve on two rows where (a, b) is invertible.
    let n = a.coords().len();
    for i in 0..n {
        for j in i + 1..n {
            let m = vec![
                vec![a.coords()[i].clone(), b.coords()[i].clone()],
                vec![a.coords()[j].clone(), b.coords()[j].clone()],
            ];
            let d = linalg::det(&m);
            let scale = magnitude(a.coords()) * magnitude(b.coords());
            if d.is_negligible(scale) {
                continue;
            }
            if let Some(x) = linalg::solve(&m, &[c.coords()[i].clone(), c.coords()[j].clone()]) {
                return Ok((x[0].clone(), x[1].clone()));
            }
        }
    }
    Err(Error::DegenerateQuadruple)
}

/// Value of a line scalar: finite or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineValue<S = Rational> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> LineValue<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            LineValue::Finite(v) => Some(v),
            LineValue::Infinity => None,
        }
    }
}

/// Cross-ratio `((c−b)(d−a)) / ((c−a)(d−b))`, computed with 2×2 brackets so
/// that points at infinity need no special handling. `cr(∞, 0, 1, −1) = −1`.
pub fn cross_ratio<S: Scalar>(
    a: &ProjPoint<S>,
    b: &ProjPoint<S>,
    c: &ProjPoint<S>,
    d: &ProjPoint<S>,
) -> Result<LineValue<S>> {
    if rank_of(&[a.clone(), b.clone(), c.clone(), d.clone()]) > 2 {
        return Err(Error::NotCollinear);
    }
    let (ca, cb) = line_coordinates(a, b, c)?;
    let (da, db) = line_coordinates(a, b, d)?;
    let scale = magnitude(c.coords()).max(magnitude(d.coords()));
    if ca.is_negligible(scale) || cb.is_negligible(scale) {
        return Err(Error::DegenerateQuadruple);
    }
    // [c b] = ca, [d a] = -db, [c a] = -cb, [d b] = da in the basis (a, b).
    let num = ca * db;
    let den = cb * da;
    if den.is_negligible(scale * scale) {
        return Ok(LineValue::Infinity);
    }
    Ok(LineValue::Finite(num / den))
}

/// Affine chart: an invertible matrix whose last row is the hyperplane sent
/// to infinity. Chart coordinates of `p` are `(Mp)_i / (Mp)_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineChart<S = Rational> {
    matrix: Matrix<S>,
    inverse: Matrix<S>,
}

impl<S: Scalar> AffineChart<S> {
    pub fn from_matrix(matrix: Matrix<S>) -> Result<Self> {
        let n = matrix.len();
        if n < 2 || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::SingularChart);
        }
        let inverse = linalg::inverse(&matrix).ok_or(Error::SingularChart)?;
        Ok(Self { matrix, inverse })
    }

    /// The chart `x_{n+1} ≠ 0` of `P^n`.
    pub fn standard(n: usize) -> Self {
        Self::from_matrix(linalg::identity(n + 1)).expect("identity is invertible")
    }

    /// A chart sending `h` to infinity: `h`'s coefficient row completed by
    /// unit rows, omitting the coordinate of `h`'s largest-magnitude entry.
    pub fn sending_to_infinity(h: &ProjHyperplane<S>) -> Self {
        let c = h.coeffs();
        let mut pivot = 0;
        for (i, x) in c.iter().enumerate() {
            if x.abs_val() > c[pivot].abs_val() {
                pivot = i;
            }
        }
        let n = c.len();
        let mut rows: Matrix<S> = (0..n)
            .filter(|&j| j != pivot)
            .map(|j| {
                (0..n)
                    .map(|k| if k == j { S::one() } else { S::zero() })
                    .collect()
            })
            .collect();
        rows.push(c.to_vec());
        Self::from_matrix(rows).expect("pivot entry is nonzero")
    }

    /// Chart `(y_1..y_n) ↦ [1 − Σy : y_1 : … : y_n]`, sending `Σ x_i = 0` to infinity.
    pub fn barycentric(n: usize) -> Self {
        let mut rows: Matrix<S> = (1..=n)
            .map(|j| {
                (0..=n)
                    .map(|k| if k == j { S::one() } else { S::zero() })
                    .collect()
            })
            .collect();
        rows.push(vec![S::one(); n + 1]);
        Self::from_matrix(rows).expect("invertible")
    }

    pub fn dim(&self) -> usize {
        self.matrix.len() - 1
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn infinity(&self) -> ProjHyperplane<S> {
        ProjHyperplane::new(self.matrix[self.dim()].clone()).expect("row of invertible matrix")
    }

    /// Affine coordinates of `p`.
    pub fn to_chart(&self, p: &ProjPoint<S>) -> Result<Vec<S>> {
        self.to_chart_vec(p.coords())
    }

    pub fn to_chart_vec(&self, v: &[S]) -> Result<Vec<S>> {
        let n = self.dim();
        if v.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: v.len(),
            });
        }
        let w = linalg::mat_vec(&self.matrix, v);
        let scale = magnitude(v) * magnitude(&self.matrix[n]);
        if w[n].is_negligible(scale) {
            return Err(Error::AtInfinity);
        }
        let t = w[n].clone();
        Ok(w[..n].iter().map(|x| x.clone() / t.clone()).collect())
    }

    /// Representative vector of the point with affine coordinates `t`,
    /// normalized so that the chart's infinity form takes the value 1.
    pub fn lift(&self, t: &[S]) -> Vec<S> {
        let mut w = t.to_vec();
        w.push(S::one());
        linalg::mat_vec(&self.inverse, &w)
    }

    pub fn from_chart(&self, t: &[S]) -> Result<ProjPoint<S>> {
        if t.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: t.len(),
            });
        }
        ProjPoint::new(self.lift(t))
    }

    /// Hyperplane `a·t + b = 0` written in chart coordinates, as a projective hyperplane.
    pub fn hyperplane_from_affine(&self, a: &[S], b: S) -> Result<ProjHyperplane<S>> {
        let mut l = a.to_vec();
        l.push(b);
        let coeffs = linalg::mat_vec(&linalg::transpose(&self.matrix), &l);
        ProjHyperplane::new(coeffs)
    }

    /// Coefficients `(a, b)` of `h` as the affine function `a·t + b` on the chart.
    pub fn hyperplane_to_affine(&self, h: &ProjHyperplane<S>) -> (Vec<S>, S) {
        let mut l = linalg::mat_vec(&linalg::transpose(&self.inverse), h.coeffs());
        let b = l.pop().expect("nonempty");
        (l, b)
    }
}

/// `n+1` points spanning `P^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex<S = Rational> {
    vertices: Vec<ProjPoint<S>>,
    /// Columns are the vertex representatives.
    basis: Matrix<S>,
    basis_inv: Matrix<S>,
}

impl<S: Scalar> Simplex<S> {
    pub fn new(vertices: Vec<ProjPoint<S>>) -> Result<Self> {
        let len = check_dims(vertices.iter().map(|v| v.coords()))?;
        if vertices.len() != len || len < 2 {
            return Err(Error::NotAFrame);
        }
        let rows: Matrix<S> = vertices.iter().map(|v| v.coords().to_vec()).collect();
        let basis = linalg::transpose(&rows);
        let basis_inv = linalg::inverse(&basis).ok_or(Error::NotAFrame)?;
        Ok(Self {
            vertices,
            basis,
            basis_inv,
        })
    }

    /// Coordinate simplex of `P^n`.
    pub fn standard(n: usize) -> Self {
        let vertices = linalg::identity::<S>(n + 1)
            .into_iter()
            .map(|r| ProjPoint::new(r).expect("unit vector"))
            .collect();
        Self::new(vertices).expect("standard simplex")
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[ProjPoint<S>] {
        &self.vertices
    }

    /// Matrix whose columns are the vertex representatives.
    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    /// Coordinates of a vector in the basis of vertex representatives.
    pub fn coordinates(&self, v: &[S]) -> Vec<S> {
        linalg::mat_vec(&self.basis_inv, v)
    }

    /// Values of a linear form on the vertex representatives.
    pub fn form_on_vertices(&self, h: &ProjHyperplane<S>) -> Vec<S> {
        self.vertices.iter().map(|v| v.pairing(h)).collect()
    }

    /// Vector with the given coordinates in the vertex basis.
    pub fn combine(&self, c: &[S]) -> Vec<S> {
        linalg::mat_vec(&self.basis, c)
    }

    /// Face `H_i` spanned by all vertices but the `i`-th.
    pub fn face(&self, i: usize) -> ProjHyperplane<S> {
        // Row i of the inverse basis vanishes exactly on the other vertices.
        ProjHyperplane::new(self.basis_inv[i].clone()).expect("row of invertible matrix")
    }

    pub fn faces(&self) -> Vec<ProjHyperplane<S>> {
        (0..self.vertices.len()).map(|i| self.face(i)).collect()
    }

    /// A point is generic when it lies on no face.
    pub fn is_generic_point(&self, p: &ProjPoint<S>) -> bool {
        let scale = magnitude(p.coords());
        p.coords().len() == self.vertices.len()
            && self
                .coordinates(p.coords())
                .iter()
                .all(|c| !c.is_negligible(scale))
    }

    /// A hyperplane is generic when it passes through no vertex.
    pub fn is_generic_hyperplane(&self, h: &ProjHyperplane<S>) -> bool {
        h.coeffs().len() == self.vertices.len() && self.vertices.iter().all(|v| !v.is_incident(h))
    }

    pub fn to_float(&self) -> Simplex<f64> {
        Simplex::new(self.vertices.iter().map(|v| v.to_float()).collect()).expect("valid simplex")
    }
}
