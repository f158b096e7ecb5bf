//! Projective frames, adapted bases, dual frames, and the frame polarity.
//!
//! A generic point `p` turns a simplex `(p_1, …, p_{n+1})` into the frame
//! `(p_1, …, p_{n+1}, p)`. The last element of the dual frame is a point of
//! the dual space, i.e. a hyperplane `p•` of the original space. Everything
//! here is written against [`Homogeneous`], so the same code computes `H•`
//! by running in the dual space with the faces of the simplex as vertices.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::projective::{rank_of, Homogeneous, ProjHyperplane, ProjPoint, Simplex};
use crate::scalar::{magnitude, Scalar};

/// `n+2` elements of `P^n`, any `n+1` of which span.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjFrame<P> {
    points: Vec<P>,
}

/// Basis `(b_1, …, b_{n+1})` with `r_i = P(b_i)` and `r_+ = P(Σ b_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedBasis<S> {
    columns: Vec<Vec<S>>,
}

impl<P: Homogeneous> ProjFrame<P> {
    pub fn new(points: Vec<P>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::NotAFrame);
        };
        let len = first.coords().len();
        if points.len() != len + 1 || points.iter().any(|p| p.coords().len() != len) {
            return Err(Error::NotAFrame);
        }
        for skip in 0..points.len() {
            let subset: Vec<P> = points
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            if rank_of(&subset) != len {
                return Err(Error::NotAFrame);
            }
        }
        Ok(Self { points })
    }

    /// Frame `(v_1, …, v_{n+1}, x)` built from simplex vertices and a generic element.
    pub fn from_vertices(vertices: &[P], last: P) -> Result<Self> {
        let mut points = vertices.to_vec();
        points.push(last);
        Self::new(points)
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    /// The distinguished last element `r_+`.
    pub fn unit(&self) -> &P {
        self.points.last().expect("frame is nonempty")
    }

    pub fn dim(&self) -> usize {
        self.points.len() - 2
    }
}

impl<S: Scalar> AdaptedBasis<S> {
    pub fn columns(&self) -> &[Vec<S>] {
        &self.columns
    }

    /// Matrix with the basis vectors as columns.
    pub fn matrix(&self) -> Matrix<S> {
        linalg::transpose(&self.columns)
    }

    /// Dual basis `(b_1*, …, b_{n+1}*)`: the rows of the inverse matrix.
    pub fn dual(&self) -> AdaptedBasis<S> {
        let inv = linalg::inverse(&self.matrix()).expect("basis is invertible");
        AdaptedBasis { columns: inv }
    }

    pub fn sum(&self) -> Vec<S> {
        let n = self.columns[0].len();
        (0..n)
            .map(|r| {
                self.columns
                    .iter()
                    .fold(S::zero(), |acc, c| acc + c[r].clone())
            })
            .collect()
    }
}

/// Adapted basis of a frame, scaled so that its first column is the stored
/// canonical representative of `r_1`.
pub fn adapted_basis<P: Homogeneous>(frame: &ProjFrame<P>) -> Result<AdaptedBasis<P::Scalar>> {
    let n1 = frame.dim() + 1;
    let rows: Matrix<P::Scalar> = frame.points[..n1]
        .iter()
        .map(|p| p.coords().to_vec())
        .collect();
    let m = linalg::transpose(&rows);
    let lambda = linalg::solve(&m, frame.unit().coords()).ok_or(Error::NotAFrame)?;
    let scale = magnitude(&lambda);
    if lambda.iter().any(|l| l.is_negligible(scale)) {
        return Err(Error::NotAFrame);
    }
    let first = lambda[0].clone();
    let columns = frame.points[..n1]
        .iter()
        .zip(&lambda)
        .map(|(p, l)| {
            let f = l.clone() / first.clone();
            p.coords().iter().map(|c| c.clone() * f.clone()).collect()
        })
        .collect();
    Ok(AdaptedBasis { columns })
}

/// Frame of the dual space attached to the dual of an adapted basis.
pub fn dual_frame<P: Homogeneous>(frame: &ProjFrame<P>) -> Result<ProjFrame<P::Dual>> {
    let dual = adapted_basis(frame)?.dual();
    let mut points = dual
        .columns()
        .iter()
        .map(|c| P::Dual::from_coords(c.clone()))
        .collect::<Result<Vec<_>>>()?;
    points.push(P::Dual::from_coords(dual.sum())?);
    ProjFrame::new(points)
}

/// Frame polar of `x` with respect to the simplex with the given vertices:
/// the last element of the dual frame of `(v_1, …, v_{n+1}, x)`.
pub fn frame_polar<P: Homogeneous>(x: &P, vertices: &[P]) -> Result<P::Dual> {
    let frame = match ProjFrame::from_vertices(vertices, x.clone()) {
        Ok(f) => f,
        Err(_) => {
            // Distinguish a degenerate simplex from a non-generic element.
            let len = x.coords().len();
            if vertices.len() != len || rank_of(vertices) != len {
                return Err(Error::NotAFrame);
            }
            return Err(Error::NotGeneric);
        }
    };
    Ok(dual_frame(&frame)?.unit().clone())
}

/// `p•`: the hyperplane with equation `Σ x_i = 0` in the coordinates of the
/// frame `(p_1, …, p_{n+1}, p)`.
pub fn frame_polar_point<S: Scalar>(
    p: &ProjPoint<S>,
    simplex: &Simplex<S>,
) -> Result<ProjHyperplane<S>> {
    frame_polar(p, simplex.vertices())
}

/// `H•`: the frame polarity run in the dual space against the faces of the simplex.
pub fn frame_polar_hyperplane<S: Scalar>(
    h: &ProjHyperplane<S>,
    simplex: &Simplex<S>,
) -> Result<ProjPoint<S>> {
    if !simplex.is_generic_hyperplane(h) {
        return Err(Error::NotGeneric);
    }
    frame_polar(h, &simplex.faces())
}
