//! The four polarities side by side.

use crate::algebraic::{cubic_polar_point, last_polar_inverse};
use crate::convex::{simplex_convex_polar_hyperplane, simplex_convex_polar_point};
use crate::error::Result;
use crate::frame::{frame_polar_hyperplane, frame_polar_point};
use crate::harmonic::{harmonic_polar_hyperplane, harmonic_polar_point, harmonic_polar_point_by_edges};
use crate::projective::{Homogeneous, ProjHyperplane, ProjPoint, Simplex};
use crate::scalar::Scalar;

/// Polars of one point, computed independently.
#[derive(Clone, Debug, PartialEq)]
pub struct PointPolars<S> {
    pub frame: ProjHyperplane<S>,
    pub harmonic: ProjHyperplane<S>,
    pub harmonic_by_edges: ProjHyperplane<S>,
    pub algebraic: ProjHyperplane<S>,
    pub convex: ProjHyperplane<S>,
}

/// Polars of one hyperplane, computed independently.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplanePolars<S> {
    pub frame: ProjPoint<S>,
    pub harmonic: ProjPoint<S>,
    pub algebraic: ProjPoint<S>,
    pub convex: ProjPoint<S>,
}

/// Name and agreement flag of each compared pair.
pub type PairReport = Vec<(&'static str, bool)>;

/// Tolerance on canonical coordinates in float mode; exact mode compares exactly.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

fn same<H: Homogeneous>(a: &H, b: &H) -> bool {
    a.approx_eq(b, FLOAT_TOLERANCE)
}

impl<S: Scalar> PointPolars<S> {
    pub fn compute(p: &ProjPoint<S>, simplex: &Simplex<S>) -> Result<Self> {
        Ok(Self {
            frame: frame_polar_point(p, simplex)?,
            harmonic: harmonic_polar_point(p, simplex)?,
            harmonic_by_edges: harmonic_polar_point_by_edges(p, simplex)?,
            algebraic: cubic_polar_point(p, simplex)?,
            convex: simplex_convex_polar_point(p, simplex)?,
        })
    }

    pub fn pairs(&self) -> PairReport {
        vec![
            ("frame=harmonic", same(&self.frame, &self.harmonic)),
            ("harmonic=edges", same(&self.harmonic, &self.harmonic_by_edges)),
            ("frame=algebraic", same(&self.frame, &self.algebraic)),
            ("frame=convex", same(&self.frame, &self.convex)),
        ]
    }

    pub fn all_equal(&self) -> bool {
        self.pairs().iter().all(|(_, ok)| *ok)
    }
}

impl<S: Scalar> HyperplanePolars<S> {
    pub fn compute(h: &ProjHyperplane<S>, simplex: &Simplex<S>) -> Result<Self> {
        Ok(Self {
            frame: frame_polar_hyperplane(h, simplex)?,
            harmonic: harmonic_polar_hyperplane(h, simplex)?,
            algebraic: last_polar_inverse(h, simplex)?,
            convex: simplex_convex_polar_hyperplane(h, simplex)?,
        })
    }

    pub fn pairs(&self) -> PairReport {
        vec![
            ("frame=harmonic", same(&self.frame, &self.harmonic)),
            ("frame=algebraic", same(&self.frame, &self.algebraic)),
            ("frame=convex", same(&self.frame, &self.convex)),
        ]
    }

    pub fn all_equal(&self) -> bool {
        self.pairs().iter().all(|(_, ok)| *ok)
    }
}
