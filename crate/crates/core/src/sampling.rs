//! Seeded random inputs: generic points and hyperplanes with small integer
//! coordinates, and random convex polygons.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex::ConvexPolytope;
use crate::projective::{ProjHyperplane, ProjPoint, Simplex};
use crate::scalar::Rational;

/// Coordinates are drawn uniformly from `[-BOUND, BOUND]`.
pub const BOUND: i64 = 9;

/// Deterministic source of random inputs. Counts the draws rejected for
/// being degenerate or non-generic.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    rejections: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            rejections: 0,
        }
    }

    pub fn rejections(&self) -> usize {
        self.rejections
    }

    /// Records an externally rejected input.
    pub fn reject(&mut self) {
        self.rejections += 1;
    }

    pub fn integers(&mut self, len: usize) -> Vec<i64> {
        (0..len).map(|_| self.rng.gen_range(-BOUND..=BOUND)).collect()
    }

    pub fn unit_interval(&mut self) -> f64 {
        self.rng.gen_range(0.0..1.0)
    }

    pub fn point(&mut self, dim: usize) -> ProjPoint<Rational> {
        loop {
            if let Ok(p) = ProjPoint::from_ints(&self.integers(dim + 1)) {
                return p;
            }
            self.rejections += 1;
        }
    }

    pub fn generic_point(&mut self, simplex: &Simplex<Rational>) -> ProjPoint<Rational> {
        loop {
            let p = self.point(simplex.dim());
            if simplex.is_generic_point(&p) {
                return p;
            }
            self.rejections += 1;
        }
    }

    pub fn generic_hyperplane(&mut self, simplex: &Simplex<Rational>) -> ProjHyperplane<Rational> {
        loop {
            if let Ok(h) = ProjHyperplane::from_ints(&self.integers(simplex.dim() + 1)) {
                if simplex.is_generic_hyperplane(&h) {
                    return h;
                }
            }
            self.rejections += 1;
        }
    }

    /// A simplex of `P^n` with integer vertices.
    pub fn simplex(&mut self, dim: usize) -> Simplex<Rational> {
        loop {
            let vertices = (0..=dim).map(|_| self.point(dim)).collect();
            if let Ok(s) = Simplex::new(vertices) {
                return s;
            }
            self.rejections += 1;
        }
    }

    /// Convex polygon with exactly `m` integer vertices in the standard chart.
    pub fn convex_polygon(&mut self, m: usize) -> ConvexPolytope<Rational> {
        loop {
            let points = (0..m)
                .map(|_| crate::scalar::ints(&self.integers(2)))
                .collect();
            match ConvexPolytope::from_points(points) {
                Ok(k) if k.vertices().len() == m => return k,
                _ => self.rejections += 1,
            }
        }
    }

    /// Random point strictly inside `k`: a convex combination of the vertices
    /// with weights bounded away from zero.
    pub fn interior_point(&mut self, k: &ConvexPolytope<f64>) -> Vec<f64> {
        let weights: Vec<f64> = k
            .vertices()
            .iter()
            .map(|_| 0.1 + self.rng.gen_range(0.0..1.0))
            .collect();
        let total: f64 = weights.iter().sum();
        (0..k.dim())
            .map(|j| {
                k.vertices()
                    .iter()
                    .zip(&weights)
                    .map(|(v, w)| v[j] * w / total)
                    .sum()
            })
            .collect()
    }
}
