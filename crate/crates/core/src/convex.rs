//! Convex polytopes, their duals at interior points, the Santaló point and
//! the convex polarity.
//!
//! A polytope lives in an affine chart of `P^n` and is given by its vertices.
//! Facets are found by brute force over `n`-subsets of vertices, which is
//! adequate for the small bodies this crate works with. Volumes and centroids
//! use a pulling triangulation and are exact over rationals.
//!
//! The dual body at `x` is `K^x = {f : f(y − x) ≥ −1 on K}`; each facet
//! `a·y ≥ b` of `K` contributes the vertex `a / (a·x − b)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::projective::{AffineChart, Homogeneous, ProjHyperplane, ProjPoint, Simplex};
use crate::scalar::{magnitude, Rational, Scalar};

/// Supporting hyperplane `normal·y = offset` with the body on the side `≥`.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet<S> {
    normal: Vec<S>,
    offset: S,
    members: Vec<usize>,
}

impl<S: Scalar> Facet<S> {
    pub fn normal(&self) -> &[S] {
        &self.normal
    }

    pub fn offset(&self) -> &S {
        &self.offset
    }

    /// Indices of the vertices lying on the facet.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// `normal·y − offset`; nonnegative on the body.
    pub fn slack(&self, y: &[S]) -> S {
        linalg::dot(&self.normal, y) - self.offset.clone()
    }
}

/// Full-dimensional convex polytope in an affine chart, stored by its
/// extreme points.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolytope<S = Rational> {
    chart: AffineChart<S>,
    vertices: Vec<Vec<S>>,
    facets: Vec<Facet<S>>,
}

/// Dual body `K^x` together with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct DualBodyAt<S = Rational> {
    base: ConvexPolytope<S>,
    center: Vec<S>,
    body: ConvexPolytope<S>,
}

/// Outcome of the Santaló solver.
#[derive(Clone, Debug, PartialEq)]
pub struct SantaloReport {
    pub point: Vec<f64>,
    pub iterations: usize,
    /// `|centroid(K^x)|` at the returned point.
    pub gradient_norm: f64,
}

/// Iterates of `x ↦ x^{○○}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit<S = Rational> {
    /// `points[0]` is the start.
    pub points: Vec<Vec<S>>,
    /// Euclidean chart distance between consecutive points; `displacements[0] = 0`.
    pub displacements: Vec<f64>,
    /// Error that truncated the orbit, if any.
    pub stopped: Option<Error>,
}

fn coordinate_scale<S: Scalar>(points: &[Vec<S>]) -> f64 {
    points
        .iter()
        .fold(1.0f64, |m, p| m.max(magnitude(p)))
}

fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn scaled<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, k, 0, &mut Vec::new(), &mut out);
    out
}

fn approx_same<S: Scalar>(a: &[S], b: &[S], scale: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x.clone() - y.clone()).is_negligible(scale))
}

fn affine_rank<S: Scalar>(points: &[Vec<S>]) -> usize {
    let diffs: Matrix<S> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    if diffs.is_empty() {
        0
    } else {
        linalg::rank(&diffs)
    }
}

/// Facets of the hull of full-dimensional points in `R^k`.
fn hull_facets<S: Scalar>(points: &[Vec<S>]) -> Vec<Facet<S>> {
    let k = points[0].len();
    let scale = coordinate_scale(points);
    let mut facets: Vec<Facet<S>> = Vec::new();
    for subset in combinations(points.len(), k) {
        let rows: Matrix<S> = subset
            .iter()
            .map(|&i| {
                let mut r = points[i].clone();
                r.push(-S::one());
                r
            })
            .collect();
        let ns = linalg::nullspace(&rows, k + 1);
        if ns.len() != 1 {
            continue;
        }
        let v = &ns[0];
        let Some(big) = v[..k]
            .iter()
            .map(|x| x.abs_val())
            .max_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal))
        else {
            continue;
        };
        if big.is_negligible(1.0) {
            continue;
        }
        let mut normal: Vec<S> = v[..k].iter().map(|x| x.clone() / big.clone()).collect();
        let mut offset = v[k].clone() / big;
        let signs: Vec<i8> = points
            .iter()
            .map(|p| (linalg::dot(&normal, p) - offset.clone()).sign(scale))
            .collect();
        if signs.iter().any(|&s| s < 0) {
            if signs.iter().any(|&s| s > 0) {
                continue;
            }
            normal = normal.into_iter().map(|x| -x).collect();
            offset = -offset;
        }
        if facets
            .iter()
            .any(|f| approx_same(&f.normal, &normal, 1.0) && approx_same(std::slice::from_ref(&f.offset), std::slice::from_ref(&offset), scale))
        {
            continue;
        }
        let members = signs
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 0)
            .map(|(i, _)| i)
            .collect();
        facets.push(Facet {
            normal,
            offset,
            members,
        });
    }
    facets
}

/// Coordinates of points in a basis of their affine hull, based at `points[0]`.
fn local_coordinates<S: Scalar>(points: &[Vec<S>]) -> Vec<Vec<S>> {
    let origin = &points[0];
    let mut basis: Matrix<S> = Vec::new();
    for p in &points[1..] {
        let d = sub(p, origin);
        let mut trial = basis.clone();
        trial.push(d.clone());
        if linalg::rank(&trial) > basis.len() {
            basis = trial;
        }
    }
    // Left inverse (B Bᵀ)⁻¹ B; exact on the hull.
    let gram = linalg::mat_mul(&basis, &linalg::transpose(&basis));
    let gram_inv = linalg::inverse(&gram).expect("independent directions");
    points
        .iter()
        .map(|p| linalg::mat_vec(&gram_inv, &linalg::mat_vec(&basis, &sub(p, origin))))
        .collect()
}

/// Pulling triangulation of the hull of extreme points: cone from the first
/// point over a triangulation of every facet not containing it.
fn triangulate<S: Scalar>(points: &[Vec<S>]) -> Vec<Vec<usize>> {
    let k = affine_rank(points);
    if points.len() == k + 1 {
        return vec![(0..=k).collect()];
    }
    let local = if k == points[0].len() {
        points.to_vec()
    } else {
        local_coordinates(points)
    };
    let mut out = Vec::new();
    for facet in hull_facets(&local) {
        if facet.members.contains(&0) {
            continue;
        }
        let sub_points: Vec<Vec<S>> = facet.members.iter().map(|&i| points[i].clone()).collect();
        for t in triangulate(&sub_points) {
            let mut s = vec![0];
            s.extend(t.iter().map(|&j| facet.members[j]));
            out.push(s);
        }
    }
    out
}

fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n as i64).fold(S::one(), |acc, k| acc * S::from_i64(k))
}

impl<S: Scalar> ConvexPolytope<S> {
    /// Convex hull of `points` (chart coordinates); non-extreme points are dropped.
    pub fn new(chart: AffineChart<S>, points: Vec<Vec<S>>) -> Result<Self> {
        let n = chart.dim();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
        let scale = coordinate_scale(&points);
        let mut distinct: Vec<Vec<S>> = Vec::new();
        for p in points {
            if !distinct.iter().any(|q| approx_same(q, &p, scale)) {
                distinct.push(p);
            }
        }
        if distinct.len() < n + 1 || affine_rank(&distinct) != n {
            return Err(Error::DegenerateBody);
        }
        let facets = hull_facets(&distinct);
        let vertices: Vec<Vec<S>> = distinct
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let normals: Matrix<S> = facets
                    .iter()
                    .filter(|f| f.members.contains(i))
                    .map(|f| f.normal.clone())
                    .collect();
                !normals.is_empty() && linalg::rank(&normals) == n
            })
            .map(|(_, p)| p.clone())
            .collect();
        let facets = hull_facets(&vertices);
        Ok(Self {
            chart,
            vertices,
            facets,
        })
    }

    /// Polytope in the standard chart `x_{n+1} ≠ 0`.
    pub fn from_points(points: Vec<Vec<S>>) -> Result<Self> {
        let n = points.first().map_or(0, |p| p.len());
        if n == 0 {
            return Err(Error::DegenerateBody);
        }
        Self::new(AffineChart::standard(n), points)
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn chart(&self) -> &AffineChart<S> {
        &self.chart
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim() + 1
    }

    fn scale(&self) -> f64 {
        coordinate_scale(&self.vertices)
    }

    /// Index tuples of a triangulation by `n`-simplices.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        triangulate(&self.vertices)
    }

    /// Volume and centroid from the triangulation.
    pub fn volume_and_centroid(&self) -> (S, Vec<S>) {
        let n = self.dim();
        let n_fact = factorial::<S>(n);
        let denom = S::from_i64(n as i64 + 1);
        let mut vol = S::zero();
        let mut moment = vec![S::zero(); n];
        for s in self.simplices() {
            let base = &self.vertices[s[0]];
            let m: Matrix<S> = s[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
            let v = linalg::det(&m).abs_val() / n_fact.clone();
            for (j, mj) in moment.iter_mut().enumerate() {
                let c = s
                    .iter()
                    .fold(S::zero(), |acc, &i| acc + self.vertices[i][j].clone())
                    / denom.clone();
                *mj = mj.clone() + v.clone() * c;
            }
            vol = vol + v;
        }
        let centroid = moment.into_iter().map(|m| m / vol.clone()).collect();
        (vol, centroid)
    }

    pub fn volume(&self) -> S {
        self.volume_and_centroid().0
    }

    pub fn centroid(&self) -> Vec<S> {
        self.volume_and_centroid().1
    }

    pub fn is_interior(&self, y: &[S]) -> bool {
        let scale = self.scale().max(magnitude(y));
        y.len() == self.dim() && self.facets.iter().all(|f| f.slack(y).sign(scale) > 0)
    }

    pub fn contains(&self, y: &[S]) -> bool {
        let scale = self.scale().max(magnitude(y));
        y.len() == self.dim() && self.facets.iter().all(|f| f.slack(y).sign(scale) >= 0)
    }

    /// Homogeneous representatives of the vertices.
    pub fn lifted_vertices(&self) -> Vec<Vec<S>> {
        self.vertices.iter().map(|v| self.chart.lift(v)).collect()
    }

    /// The same body seen in another chart. The new hyperplane at infinity must
    /// miss the closure of the body.
    pub fn in_chart(&self, chart: AffineChart<S>) -> Result<Self> {
        let h = chart.infinity();
        check_disjoint(&h, self)?;
        let points = self
            .lifted_vertices()
            .iter()
            .map(|v| chart.to_chart_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chart, points)
    }

    /// Vertices of a polygon in counter-clockwise order.
    pub fn ordered_vertices_2d(&self) -> Result<Vec<Vec<S>>> {
        if self.dim() != 2 {
            return Err(Error::UnsupportedDimension(self.dim()));
        }
        let c = self.centroid();
        let mut rel: Vec<(Vec<S>, usize)> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (sub(v, &c), i))
            .collect();
        let half = |v: &[S]| -> u8 {
            if v[1] > S::zero() || (v[1].is_zero() && v[0] > S::zero()) {
                0
            } else {
                1
            }
        };
        rel.sort_by(|(a, _), (b, _)| {
            half(a).cmp(&half(b)).then_with(|| {
                let cross = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
                S::zero()
                    .partial_cmp(&cross)
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        });
        Ok(rel.into_iter().map(|(_, i)| self.vertices[i].clone()).collect())
    }

    pub fn to_float(&self) -> ConvexPolytope<f64> {
        let chart = AffineChart::from_matrix(
            self.chart
                .matrix()
                .iter()
                .map(|r| r.iter().map(|x| x.to_f64()).collect())
                .collect(),
        )
        .expect("chart stays invertible");
        let points = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_f64()).collect())
            .collect();
        ConvexPolytope::new(chart, points).expect("body stays full-dimensional")
    }
}

impl<S: Scalar> DualBodyAt<S> {
    pub fn base(&self) -> &ConvexPolytope<S> {
        &self.base
    }

    pub fn center(&self) -> &[S] {
        &self.center
    }

    pub fn body(&self) -> &ConvexPolytope<S> {
        &self.body
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        self.body.vertices()
    }
}

pub fn volume<S: Scalar>(k: &ConvexPolytope<S>) -> S {
    k.volume()
}

pub fn centroid<S: Scalar>(k: &ConvexPolytope<S>) -> Vec<S> {
    k.centroid()
}

/// `K^x`, a polytope in the space of linear functionals on the chart.
pub fn dual_body<S: Scalar>(k: &ConvexPolytope<S>, x: &[S]) -> Result<DualBodyAt<S>> {
    if !k.is_interior(x) {
        return Err(Error::NotInterior);
    }
    let points = k
        .facets
        .iter()
        .map(|f| {
            let s = S::one() / f.slack(x);
            scaled(&f.normal, &s)
        })
        .collect();
    Ok(DualBodyAt {
        base: k.clone(),
        center: x.to_vec(),
        body: ConvexPolytope::from_points(points)?,
    })
}

/// `n!·vol(K^x)`, the characteristic function of the cone over `K` at `x`.
pub fn characteristic_value<S: Scalar>(k: &ConvexPolytope<S>, x: &[S]) -> Result<S> {
    Ok(factorial::<S>(k.dim()) * dual_body(k, x)?.body.volume())
}

/// `θ(x) = −∇ log φ(x) = (n+1)·centroid(K^x)`.
pub fn theta<S: Scalar>(k: &ConvexPolytope<S>, x: &[S]) -> Result<Vec<S>> {
    let c = dual_body(k, x)?.body.centroid();
    Ok(scaled(&c, &S::from_i64(k.dim() as i64 + 1)))
}

/// Monte-Carlo estimate of `∫ e^{−f(x̂)} df` over the dual cone, sampling
/// `f` uniformly in the box `[−half_width, half_width]^{n+1}`.
pub fn monte_carlo_characteristic(
    k: &ConvexPolytope<f64>,
    x: &[f64],
    half_width: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if !k.is_interior(x) {
        return Err(Error::NotInterior);
    }
    let n = k.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = vec![0.0; n + 1];
    let mut sum = 0.0;
    for _ in 0..samples {
        for c in f.iter_mut() {
            *c = rng.gen_range(-half_width..half_width);
        }
        let in_cone = k
            .vertices
            .iter()
            .all(|y| linalg::dot(&f[..n], y) + f[n] > 0.0);
        if in_cone {
            sum += (-(linalg::dot(&f[..n], x) + f[n])).exp();
        }
    }
    let box_volume = (2.0 * half_width).powi(n as i32 + 1);
    Ok(box_volume * sum / samples as f64)
}

const SANTALO_TOLERANCE: f64 = 1e-10;
const SANTALO_MAX_ITERATIONS: usize = 100;

fn log_dual_volume(k: &ConvexPolytope<f64>, x: &[f64]) -> Result<f64> {
    Ok(dual_body(k, x)?.body.volume().ln())
}

fn log_gradient(k: &ConvexPolytope<f64>, x: &[f64]) -> Result<Vec<f64>> {
    Ok(theta(k, x)?.into_iter().map(|t| -t).collect())
}

fn fd_hessian(k: &ConvexPolytope<f64>, x: &[f64], step: f64) -> Result<Matrix<f64>> {
    let n = x.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut h = step;
        loop {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[j] += h;
            minus[j] -= h;
            if k.is_interior(&plus) && k.is_interior(&minus) {
                let gp = log_gradient(k, &plus)?;
                let gm = log_gradient(k, &minus)?;
                cols.push(gp.iter().zip(&gm).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<_>>());
                break;
            }
            h /= 2.0;
            if h < 1e-14 {
                return Err(Error::NotInterior);
            }
        }
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| 0.5 * (cols[j][i] + cols[i][j])).collect())
        .collect())
}

/// Minimizer of `vol(K^x)` by damped Newton from the centroid of `K`.
pub fn santalo_point(k: &ConvexPolytope<f64>) -> Result<SantaloReport> {
    santalo_point_from(k, &k.centroid())
}

/// Damped Newton with a finite-difference Hessian of the analytic gradient;
/// falls back to gradient descent when the Newton direction is not a descent
/// direction.
pub fn santalo_point_from(k: &ConvexPolytope<f64>, start: &[f64]) -> Result<SantaloReport> {
    if !k.is_interior(start) {
        return Err(Error::NotInterior);
    }
    let diam = k.scale();
    let n1 = (k.dim() + 1) as f64;
    let mut x = start.to_vec();
    let mut iterates = vec![x.clone()];
    for it in 0..=SANTALO_MAX_ITERATIONS {
        let grad = log_gradient(k, &x)?;
        let gnorm = norm2(&grad) / n1;
        if gnorm < SANTALO_TOLERANCE {
            return Ok(SantaloReport {
                point: x,
                iterations: it,
                gradient_norm: gnorm,
            });
        }
        if it == SANTALO_MAX_ITERATIONS {
            break;
        }
        let hess = fd_hessian(k, &x, 1e-5 * diam)?;
        let neg: Vec<f64> = grad.iter().map(|g| -g).collect();
        let dir = match linalg::solve(&hess, &neg) {
            Some(d) if linalg::dot(&d, &grad) < 0.0 => d,
            _ => neg.iter().map(|g| g * diam * diam).collect(),
        };
        let f0 = log_dual_volume(k, &x)?;
        let slope = linalg::dot(&dir, &grad);
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + t * d).collect();
            if k.is_interior(&trial) {
                let ft = log_dual_volume(k, &trial)?;
                let gt = norm2(&log_gradient(k, &trial)?) / n1;
                if ft <= f0 + 1e-4 * t * slope || gt < gnorm {
                    accepted = Some(trial);
                    break;
                }
            }
            t /= 2.0;
        }
        match accepted {
            Some(next) => {
                x = next;
                iterates.push(x.clone());
            }
            None => break,
        }
    }
    Err(Error::NoConvergence {
        iterations: iterates.len() - 1,
        iterates,
    })
}

fn check_disjoint<S: Scalar>(h: &ProjHyperplane<S>, k: &ConvexPolytope<S>) -> Result<()> {
    let lifted = k.lifted_vertices();
    let scale = magnitude(h.coeffs()) * coordinate_scale(&lifted);
    let signs: Vec<i8> = lifted
        .iter()
        .map(|v| linalg::dot(h.coeffs(), v).sign(scale))
        .collect();
    if signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0) {
        Ok(())
    } else {
        Err(Error::NotDisjoint)
    }
}

/// `H^○`: the centroid of `K` in a chart sending `H` to infinity.
pub fn convex_polar_hyperplane<S: Scalar>(
    h: &ProjHyperplane<S>,
    k: &ConvexPolytope<S>,
) -> Result<ProjPoint<S>> {
    convex_polar_hyperplane_in(h, k, &AffineChart::sending_to_infinity(h))
}

/// `H^○` computed in a caller-supplied chart whose hyperplane at infinity is `H`.
pub fn convex_polar_hyperplane_in<S: Scalar>(
    h: &ProjHyperplane<S>,
    k: &ConvexPolytope<S>,
    chart: &AffineChart<S>,
) -> Result<ProjPoint<S>> {
    if h.coeffs().len() != k.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: k.dim() + 1,
            got: h.coeffs().len(),
        });
    }
    if !chart.infinity().approx_eq(h, 1e-9) {
        return Err(Error::ChartMismatch);
    }
    let moved = k.in_chart(chart.clone())?;
    chart.from_chart(&moved.centroid())
}

/// Hyperplane `{t : 1 + f·(t − y) = 0}` of the chart.
fn hyperplane_at<S: Scalar>(chart: &AffineChart<S>, y: &[S], f: &[S]) -> Result<ProjHyperplane<S>> {
    let b = S::one() - linalg::dot(f, y);
    chart.hyperplane_from_affine(f, b)
}

fn interior_chart_point<S: Scalar>(x: &ProjPoint<S>, k: &ConvexPolytope<S>) -> Result<Vec<S>> {
    let y = k.chart.to_chart(x).map_err(|_| Error::NotInterior)?;
    if !k.is_interior(&y) {
        return Err(Error::NotInterior);
    }
    Ok(y)
}

/// `x^○`: the hyperplane `y^*` where `y` is the Santaló point of `K^x`. In a
/// chart sending it to infinity, `x` is the centroid of `K`.
pub fn convex_polar_point(
    x: &ProjPoint<f64>,
    k: &ConvexPolytope<f64>,
) -> Result<ProjHyperplane<f64>> {
    let y = interior_chart_point(x, k)?;
    let dual = dual_body(k, &y)?;
    let s = santalo_point(dual.body())?;
    hyperplane_at(k.chart(), &y, &s.point)
}

/// `x^{*○*}`: the hyperplane `c^*` where `c` is the centroid of `K^x`. For a
/// simplex this is `x^○`; in general it is not inverse to `H ↦ H^○`.
pub fn dual_centroid_polar<S: Scalar>(
    x: &ProjPoint<S>,
    k: &ConvexPolytope<S>,
) -> Result<ProjHyperplane<S>> {
    let y = interior_chart_point(x, k)?;
    let c = dual_body(k, &y)?.body().centroid();
    hyperplane_at(k.chart(), &y, &c)
}

/// One step `x ↦ x^{*○*○}` in chart coordinates.
pub fn double_polar_step<S: Scalar>(x: &[S], k: &ConvexPolytope<S>) -> Result<Vec<S>> {
    let p = k.chart.from_chart(x).map_err(|_| Error::NotInterior)?;
    let h = dual_centroid_polar(&p, k)?;
    let q = convex_polar_hyperplane(&h, k)?;
    k.chart.to_chart(&q)
}

/// Orbit of `x0` under `x ↦ x^{*○*○}`; a failing step truncates the orbit.
pub fn double_polar_orbit<S: Scalar>(
    x0: &[S],
    k: &ConvexPolytope<S>,
    steps: usize,
) -> Result<Orbit<S>> {
    if !k.is_interior(x0) {
        return Err(Error::NotInterior);
    }
    let mut orbit = Orbit {
        points: vec![x0.to_vec()],
        displacements: vec![0.0],
        stopped: None,
    };
    for _ in 0..steps {
        let x = orbit.points.last().expect("nonempty");
        match double_polar_step(x, k) {
            Ok(next) => {
                let d: Vec<f64> = sub(&next, x).iter().map(|v| v.to_f64()).collect();
                orbit.displacements.push(norm2(&d));
                orbit.points.push(next);
            }
            Err(e) => {
                orbit.stopped = Some(e);
                break;
            }
        }
    }
    Ok(orbit)
}

/// Sign pattern of `p` in vertex coordinates, normalized to start with `+`.
pub fn component_signs<S: Scalar>(simplex: &Simplex<S>, p: &ProjPoint<S>) -> Result<Vec<i8>> {
    if !simplex.is_generic_point(p) {
        return Err(Error::NotGeneric);
    }
    let scale = magnitude(p.coords());
    let mut signs: Vec<i8> = simplex
        .coordinates(p.coords())
        .iter()
        .map(|c| c.sign(scale))
        .collect();
    if signs[0] < 0 {
        signs.iter_mut().for_each(|s| *s = -*s);
    }
    Ok(signs)
}

/// All sign patterns labelling the `2^n` components of the complement of the faces.
pub fn simplex_component_signs(n: usize) -> Vec<Vec<i8>> {
    (0..1u32 << n)
        .map(|mask| {
            let mut s = vec![1i8];
            s.extend((0..n).map(|i| if mask & (1 << i) != 0 { -1 } else { 1 }));
            s
        })
        .collect()
}

/// The component `{Σ c_i p_i : sign(c_i) = s_i}` as a simplex in the chart
/// sending `Σ s_i c_i = 0` to infinity.
pub fn simplex_component<S: Scalar>(simplex: &Simplex<S>, signs: &[i8]) -> Result<ConvexPolytope<S>> {
    let n1 = simplex.dim() + 1;
    if signs.len() != n1 || signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::DimensionMismatch {
            expected: n1,
            got: signs.len(),
        });
    }
    let s: Vec<S> = signs.iter().map(|&x| S::from_i64(x as i64)).collect();
    let coeffs: Vec<S> = (0..n1)
        .map(|j| {
            let mut e = vec![S::zero(); n1];
            e[j] = S::one();
            linalg::dot(&simplex.coordinates(&e), &s)
        })
        .collect();
    let chart = AffineChart::sending_to_infinity(&ProjHyperplane::new(coeffs)?);
    let points = simplex
        .vertices()
        .iter()
        .map(|v| chart.to_chart(v))
        .collect::<Result<Vec<_>>>()?;
    ConvexPolytope::new(chart, points)
}

/// Exact `p^○` for the component of the complement of the faces containing `p`.
/// The dual body of a simplex is a simplex, whose Santaló point is its centroid.
pub fn simplex_convex_polar_point<S: Scalar>(
    p: &ProjPoint<S>,
    simplex: &Simplex<S>,
) -> Result<ProjHyperplane<S>> {
    let k = simplex_component(simplex, &component_signs(simplex, p)?)?;
    dual_centroid_polar(p, &k)
}

/// Exact `H^○` for the unique component whose closure misses `H`.
pub fn simplex_convex_polar_hyperplane<S: Scalar>(
    h: &ProjHyperplane<S>,
    simplex: &Simplex<S>,
) -> Result<ProjPoint<S>> {
    if !simplex.is_generic_hyperplane(h) {
        return Err(Error::NotGeneric);
    }
    let scale = magnitude(h.coeffs());
    let signs: Vec<i8> = simplex
        .form_on_vertices(h)
        .iter()
        .map(|v| v.sign(scale))
        .collect();
    let k = simplex_component(simplex, &signs)?;
    convex_polar_hyperplane(h, &k)
}
